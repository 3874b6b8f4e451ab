#include "tilespec/cyclotomic.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

namespace tilespec {

std::optional<Rat> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  mpq_t raw;
  mpq_init(raw);
  if (mpq_set_str(raw, text.c_str(), 10) != 0) {
    mpq_clear(raw);
    return std::nullopt;
  }
  if (mpz_sgn(mpq_denref(raw)) == 0) {
    mpq_clear(raw);
    return std::nullopt;
  }
  mpq_canonicalize(raw);
  Rat out(raw);
  mpq_clear(raw);
  return out;
}

std::string rational_to_string(const Rat& q) {
  return q.get_str();
}

int compare_coeffs(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

namespace {

using Poly = std::vector<Rat>;  // coefficient list, ascending powers

Poly poly_div_exact(const Poly& num, const Poly& den) {
  Poly rem = num;
  Poly quot(num.size() - den.size() + 1, Rat(0));
  for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
    Rat c = rem[k + den.size() - 1] / den.back();
    quot[k] = c;
    if (c == 0) continue;
    for (size_t j = 0; j < den.size(); ++j) rem[k + j] -= c * den[j];
  }
  for (const Rat& r : rem) {
    if (r != 0) throw std::logic_error("inexact polynomial division");
  }
  return quot;
}

// Cyclotomic polynomial of index n via x^n - 1 = prod of cyclotomics over
// the divisors of n.
Poly cyclotomic_poly(int n) {
  static std::map<int, Poly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::function<Poly(int)> compute = [&](int k) -> Poly {
    auto hit = cache.find(k);
    if (hit != cache.end()) return hit->second;
    Poly xk_minus_1(k + 1, Rat(0));
    xk_minus_1[0] = Rat(-1);
    xk_minus_1[k] = Rat(1);
    Poly acc = xk_minus_1;
    for (int d = 1; d < k; ++d) {
      if (k % d != 0) continue;
      acc = poly_div_exact(acc, compute(d));
    }
    cache[k] = acc;
    return acc;
  };
  return compute(n);
}

}  // namespace

Field::Field(int half_order) : half_order_(half_order) {
  if (half_order < 1) throw std::invalid_argument("field order must be >= 1");
  const int n = 2 * half_order;
  Poly phi = cyclotomic_poly(n);
  deg_ = static_cast<int>(phi.size()) - 1;
  // zeta^deg = -(phi_0 + phi_1 zeta + ... + phi_{deg-1} zeta^{deg-1})
  std::vector<Rat> top(deg_);
  for (int i = 0; i < deg_; ++i) top[i] = -phi[i];

  powers_.resize(n);
  powers_[0].assign(deg_, Rat(0));
  powers_[0][0] = Rat(1);
  for (int k = 1; k < n; ++k) {
    const std::vector<Rat>& prev = powers_[k - 1];
    std::vector<Rat> cur(deg_, Rat(0));
    for (int i = 0; i + 1 < deg_; ++i) cur[i + 1] = prev[i];
    const Rat& carry = prev[deg_ - 1];
    if (carry != 0) {
      for (int i = 0; i < deg_; ++i) cur[i] += carry * top[i];
    }
    powers_[k] = std::move(cur);
  }
}

const Field* Field::of_order(int half_order) {
  static std::map<int, std::unique_ptr<Field>> registry;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(half_order);
  if (it == registry.end()) {
    it = registry.emplace(half_order,
                          std::unique_ptr<Field>(new Field(half_order)))
             .first;
  }
  return it->second.get();
}

const std::vector<Rat>& Field::power(int k) const {
  int n = 2 * half_order_;
  int r = ((k % n) + n) % n;
  return powers_[r];
}

Cyc::Cyc(const Field* field, std::vector<Rat> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != field->deg()) {
    throw std::invalid_argument("coefficient count does not match field degree");
  }
}

Cyc Cyc::from_rat(const Field* field, const Rat& value) {
  Cyc out(field);
  out.coeffs_[0] = value;
  return out;
}

Cyc Cyc::zeta_pow(const Field* field, int k) {
  return Cyc(field, field->power(k));
}

bool Cyc::is_zero() const {
  for (const Rat& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

bool Cyc::operator==(const Cyc& other) const {
  return field_ == other.field_ && coeffs_ == other.coeffs_;
}

void Cyc::require_same_field(const Cyc& other) const {
  if (field_ != other.field_) {
    throw std::invalid_argument("mixed-field arithmetic rejected");
  }
}

Cyc Cyc::operator+(const Cyc& other) const {
  require_same_field(other);
  Cyc out(field_);
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    out.coeffs_[i] = coeffs_[i] + other.coeffs_[i];
  }
  return out;
}

Cyc Cyc::operator-(const Cyc& other) const {
  require_same_field(other);
  Cyc out(field_);
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    out.coeffs_[i] = coeffs_[i] - other.coeffs_[i];
  }
  return out;
}

Cyc Cyc::operator-() const {
  Cyc out(field_);
  for (size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = -coeffs_[i];
  return out;
}

Cyc Cyc::operator*(const Cyc& other) const {
  require_same_field(other);
  const int deg = field_->deg();
  std::vector<Rat> raw(2 * deg - 1, Rat(0));
  for (int i = 0; i < deg; ++i) {
    if (coeffs_[i] == 0) continue;
    for (int j = 0; j < deg; ++j) {
      if (other.coeffs_[j] == 0) continue;
      raw[i + j] += coeffs_[i] * other.coeffs_[j];
    }
  }
  Cyc out(field_);
  for (int p = 0; p < deg; ++p) out.coeffs_[p] = raw[p];
  for (int p = deg; p < 2 * deg - 1; ++p) {
    if (raw[p] == 0) continue;
    const std::vector<Rat>& pw = field_->power(p);
    for (int i = 0; i < deg; ++i) out.coeffs_[i] += raw[p] * pw[i];
  }
  return out;
}

Cyc Cyc::scaled(const Rat& s) const {
  Cyc out(field_);
  for (size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = coeffs_[i] * s;
  return out;
}

Cyc Cyc::conj() const {
  const int n = 2 * field_->half_order();
  Cyc out(field_);
  for (int k = 0; k < field_->deg(); ++k) {
    if (coeffs_[k] == 0) continue;
    const std::vector<Rat>& pw = field_->power((n - k) % n);
    for (int i = 0; i < field_->deg(); ++i) {
      out.coeffs_[i] += coeffs_[k] * pw[i];
    }
  }
  return out;
}

Cyc Cyc::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  const int deg = field_->deg();
  // Columns of the multiplication-by-*this matrix in the power basis.
  std::vector<std::vector<Rat>> m(deg, std::vector<Rat>(deg + 1, Rat(0)));
  for (int j = 0; j < deg; ++j) {
    Cyc col = *this * Cyc::zeta_pow(field_, j);
    for (int i = 0; i < deg; ++i) m[i][j] = col.coeffs_[i];
  }
  m[0][deg] = Rat(1);  // right-hand side e_0

  for (int col = 0; col < deg; ++col) {
    int pivot = -1;
    for (int r = col; r < deg; ++r) {
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw std::domain_error("singular multiplication matrix");
    std::swap(m[col], m[pivot]);
    Rat inv = Rat(1) / m[col][col];
    for (int c = col; c <= deg; ++c) m[col][c] *= inv;
    for (int r = 0; r < deg; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (int c = col; c <= deg; ++c) m[r][c] -= f * m[col][c];
    }
  }
  Cyc out(field_);
  for (int i = 0; i < deg; ++i) out.coeffs_[i] = m[i][deg];
  return out;
}

Cyc Cyc::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  Cyc acc = Cyc::from_rat(field_, Rat(1));
  Cyc base = *this;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

bool Cyc::is_real() const { return *this == conj(); }

std::optional<Rat> Cyc::as_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return std::nullopt;
  }
  return coeffs_[0];
}

int Cyc::compare(const Cyc& other) const {
  if (field_ != other.field_) {
    int a = field_ ? field_->half_order() : 0;
    int b = other.field_ ? other.field_->half_order() : 0;
    return a < b ? -1 : 1;
  }
  return compare_coeffs(coeffs_, other.coeffs_);
}

std::string Cyc::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ", ";
    os << coeffs_[i].get_str();
  }
  os << "]";
  return os.str();
}

}  // namespace tilespec
