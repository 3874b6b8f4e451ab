#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tilespec/rational.hpp"

namespace tilespec {

// The plane is identified with the complex numbers and coordinates live in
// Q(zeta) where zeta = exp(i*pi/half_order) is a primitive 2*half_order-th
// root of unity. Elements are rational vectors in the power basis
// 1, zeta, ..., zeta^{deg-1} with deg = phi(2*half_order).
class Field {
 public:
  // Returns the interned field for a given half order (>= 1). Pointers are
  // stable for the process lifetime, so Cyc values may share them.
  static const Field* of_order(int half_order);

  int half_order() const { return half_order_; }
  int deg() const { return deg_; }
  // Reduced coefficients of zeta^k for 0 <= k < 2*half_order.
  const std::vector<Rat>& power(int k) const;

 private:
  explicit Field(int half_order);

  int half_order_;
  int deg_;
  std::vector<std::vector<Rat>> powers_;
};

class Cyc {
 public:
  Cyc() : field_(nullptr) {}
  explicit Cyc(const Field* field)
      : field_(field), coeffs_(field->deg(), Rat(0)) {}
  Cyc(const Field* field, std::vector<Rat> coeffs);

  static Cyc from_rat(const Field* field, const Rat& value);
  static Cyc zeta_pow(const Field* field, int k);

  const Field* field() const { return field_; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  const Rat& coeff(int i) const { return coeffs_[i]; }

  bool is_zero() const;
  bool operator==(const Cyc& other) const;
  bool operator!=(const Cyc& other) const { return !(*this == other); }

  Cyc operator+(const Cyc& other) const;
  Cyc operator-(const Cyc& other) const;
  Cyc operator-() const;
  Cyc operator*(const Cyc& other) const;
  Cyc scaled(const Rat& s) const;
  Cyc conj() const;
  // Exact multiplicative inverse; throws std::domain_error on zero.
  Cyc inverse() const;
  Cyc pow(int n) const;  // n may be negative

  // True when conj(x) == x (value lies on the real axis).
  bool is_real() const;
  // Exact rational extraction when the value is a pure rational.
  std::optional<Rat> as_rational() const;

  std::complex<double> to_complex() const;

  // Deterministic total order on (field, coefficients); usable as a map key.
  int compare(const Cyc& other) const;
  bool operator<(const Cyc& other) const { return compare(other) < 0; }

  std::string to_string() const;

 private:
  void require_same_field(const Cyc& other) const;

  const Field* field_;
  std::vector<Rat> coeffs_;
};

}  // namespace tilespec
