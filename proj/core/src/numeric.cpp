#include "tilespec/numeric.hpp"

#include <mpfr.h>

#include <cmath>
#include <cstdlib>

namespace tilespec {

namespace {

enum class Part { kReal, kImag };

// Evaluates the requested part at the given precision and writes a rigorous
// absolute error bound for the computed value into err_mag (as a power of
// two exponent relative to the accumulated magnitude).
double eval_part(const Cyc& x, Part part, mpfr_prec_t prec, double* bound_out) {
  const int half = x.field()->half_order();
  mpfr_t pi, angle, trig, term, acc, mag, coeff;
  mpfr_inits2(prec, pi, angle, trig, term, acc, mag, coeff, (mpfr_ptr) nullptr);
  mpfr_const_pi(pi, MPFR_RNDN);
  mpfr_set_zero(acc, 1);
  mpfr_set_zero(mag, 1);
  for (size_t i = 0; i < x.coeffs().size(); ++i) {
    const Rat& c = x.coeff(i);
    if (c == 0) continue;
    mpfr_mul_si(angle, pi, static_cast<long>(i), MPFR_RNDN);
    mpfr_div_si(angle, angle, half, MPFR_RNDN);
    if (part == Part::kReal) {
      mpfr_cos(trig, angle, MPFR_RNDN);
    } else {
      mpfr_sin(trig, angle, MPFR_RNDN);
    }
    mpfr_set_q(coeff, c.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(term, coeff, trig, MPFR_RNDN);
    mpfr_add(acc, acc, term, MPFR_RNDN);
    mpfr_abs(term, term, MPFR_RNDN);
    mpfr_add(mag, mag, term, MPFR_RNDN);
  }
  double value = mpfr_get_d(acc, MPFR_RNDN);
  // Each term carries a handful of rounding steps; 64 ulps of the magnitude
  // sum is a generous envelope.
  double magnitude = mpfr_get_d(mag, MPFR_RNDN);
  *bound_out = (magnitude + 1.0) * 64.0 * x.coeffs().size() *
               std::ldexp(1.0, -static_cast<int>(prec));
  mpfr_clears(pi, angle, trig, term, acc, mag, coeff, (mpfr_ptr) nullptr);
  return value;
}

int sign_by_escalation(const Cyc& x, Part part) {
  for (mpfr_prec_t prec = 128; prec <= 1 << 14; prec *= 2) {
    double bound = 0.0;
    double value = eval_part(x, part, prec, &bound);
    if (value > bound) return 1;
    if (value < -bound) return -1;
  }
  throw std::logic_error("sign evaluation failed to separate from zero");
}

}  // namespace

int sign_real(const Cyc& x) {
  // Real part is zero exactly when x = -conj(x).
  if ((x + x.conj()).is_zero()) return 0;
  return sign_by_escalation(x, Part::kReal);
}

int sign_imag(const Cyc& x) {
  // Imaginary part is zero exactly when x = conj(x).
  if ((x - x.conj()).is_zero()) return 0;
  return sign_by_escalation(x, Part::kImag);
}

double real_part(const Cyc& x) {
  double bound = 0.0;
  return eval_part(x, Part::kReal, 256, &bound);
}

double imag_part(const Cyc& x) {
  double bound = 0.0;
  return eval_part(x, Part::kImag, 256, &bound);
}

std::complex<double> Cyc::to_complex() const {
  return {real_part(*this), imag_part(*this)};
}

}  // namespace tilespec
