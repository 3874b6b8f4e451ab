#pragma once

#include "tilespec/cyclotomic.hpp"

namespace tilespec {

// Sign of the real part of x: -1, 0, +1.
// Zero is decided exactly (x + conj(x) == 0); nonzero signs are resolved by
// escalating-precision interval evaluation, so no epsilon ever decides an
// identity.
int sign_real(const Cyc& x);

// Sign of the imaginary part of x, same contract.
int sign_imag(const Cyc& x);

// High-precision floating evaluation of the real/imaginary part (for
// rendering, radii estimates, and eigenvalue numerics only).
double real_part(const Cyc& x);
double imag_part(const Cyc& x);

}  // namespace tilespec
