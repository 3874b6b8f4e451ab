#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace tilespec {

using Rat = mpq_class;

// Parses "a", "-a", or "a/b" into an exact rational.
std::optional<Rat> parse_rational(const std::string& text);

// Canonical "a/b" (or "a" when the denominator is 1) form.
std::string rational_to_string(const Rat& q);

// Lexicographic comparison of coefficient vectors; total order used for
// canonical tile ordering and map keys.
int compare_coeffs(const std::vector<Rat>& a, const std::vector<Rat>& b);

}  // namespace tilespec
