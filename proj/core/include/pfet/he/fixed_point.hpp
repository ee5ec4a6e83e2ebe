#pragma once

#include <cstdint>

namespace pfet::he {

/// Largest magnitude representable at the given scale: 2^(63 - scale_bits).
double fixed_limit(int scale_bits);

/// round(x * 2^scale_bits). Throws Overflow when |x| >= fixed_limit(scale_bits)
/// or x is not finite.
std::int64_t encode_fixed(double x, int scale_bits);

double decode_fixed(std::int64_t raw, int scale_bits);

/// Rounded fixed-point product of two encoded values, rescaled back to
/// scale_bits. Throws Overflow when the result leaves the int64 range.
std::int64_t multiply_fixed(std::int64_t a, std::int64_t b, int scale_bits);

/// round(raw * scalar), i.e. multiplication by an unencoded real.
std::int64_t scale_fixed(std::int64_t raw, double scalar);

std::int64_t add_fixed(std::int64_t a, std::int64_t b);
std::int64_t sub_fixed(std::int64_t a, std::int64_t b);

}  // namespace pfet::he
