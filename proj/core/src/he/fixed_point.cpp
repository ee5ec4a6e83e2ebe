#include "pfet/he/fixed_point.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pfet/error.hpp"

namespace pfet::he {

namespace {

__extension__ using int128 = __int128;

constexpr long double kInt64Bound = 9223372036854775808.0L;  // 2^63

std::int64_t round_checked(long double value) {
  const long double rounded = std::nearbyint(value);
  if (!std::isfinite(rounded) || rounded >= kInt64Bound || rounded < -kInt64Bound) {
    throw Overflow("fixed-point result out of range");
  }
  return static_cast<std::int64_t>(rounded);
}

}  // namespace

double fixed_limit(int scale_bits) { return std::ldexp(1.0, 63 - scale_bits); }

std::int64_t encode_fixed(double x, int scale_bits) {
  if (!std::isfinite(x) || std::abs(x) >= fixed_limit(scale_bits)) {
    throw Overflow("cannot encode " + std::to_string(x) + " with " + std::to_string(scale_bits) +
                   " fractional bits");
  }
  return round_checked(std::ldexp(static_cast<long double>(x), scale_bits));
}

double decode_fixed(std::int64_t raw, int scale_bits) {
  return static_cast<double>(std::ldexp(static_cast<long double>(raw), -scale_bits));
}

std::int64_t multiply_fixed(std::int64_t a, std::int64_t b, int scale_bits) {
  const int128 product = static_cast<int128>(a) * static_cast<int128>(b);
  const int128 half = static_cast<int128>(1) << (scale_bits - 1);
  // Round half away from zero, symmetric for negative products.
  const int128 magnitude = product < 0 ? -product : product;
  int128 shifted = (magnitude + half) >> scale_bits;
  if (product < 0) shifted = -shifted;
  if (shifted > std::numeric_limits<std::int64_t>::max() ||
      shifted < std::numeric_limits<std::int64_t>::min()) {
    throw Overflow("fixed-point product out of range");
  }
  return static_cast<std::int64_t>(shifted);
}

std::int64_t scale_fixed(std::int64_t raw, double scalar) {
  if (!std::isfinite(scalar)) throw Overflow("non-finite plaintext scalar");
  return round_checked(static_cast<long double>(raw) * static_cast<long double>(scalar));
}

std::int64_t add_fixed(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw Overflow("fixed-point sum out of range");
  return out;
}

std::int64_t sub_fixed(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_sub_overflow(a, b, &out)) throw Overflow("fixed-point difference out of range");
  return out;
}

}  // namespace pfet::he
