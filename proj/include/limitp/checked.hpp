#pragma once

// Checked 128-bit integer arithmetic and the library's error types.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace limitp {

using i128 = __int128;
using u64 = std::uint64_t;

/// Raised when a table or sieve would exceed the configured memory budget.
class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when an intermediate (prime power, lcm, count) leaves 128-bit range.
class OverflowError : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

/// Raised when a quantity needs D(p) < p^{r_s} at some prime and it fails.
class InadmissibleError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

inline i128 checked_mul(i128 a, i128 b, const char* what = "multiplication") {
  i128 out;
  if (__builtin_mul_overflow(a, b, &out))
    throw OverflowError(std::string("128-bit overflow in ") + what);
  return out;
}

inline i128 checked_add(i128 a, i128 b, const char* what = "addition") {
  i128 out;
  if (__builtin_add_overflow(a, b, &out))
    throw OverflowError(std::string("128-bit overflow in ") + what);
  return out;
}

inline i128 checked_pow(i128 base, unsigned exp, const char* what = "power") {
  i128 out = 1;
  for (unsigned i = 0; i < exp; ++i) out = checked_mul(out, base, what);
  return out;
}

/// Non-negative remainder.
inline i128 mod_floor(i128 a, i128 m) {
  i128 r = a % m;
  return r < 0 ? r + m : r;
}

inline i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string to_string(i128 v);

}  // namespace limitp
