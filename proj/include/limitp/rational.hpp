#pragma once

#include <gmpxx.h>

#include "limitp/checked.hpp"

namespace limitp {

using Rational = mpq_class;

inline mpz_class to_mpz(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class out = (hi << 64) + lo;
  return neg ? mpz_class(-out) : out;
}

inline Rational to_rational(i128 num, i128 den = 1) {
  Rational q(to_mpz(num), to_mpz(den));
  q.canonicalize();
  return q;
}

/// Nearest long double to an exact rational.
long double to_long_double(const Rational& q);

}  // namespace limitp
