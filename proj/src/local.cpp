#include "limitp/local.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "limitp/arith.hpp"

namespace limitp {

long double to_long_double(const Rational& q) {
  if (sgn(q) == 0) return 0.0L;
  mpz_class num = abs(q.get_num());
  const mpz_class& den = q.get_den();
  // Scale so the integer quotient carries ~66 significant bits.
  const long shift = 66 - (static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)));
  mpz_class scaled;
  if (shift >= 0)
    scaled = (num << static_cast<mp_bitcnt_t>(shift)) / den;
  else
    scaled = num / (den << static_cast<mp_bitcnt_t>(-shift));
  mpz_class hi = scaled >> 64;
  mpz_class lo = scaled - (hi << 64);
  long double v = static_cast<long double>(hi.get_ui()) * 18446744073709551616.0L +
                  static_cast<long double>(mpz_get_ui(lo.get_mpz_t()));
  v = std::ldexp(v, static_cast<int>(-shift));
  return sgn(q) < 0 ? -v : v;
}

namespace {

void require_prime_power_range(std::uint64_t p, unsigned r_s) {
  if (p < 2) throw std::invalid_argument("local data needs a prime p >= 2");
  try {
    (void)checked_pow(static_cast<i128>(p), r_s);
  } catch (const OverflowError&) {
    throw OverflowError("p^{r_s} leaves 128-bit range at p = " + std::to_string(p));
  }
}

i128 ipow(i128 base, unsigned e) { return checked_pow(base, e, "prime power"); }

bool excluded(i128 n, std::uint64_t p, const TupleConfig& config) {
  for (const auto& pair : config.pairs()) {
    i128 pk = ipow(static_cast<i128>(p), pair.r);
    if ((n + static_cast<i128>(pair.alpha)) % pk == 0) return true;
  }
  return false;
}

i128 enumeration_bound(std::uint64_t p, const TupleConfig& config) {
  i128 top = ipow(static_cast<i128>(p), config.r_max());
  if (top > kEnumerationCap)
    throw std::invalid_argument("enumeration oracle refused: p^{r_s} = " + to_string(top) + " exceeds cap");
  return top;
}

}  // namespace

LocalStructure::LocalStructure(std::uint64_t p, const TupleConfig& config) : p_(p), r_s_(config.r_max()) {
  require_prime_power_range(p, r_s_);
  powers_.resize(r_s_ + 1);
  powers_[0] = 1;
  for (unsigned e = 1; e <= r_s_; ++e) powers_[e] = powers_[e - 1] * static_cast<i128>(p);
  // Pairs are sorted by r, so every ball that could contain ball i is already kept.
  for (const auto& pair : config.pairs()) {
    PAdicBall ball{mod_floor(-static_cast<i128>(pair.alpha), powers_[pair.r]), pair.r};
    bool contained = std::any_of(balls_.begin(), balls_.end(), [&](const PAdicBall& b) {
      return ball.residue % powers_[b.exponent] == b.residue;
    });
    if (!contained) balls_.push_back(ball);
  }
}

i128 LocalStructure::excluded_in_class(i128 a, unsigned u) const {
  if (u > r_s_) throw std::invalid_argument("excluded_in_class: u exceeds r_s");
  i128 count = 0;
  for (const auto& b : balls_) {
    const unsigned common = std::min(b.exponent, u);
    if (mod_floor(a - b.residue, powers_[common]) == 0) count += powers_[r_s_ - std::max(b.exponent, u)];
  }
  return count;
}

i128 LocalStructure::excluded_pair_count(unsigned u) const {
  if (u > r_s_) throw std::invalid_argument("excluded_pair_count: u exceeds r_s");
  // Each (ball j, ball k) contributes the number of pairs (n, m) in j x k
  // with n = m (mod p^u): both reduce to single classes or spread evenly.
  i128 total = 0;
  for (const auto& bj : balls_) {
    for (const auto& bk : balls_) {
      const unsigned common = std::min({bj.exponent, bk.exponent, u});
      if (mod_floor(bj.residue - bk.residue, powers_[common]) != 0) continue;
      const unsigned cj = std::min(bj.exponent, u), ck = std::min(bk.exponent, u);
      const i128 classes = powers_[u - std::max(cj, ck)];
      const i128 per_class = checked_mul(powers_[r_s_ - std::max(bj.exponent, u)],
                                         powers_[r_s_ - std::max(bk.exponent, u)], "pair count");
      total = checked_add(total, checked_mul(classes, per_class, "pair count"), "pair count");
    }
  }
  return total;
}

LocalCounts local_counts(std::uint64_t p, const TupleConfig& config, LocalMethod method) {
  LocalCounts out;
  if (method == LocalMethod::enumerate) {
    const i128 top = enumeration_bound(p, config);
    for (i128 n = 1; n <= top; ++n) {
      if (!excluded(n, p, config)) continue;
      ++out.D;
      if (n % static_cast<i128>(p) != 0) ++out.Dstar;
    }
    return out;
  }
  LocalStructure local(p, config);
  for (const auto& b : local.balls()) {
    const i128 size = local.power(local.top_exponent() - b.exponent);
    out.D += size;
    if (b.residue % static_cast<i128>(p) != 0) out.Dstar += size;
  }
  return out;
}

i128 chi_count(std::uint64_t p, unsigned l, i128 a, const TupleConfig& config, LocalMethod method) {
  const unsigned r_s = config.r_max();
  const unsigned u = std::min(l, r_s);
  if (method == LocalMethod::enumerate) {
    const i128 top = enumeration_bound(p, config);
    const i128 mod = ipow(static_cast<i128>(p), u);
    const i128 target = mod_floor(a, mod);
    i128 count = 0;
    for (i128 n = 1; n <= top; ++n)
      if (n % mod == target && !excluded(n, p, config)) ++count;
    return count;
  }
  LocalStructure local(p, config);
  return local.power(r_s - u) - local.excluded_in_class(a, u);
}

Rational chi_local(std::uint64_t p, unsigned l, i128 a, const TupleConfig& config, LocalMethod method) {
  const unsigned r_s = config.r_max();
  const unsigned u = std::min(l, r_s);
  return to_rational(chi_count(p, l, a, config, method), ipow(static_cast<i128>(p), r_s - u));
}

std::vector<i128> chi_count_table(const LocalStructure& local, unsigned l) {
  const unsigned r_s = local.top_exponent();
  const unsigned u = std::min(l, r_s);
  const i128 mod = local.power(u);
  if (mod > kEnumerationCap) throw CapacityError("chi_count_table: p^l too large to tabulate");
  std::vector<i128> table(static_cast<std::size_t>(mod), local.power(r_s - u));
  // Each ball removes its points from the classes it meets.
  for (const auto& b : local.balls()) {
    const i128 per_class = local.power(r_s - std::max(b.exponent, u));
    if (b.exponent >= u) {
      table[static_cast<std::size_t>(b.residue % mod)] -= per_class;
    } else {
      const i128 step = local.power(b.exponent);
      for (i128 c = b.residue; c < mod; c += step) table[static_cast<std::size_t>(c)] -= per_class;
    }
  }
  return table;
}

Rational frak_H_prime_power(const LocalStructure& local, unsigned l) {
  const unsigned r_s = local.top_exponent();
  if (l == 0) return 1;
  if (l > r_s) return 0;
  const i128 p = static_cast<i128>(local.p());
  Rational bracket = to_rational(local.excluded_pair_count(l)) - to_rational(local.excluded_pair_count(l - 1), p);
  const long e = 3L * l - 2L * r_s;
  return e >= 0 ? Rational(bracket * to_rational(ipow(p, static_cast<unsigned>(e))))
                : Rational(bracket / to_rational(ipow(p, static_cast<unsigned>(-e))));
}

Rational frak_H_prime_power(std::uint64_t p, unsigned l, const TupleConfig& config, LocalMethod method) {
  const unsigned r_s = config.r_max();
  if (l == 0) return 1;
  if (l > r_s) return 0;
  if (method == LocalMethod::closed_form) return frak_H_prime_power(LocalStructure(p, config), l);

  const i128 top = enumeration_bound(p, config);
  std::vector<i128> ex;
  for (i128 n = 1; n <= top; ++n)
    if (excluded(n, p, config)) ex.push_back(n);
  const i128 ml = ipow(static_cast<i128>(p), l), ml1 = ipow(static_cast<i128>(p), l - 1);
  i128 same_l = 0, same_l1 = 0;
  for (i128 n : ex) {
    for (i128 m : ex) {
      if ((n - m) % ml1 != 0) continue;
      ++same_l1;
      if ((n - m) % ml == 0) ++same_l;
    }
  }
  Rational bracket = to_rational(same_l) - to_rational(same_l1, static_cast<i128>(p));
  const long e = 3L * l - 2L * r_s;
  return e >= 0 ? Rational(bracket * to_rational(ipow(static_cast<i128>(p), static_cast<unsigned>(e))))
                : Rational(bracket / to_rational(ipow(static_cast<i128>(p), static_cast<unsigned>(-e))));
}

Admissibility admissible(const TupleConfig& config) {
  Admissibility out;
  const std::uint64_t s = config.s();
  const unsigned r1 = config.r_min();
  // p^{r_1} <= 2s bounds p by (2s)^{1/2}; a plain scan is enough.
  for (std::uint32_t p : small_primes(static_cast<std::uint32_t>(2 * s))) {
    const i128 pr1 = ipow(p, r1);
    if (pr1 > static_cast<i128>(2 * s)) break;
    const LocalCounts c = local_counts(p, config);
    const i128 top = ipow(p, config.r_max());
    if (c.D >= top && out.nonempty) {
      out.nonempty = false;
      out.nonempty_witness = p;
    }
    const i128 phi_top = top / p * (p - 1);
    if (c.Dstar >= phi_top && out.positive_cf) {
      out.positive_cf = false;
      out.cf_witness = p;
    }
  }
  if (!out.nonempty && out.positive_cf) {
    out.positive_cf = false;
    out.cf_witness = out.nonempty_witness;
  }
  return out;
}

LocalPrimeData local_data(std::uint64_t p, const TupleConfig& config) {
  LocalStructure local(p, config);
  LocalPrimeData out;
  out.p = p;
  const LocalCounts c = local_counts(p, config);
  out.D = c.D;
  out.Dstar = c.Dstar;
  const i128 top = local.power(local.top_exponent());
  if (c.D < top) out.z_p = to_rational(top, top - c.D);
  for (unsigned l = 0; l <= local.top_exponent(); ++l) out.H_frak.push_back(frak_H_prime_power(local, l));
  return out;
}

}  // namespace limitp
