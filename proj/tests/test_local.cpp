#include <cmath>

#include "doctest.h"
#include "limitp/arith.hpp"
#include "limitp/local.hpp"
#include "oracles.hpp"

using namespace limitp;

namespace {

const std::vector<TupleConfig>& battery() {
  static const std::vector<TupleConfig> configs = {
      TupleConfig::make({{0, 2}}),
      TupleConfig::make({{1, 2}}),
      TupleConfig::make({{0, 2}, {1, 2}}),
      TupleConfig::make({{0, 2}, {2, 2}}),
      TupleConfig::make({{1, 2}, {3, 2}}),
      TupleConfig::make({{0, 2}, {1, 3}}),
      TupleConfig::make({{0, 3}, {4, 3}}),
      TupleConfig::make({{0, 2}, {1, 2}, {2, 2}}),
      TupleConfig::make({{0, 2}, {1, 3}, {2, 4}}),
      TupleConfig::make({{5, 2}, {7, 4}}),
      TupleConfig::make({{0, 4}}),
      TupleConfig::make({{3, 3}, {12, 2}}),
      TupleConfig::make({{0, 2}, {4, 3}}),
      TupleConfig::make({{0, 2}, {8, 4}}),
  };
  return configs;
}

Rational rat(long n, long d = 1) { return Rational(n, d); }

}  // namespace

TEST_CASE("TupleConfig normalization") {
  const TupleConfig t = TupleConfig::make({{3, 2}, {1, 2}});
  REQUIRE(t.s() == 2);
  CHECK(t.alpha(0) == 1);
  CHECK(t.alpha(1) == 3);
  CHECK(TupleConfig::make({{1, 2}, {1, 2}}).s() == 1);
  // mu_2(n+1) = 1 implies mu_3(n+1) = 1.
  const TupleConfig pruned = TupleConfig::make({{1, 3}, {1, 2}, {0, 4}});
  CHECK(pruned.to_string() == "1:2,0:4");
  CHECK(pruned.r_min() == 2);
  CHECK(pruned.r_max() == 4);
  CHECK_THROWS_AS(TupleConfig::make({{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(TupleConfig::make(std::vector<ShiftPair>{}), std::invalid_argument);
  // Normalization keeps f pointwise.
  const TupleConfig raw_equiv = TupleConfig::make({{1, 2}, {0, 4}});
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    const int raw = oracle::kfree(n + 1, 3) * oracle::kfree(n + 1, 2) * oracle::kfree(n, 4);
    REQUIRE(oracle::f_value(n, raw_equiv) == raw);
  }
}

TEST_CASE("local_counts examples") {
  for (std::uint64_t p : {2, 3, 5, 101}) {
    const LocalCounts a = local_counts(p, TupleConfig::make({{0, 2}}));
    CHECK(a.D == 1);
    CHECK(a.Dstar == 0);
    const LocalCounts b = local_counts(p, TupleConfig::make({{1, 2}}));
    CHECK(b.D == 1);
    CHECK(b.Dstar == 1);
  }
  const LocalCounts c = local_counts(2, TupleConfig::make({{0, 2}, {1, 2}}));
  CHECK(c.D == 2);
  CHECK(c.Dstar == 1);
}

TEST_CASE("local_counts agree with enumeration") {
  const auto primes = small_primes(40);
  for (const auto& t : battery()) {
    for (std::uint32_t p : primes) {
      const LocalCounts fast = local_counts(p, t);
      const oracle::Counts brute = oracle::local_counts(p, t);
      REQUIRE(fast.D == brute.D);
      REQUIRE(fast.Dstar == brute.Dstar);
      if (oracle::ipow(p, t.r_max()) <= 10'000) {
        const LocalCounts en = local_counts(p, t, LocalMethod::enumerate);
        REQUIRE(en.D == fast.D);
        REQUIRE(en.Dstar == fast.Dstar);
      }
      i128 bound = 0;
      for (const auto& pair : t.pairs()) bound += oracle::ipow(p, t.r_max() - pair.r);
      REQUIRE(fast.D <= bound);
      REQUIRE(fast.Dstar <= fast.D);
      REQUIRE(fast.Dstar >= 0);
    }
  }
}

TEST_CASE("enumeration oracle refuses large moduli") {
  CHECK_THROWS_AS(local_counts(1009, TupleConfig::make({{0, 3}}), LocalMethod::enumerate), std::invalid_argument);
}

TEST_CASE("overflow is reported with the prime") {
  const std::uint64_t p = (std::uint64_t{1} << 40) + 15;
  try {
    (void)local_counts(p, TupleConfig::make({{0, 4}}));
    FAIL("expected OverflowError");
  } catch (const OverflowError& e) {
    CHECK(std::string(e.what()).find(std::to_string(p)) != std::string::npos);
  }
}

TEST_CASE("chi_local examples") {
  const TupleConfig sq = TupleConfig::make({{0, 2}});
  CHECK(chi_local(2, 2, 0, sq) == 0);
  CHECK(chi_local(2, 2, 1, sq) == 1);
  for (const auto& t : battery()) {
    for (std::uint64_t p : {2, 3, 7}) {
      const LocalCounts c = local_counts(p, t);
      const Rational expected = 1 - to_rational(c.D, oracle::ipow(p, t.r_max()));
      for (i128 a : {0, 1, 5, -3}) REQUIRE(chi_local(p, 0, a, t) == expected);
    }
  }
}

TEST_CASE("chi_local total mass and oracle agreement") {
  for (const auto& t : battery()) {
    for (std::uint64_t p : {2, 3, 5}) {
      const i128 top = oracle::ipow(p, t.r_max());
      const Rational one_minus_d = 1 - to_rational(local_counts(p, t).D, top);
      for (unsigned l = 0; l <= t.r_max() + 1; ++l) {
        const i128 mod = oracle::ipow(p, l);
        if (mod > 5000) break;
        const auto brute = oracle::chi_counts(p, l, t);
        const LocalStructure local(p, t);
        const auto table = chi_count_table(local, l);
        Rational mass = 0;
        for (i128 a = 0; a < mod; ++a) {
          const Rational chi = chi_local(p, l, a, t);
          REQUIRE(chi_count(p, l, a, t) == brute[static_cast<std::size_t>(a % brute.size())]);
          REQUIRE(table[static_cast<std::size_t>(a % table.size())] == brute[static_cast<std::size_t>(a % brute.size())]);
          REQUIRE(chi == oracle::chi_by_alternating_sum(p, static_cast<std::uint64_t>(mod), a, t));
          if (top <= 10'000 && a < 20) REQUIRE(chi == chi_local(p, l, a, t, LocalMethod::enumerate));
          mass += chi;
        }
        if (l <= t.r_max()) REQUIRE(mass / to_rational(mod) == one_minus_d);
      }
    }
  }
}

TEST_CASE("frak_H_prime_power examples") {
  const TupleConfig sq = TupleConfig::make({{0, 2}});
  for (long p : {2, 3, 5, 7, 97}) {
    CHECK(frak_H_prime_power(p, 1, sq) == rat(p - 1, p * p));
    CHECK(frak_H_prime_power(p, 2, sq) == rat(p * (p - 1)));
    CHECK(frak_H_prime_power(p, 3, sq) == 0);
    CHECK(frak_H_prime_power(p, 0, sq) == 1);
  }
  for (const auto& t : battery()) {
    CHECK(frak_H_prime_power(3, t.r_max() + 1, t) == 0);
    CHECK(frak_H_prime_power(3, 0, t) == 1);
  }
}

TEST_CASE("frak_H_prime_power closed form matches enumeration and the exponential-sum definition") {
  for (const auto& t : battery()) {
    for (std::uint32_t p : small_primes(200)) {
      for (unsigned l = 1; l <= t.r_max() + 1; ++l) {
        if (oracle::ipow(p, l) > 200) break;
        const Rational closed = frak_H_prime_power(p, l, t);
        if (oracle::ipow(p, t.r_max()) <= 10'000) REQUIRE(closed == frak_H_prime_power(p, l, t, LocalMethod::enumerate));
        const double def = oracle::frak_H_by_definition(oracle::h_prime_power(p, l, t));
        REQUIRE(std::abs(to_long_double(closed) - def) < 1e-9 * std::max(1.0, def));
      }
    }
  }
}

TEST_CASE("local Parseval identity holds exactly") {
  // The sum is hand-checked for (0:2): (1 - 1/p)(p^{-3} + p^{-2}) = p^{-2}(1 - p^{-2}).
  for (long p : {2, 3, 5}) {
    const TupleConfig sq = TupleConfig::make({{0, 2}});
    const Rational lhs = frak_H_prime_power(p, 1, sq) / (p * p) + frak_H_prime_power(p, 2, sq) / (p * p * p * p);
    CHECK(lhs == rat(p * p - 1, p * p * p * p));
  }
  for (const auto& t : battery()) {
    if (!admissible(t).nonempty) continue;
    for (std::uint32_t p : small_primes(100)) {
      const LocalStructure local(p, t);
      const Rational d = to_rational(local_counts(p, t).D, local.power(t.r_max()));
      Rational sum = 0;
      Rational scale = 1;
      for (unsigned l = 1; l <= t.r_max(); ++l) {
        scale /= static_cast<unsigned long>(p) * p;
        sum += scale * frak_H_prime_power(local, l);
      }
      REQUIRE(sum == d * (1 - d));
    }
  }
}

TEST_CASE("frak_H_prime_power bounds") {
  for (const auto& t : battery()) {
    const double s2 = static_cast<double>(t.s() * t.s());
    for (std::uint32_t p : small_primes(60)) {
      const LocalStructure local(p, t);
      for (unsigned l = 1; l <= t.r_max(); ++l) {
        const Rational h = frak_H_prime_power(local, l);
        REQUIRE(sgn(h) >= 0);
        const int e = l <= t.r_min() ? 3 * static_cast<int>(l) - 2 * static_cast<int>(t.r_min())
                                     : 2 * static_cast<int>(l) - static_cast<int>(t.r_min());
        REQUIRE(to_long_double(h) <= s2 * std::pow(static_cast<long double>(p), e) * (1 + 1e-15L));
      }
    }
  }
}

TEST_CASE("admissible examples") {
  const Admissibility covered = admissible(TupleConfig::make({{0, 2}, {1, 2}, {2, 2}, {3, 2}}));
  CHECK_FALSE(covered.nonempty);
  CHECK_FALSE(covered.positive_cf);
  CHECK(covered.nonempty_witness == 2);
  CHECK(local_counts(2, TupleConfig::make({{0, 2}, {1, 2}, {2, 2}, {3, 2}})).D == 4);

  const Admissibility sq = admissible(TupleConfig::make({{0, 2}}));
  CHECK(sq.nonempty);
  CHECK(sq.positive_cf);
  const Admissibility shifted = admissible(TupleConfig::make({{1, 2}}));
  CHECK(shifted.nonempty);
  CHECK(shifted.positive_cf);
}

TEST_CASE("admissible agrees with a scan over all small primes") {
  // Units covered at 2 but not every residue: {1, 3} mod 4 via alpha = 3, 1.
  const TupleConfig units = TupleConfig::make({{1, 2}, {3, 2}});
  const Admissibility a = admissible(units);
  CHECK(a.nonempty);
  CHECK_FALSE(a.positive_cf);
  CHECK(a.cf_witness == 2);

  std::vector<TupleConfig> configs = battery();
  configs.push_back(units);
  configs.push_back(TupleConfig::make({{0, 2}, {1, 2}, {2, 2}, {3, 2}}));
  configs.push_back(TupleConfig::make({{0, 2}, {1, 2}, {2, 2}, {3, 2}, {4, 2}, {5, 2}, {6, 2}, {7, 2}, {8, 2}}));
  configs.push_back(TupleConfig::make({{0, 2}, {1, 2}, {2, 2}, {4, 2}, {5, 2}, {6, 2}, {7, 2}, {9, 2}, {13, 2}}));
  for (const auto& t : configs) {
    bool nonempty = true, positive = true;
    for (std::uint32_t p : small_primes(50)) {
      const i128 top = oracle::ipow(p, t.r_max());
      const oracle::Counts c = oracle::local_counts(p, t);
      nonempty = nonempty && c.D < top;
      positive = positive && c.Dstar < top / p * (p - 1);
    }
    const Admissibility fast = admissible(t);
    REQUIRE(fast.nonempty == nonempty);
    REQUIRE(fast.positive_cf == (positive && nonempty));
  }
}

TEST_CASE("local_data bundles the per-prime values") {
  const LocalPrimeData d = local_data(3, TupleConfig::make({{0, 2}, {1, 2}}));
  CHECK(d.D == 2);
  CHECK(d.Dstar == 1);
  REQUIRE(d.z_p.has_value());
  CHECK(*d.z_p == rat(9, 7));
  REQUIRE(d.H_frak.size() == 3);
  CHECK(d.H_frak[0] == 1);
  const LocalPrimeData bad = local_data(2, TupleConfig::make({{0, 2}, {1, 2}, {2, 2}, {3, 2}}));
  CHECK_FALSE(bad.z_p.has_value());
}
