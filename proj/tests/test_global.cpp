#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "limitp/arith.hpp"
#include "limitp/global.hpp"
#include "oracles.hpp"

using namespace limitp;

namespace {

const TupleConfig kSquarefree = TupleConfig::make({{0, 2}});
const TupleConfig kShifted = TupleConfig::make({{1, 2}});
const TupleConfig kPair = TupleConfig::make({{0, 2}, {1, 2}});
const TupleConfig kMixed = TupleConfig::make({{0, 2}, {1, 3}, {3, 2}});

long double independent_product(std::uint64_t P, long double (*factor)(long double)) {
  long double log_sum = 0;
  for (std::uint32_t p : small_primes(static_cast<std::uint32_t>(P))) log_sum += std::log1p(-factor(p));
  return std::exp(log_sum);
}

// Sum_{b1, b2} h(b1) h(b2) c_q(b1 - b2), h from the alternating-sum oracle.
Rational frak_H_exact(std::uint64_t q, const TupleConfig& t) {
  std::vector<Rational> h(q);
  for (std::uint64_t b = 0; b < q; ++b) h[b] = oracle::h_by_alternating_sum(q, static_cast<i128>(b), t);
  const auto c = ramanujan_row(q);
  Rational total = 0;
  for (std::uint64_t b1 = 0; b1 < q; ++b1) {
    if (sgn(h[b1]) == 0) continue;
    Rational row = 0;
    for (std::uint64_t b2 = 0; b2 < q; ++b2) row += h[b2] * static_cast<long>(c[(b1 + q - b2) % q]);
    total += h[b1] * row;
  }
  return total;
}

}  // namespace

TEST_CASE("density and constant examples") {
  const EulerProductValue d = density_frak_D(kSquarefree, 1'000'000);
  CHECK(std::abs(d.value - 6 / (std::numbers::pi_v<long double> * std::numbers::pi_v<long double>)) <
        2 * d.tail_bound);
  CHECK(d.tail_bound > 0);
  CHECK(d.tail_bound < 1e-5);

  const EulerProductValue cf = constant_cf(kSquarefree, 1000, true);
  CHECK(cf.value == 1);
  REQUIRE(cf.local_factors.has_value());
  for (const auto& [p, factor] : *cf.local_factors) REQUIRE(factor == 1);

  const EulerProductValue artin = constant_cf(kShifted, 1'000'000);
  const long double expect = independent_product(1'000'000, [](long double p) { return 1 / (p * (p - 1)); });
  CHECK(std::abs(artin.value / expect - 1) < 1e-12);
  CHECK(std::abs(artin.value - 0.3739558136L) < 1e-6);
}

TEST_CASE("inadmissible products are exactly zero") {
  const TupleConfig covered = TupleConfig::make({{0, 2}, {1, 2}, {2, 2}, {3, 2}});
  const EulerProductValue d = density_frak_D(covered, 1000);
  CHECK(d.exact_zero);
  CHECK(d.value == 0);
  CHECK(d.zero_witness == 2);
  CHECK(d.tail_bound == 0);
  CHECK(constant_cf(covered, 1000).value == 0);
  CHECK_THROWS_AS(z_of(2, covered), InadmissibleError);
  CHECK(z_of(3, covered) > 0);
}

TEST_CASE("euler tail bound shrinks with P") {
  HighReal last = euler_tail_bound(3, 10);
  for (std::uint64_t P : {100, 1000, 100000, 10000000}) {
    const HighReal next = euler_tail_bound(3, P);
    REQUIRE(next < last);
    last = next;
  }
  CHECK(std::isinf(euler_tail_bound(100, 2)));
  // Monotone values within the bound as P grows.
  const HighReal far = density_frak_D(kMixed, 2'000'000).value;
  for (std::uint64_t P : {1000, 10000, 100000}) {
    const EulerProductValue v = density_frak_D(kMixed, P);
    REQUIRE(std::abs(std::log(v.value / far)) <= v.tail_bound);
  }
}

TEST_CASE("z and h examples") {
  CHECK(z_of(2, kSquarefree) == Rational(4, 3));
  CHECK(z_of(1, kSquarefree) == 1);
  CHECK(z_of(12, kPair) == z_of(6, kPair));
  CHECK(h_of(4, 0, kSquarefree) == 0);
  CHECK(h_of(4, 1, kSquarefree) == 1);
  CHECK(h_of(1, 17, kPair) == 1);
}

TEST_CASE("residue weights and h agree with the alternating-sum oracle") {
  for (const auto& t : {kSquarefree, kShifted, kPair, kMixed}) {
    for (std::uint64_t q = 1; q <= 72; ++q) {
      const ResidueWeights w = residue_weights(q, t);
      REQUIRE(w.numer.size() == q);
      REQUIRE(w.z == z_of(q, t));
      Rational mass = 0;
      for (std::uint64_t b = 0; b < q; ++b) {
        const Rational h = to_rational(w.numer[b], w.denom);
        REQUIRE(h == h_of(q, static_cast<i128>(b), t));
        REQUIRE(h == oracle::h_by_alternating_sum(q, static_cast<i128>(b), t));
        mass += h;
      }
      // sum_b g(q, b) = q frak_D
      REQUIRE(mass * w.z == static_cast<long>(q));
    }
  }
}

TEST_CASE("g mass and Gaussian sums") {
  const HighReal frak_D = density_frak_D(kPair, 100'000).value;
  for (std::uint64_t q = 1; q <= 100; ++q) {
    HighReal mass = 0;
    for (std::uint64_t b = 0; b < q; ++b) mass += g_of(q, static_cast<i128>(b), kPair, frak_D).value;
    REQUIRE(std::abs(mass - q * frak_D) < 1e-12L * q);
  }
  for (std::uint64_t q : {1, 4, 9, 12, 25, 36}) {
    const auto g0 = gauss_G(q, 0, kPair, frak_D);
    CHECK(std::abs(g0.real() - frak_D) < 1e-14L);
    for (i128 a = 1; a < static_cast<i128>(q); ++a) {
      const auto plus = gauss_G(q, a, kPair, frak_D);
      const auto minus = gauss_G(q, -a, kPair, frak_D);
      REQUIRE(std::abs(plus - std::conj(minus)) < 1e-14L);
      REQUIRE(std::abs(plus) <= frak_D + 1e-14L);
    }
  }
}

TEST_CASE("frak_H examples and agreement with the exact definition") {
  CHECK(frak_H(6, kSquarefree) == Rational(1, 18));
  CHECK(frak_H(1, kPair) == 1);
  CHECK(frak_H(8, kSquarefree) == 0);
  for (const auto& t : {kSquarefree, kShifted, kPair}) {
    for (std::uint64_t q = 1; q <= 120; ++q) REQUIRE(frak_H(q, t) == frak_H_exact(q, t));
  }
  // Coprime products up to 1000.
  for (const auto& [q1, q2] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
           {4, 9}, {8, 27}, {25, 36}, {7, 100}, {16, 45}, {11, 90}}) {
    const Rational direct = frak_H_exact(q1 * q2, kMixed);
    REQUIRE(frak_H(q1 * q2, kMixed) == direct);
    REQUIRE(frak_H(q1, kMixed) * frak_H(q2, kMixed) == direct);
  }
}

TEST_CASE("sum_star_H closed form and multiplicativity") {
  for (const auto& t : {kSquarefree, kShifted, kPair, kMixed}) {
    for (std::uint32_t p : small_primes(50)) REQUIRE(sum_star_H(p, t) == sum_star_H_prime(p, t));
    for (std::uint64_t q1 = 1; q1 <= 30; ++q1)
      for (std::uint64_t q2 = 1; q2 <= 30; ++q2)
        if (std::gcd(q1, q2) == 1) REQUIRE(sum_star_H(q1 * q2, t) == sum_star_H(q1, t) * sum_star_H(q2, t));
  }
  // For squarefree f the only excluded residue mod p^2 is 0.
  CHECK(sum_star_H(3, kSquarefree) == Rational(1 - 3, 3));
}

TEST_CASE("singular series partial sums") {
  const HighReal frak_D = density_frak_D(kSquarefree, 1'000'000).value;
  CHECK(std::abs(singular_partial(1, kSquarefree, frak_D).partial_sum - frak_D * frak_D) < 1e-15L);
  CHECK(std::abs(singular_partial(2, kSquarefree, frak_D).partial_sum - frak_D * frak_D * (1 + 1.0L / 9)) <
        1e-15L);
  const SingularSeriesPartial s = singular_partial(2000, kSquarefree, frak_D, true);
  REQUIRE(s.per_q_terms.size() == 2000);
  HighReal running = 0;
  for (HighReal term : s.per_q_terms) {
    REQUIRE(term >= 0);
    running += term;
  }
  CHECK(std::abs(running - s.partial_sum) < 1e-12L);
  CHECK(s.partial_sum < frak_D);
  CHECK(s.target == frak_D);
}

TEST_CASE("series form of the prime constant") {
  const HighReal d_sq = density_frak_D(kSquarefree, 1'000'000).value;
  CHECK(std::abs(cf_series_partial(1, kSquarefree, d_sq) - d_sq) < 1e-15L);
  CHECK(std::abs(cf_series_partial(3000, kSquarefree, d_sq) - 1) < 1e-2L);
  const HighReal d_sh = density_frak_D(kShifted, 1'000'000).value;
  const HighReal product = constant_cf(kShifted, 1'000'000).value;
  CHECK(std::abs(cf_series_partial(3000, kShifted, d_sh) - product) < 1e-2L);
}

TEST_CASE("random coprime pairs: exact multiplicativity") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint64_t> pick(1, 60);
  int tested = 0;
  while (tested < 100) {
    const std::uint64_t q1 = pick(rng), q2 = pick(rng);
    if (std::gcd(q1, q2) != 1) continue;
    ++tested;
    REQUIRE(frak_H(q1 * q2, kMixed) == frak_H(q1, kMixed) * frak_H(q2, kMixed));
    REQUIRE(z_of(q1 * q2, kMixed) == z_of(q1, kMixed) * z_of(q2, kMixed));
    const i128 a = static_cast<i128>(rng() % 5000);
    REQUIRE(h_of(q1 * q2, a, kMixed) == h_of(q1, a, kMixed) * h_of(q2, a, kMixed));
  }
}

TEST_CASE("residue density decay: fitted constant, reported only") {
  for (const auto& t : {kSquarefree, kPair, kMixed}) {
    const HighReal frak_D = density_frak_D(t, 100'000).value;
    HighReal fitted = 0;
    for (std::uint64_t q = 1; q <= 300; ++q)
      for (std::uint64_t b = 0; b < q; ++b)
        fitted = std::max(fitted, g_of(q, static_cast<i128>(b), t, frak_D).value / q * std::sqrt(static_cast<HighReal>(q)));
    MESSAGE(t.to_string() << ": max_q<=300 sqrt(q) g(q,b)/q = " << static_cast<double>(fitted));
    CHECK(std::isfinite(fitted));
  }
}
