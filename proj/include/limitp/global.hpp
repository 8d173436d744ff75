#pragma once

// Global objects assembled from the per-prime data: Euler products for the
// density and the prime constant, residue-class densities, Gaussian sums and
// the singular series.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "limitp/checked.hpp"
#include "limitp/local.hpp"
#include "limitp/rational.hpp"
#include "limitp/tuple_config.hpp"

namespace limitp {

/// x87 extended precision (64-bit mantissa).
using HighReal = long double;

/// Default prime cutoff when a caller needs the density but gives none.
inline constexpr std::uint64_t kDefaultTruncation = 1'000'000;

/// A product over primes p <= truncation_P, plus a bound on
/// |log(full product / truncated product)|.
struct EulerProductValue {
  HighReal value = 0;
  std::uint64_t truncation_P = 0;
  HighReal tail_bound = 0;
  bool exact_zero = false;                        // some local factor vanishes
  std::uint64_t zero_witness = 0;                 // the prime where it does
  std::optional<std::map<std::uint64_t, Rational>> local_factors;
};

/// Bound on sum_{p > P} -log(1 - x_p) for local deviations
/// x_p <= s / (p (p - 1)). Telescoping sum_{n > P} 1/(n(n-1)) = 1/P and
/// -log(1 - x) <= x / (1 - x) give s / (P (1 - x_{P+1})).
/// Infinite when x_{P+1} >= 1.
HighReal euler_tail_bound(std::size_t s, std::uint64_t P);

/// prod_p (1 - D(p)/p^{r_s}), the density of the tuple set.
EulerProductValue density_frak_D(const TupleConfig& config, std::uint64_t truncation_P,
                                 bool keep_factors = false);

/// prod_p (1 - D*(p)/phi(p^{r_s})), the constant of the prime sum.
EulerProductValue constant_cf(const TupleConfig& config, std::uint64_t truncation_P, bool keep_factors = false);

/// z(q) = prod_{p | q} (1 - D(p)/p^{r_s})^{-1}. Throws InadmissibleError
/// when D(p) = p^{r_s} for some p | q.
Rational z_of(std::uint64_t q, const TupleConfig& config);

/// h(q, a) = prod_{p^l || q} chi_a^{(p^l)}(p).
Rational h_of(std::uint64_t q, i128 a, const TupleConfig& config);

/// h(q, b) for all b mod q as integers over one common denominator.
struct ResidueWeights {
  std::uint64_t q = 1;
  std::vector<i128> numer;  // numer[b] / denom = h(q, b), 0 <= b < q
  i128 denom = 1;
  Rational z;               // z(q)
};

ResidueWeights residue_weights(std::uint64_t q, const TupleConfig& config);

/// g(q, a) = frak_D * z(q) * h(q, a); the mean of f over n = a (mod q) is g/q.
struct GValue {
  Rational zh;      // z(q) h(q, a), exact
  HighReal value;   // frak_D * zh
};

GValue g_of(std::uint64_t q, i128 a, const TupleConfig& config, HighReal frak_D);

/// G(q, a) = sum_{b <= q} (g(q, b)/q) e(ab/q).
std::complex<HighReal> gauss_G(std::uint64_t q, i128 a, const TupleConfig& config, HighReal frak_D);

/// Multiplicative singular-series weight; 0 unless q is (r_s + 1)-free.
Rational frak_H(std::uint64_t q, const TupleConfig& config);

/// sum over a coprime to q of H(q, a), computed as sum_b h(q, b) c_q(b).
Rational sum_star_H(std::uint64_t q, const TupleConfig& config);

/// Closed form of sum_star_H at a prime:
/// p^{1 - r_s} (D(p) - p #{excluded n <= p^{r_s} : p | n}).
Rational sum_star_H_prime(std::uint64_t p, const TupleConfig& config);

struct SingularSeriesPartial {
  std::uint64_t Q = 0;
  HighReal partial_sum = 0;
  HighReal target = 0;                      // frak_D
  std::vector<HighReal> per_q_terms;        // index q - 1, when requested
};

/// sum_{q <= Q} frak_D^2 q^{-2} z(q)^2 frak_H(q).
SingularSeriesPartial singular_partial(std::uint64_t Q, const TupleConfig& config, HighReal frak_D,
                                       bool keep_terms = false);

/// frak_D sum_{q <= Q} (mu(q)/phi(q)) (z(q)/q) sum_star_H(q); the series
/// form of the prime constant. Non-squarefree q contribute nothing.
HighReal cf_series_partial(std::uint64_t Q, const TupleConfig& config, HighReal frak_D);

}  // namespace limitp
