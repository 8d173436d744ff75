#pragma once

// Sieve measurements of the quantities the theory predicts.

#include <cstdint>
#include <string>
#include <vector>

#include "limitp/arith.hpp"
#include "limitp/global.hpp"
#include "limitp/tuple_config.hpp"

namespace limitp {

struct EmpiricalReport {
  std::uint64_t x = 0;
  double observed = 0;
  double predicted = 0;
  double ratio = 0;        // observed / predicted; NaN when predicted == 0
  double tail_bound = 0;   // carried over from an Euler product, else 0
  std::string notes;
};

EmpiricalReport make_report(std::uint64_t x, double observed, double predicted, double tail_bound,
                            std::string notes);

/// sum_{p <= x} f(p) against c_f, in both normalizations.
struct PrimeSumResult {
  std::uint64_t observed = 0;
  std::uint64_t pi_x = 0;
  EulerProductValue cf;
  EmpiricalReport by_log;  // predicted c_f x / log x
  EmpiricalReport by_pi;   // predicted c_f pi(x)
};

PrimeSumResult prime_sum_f(const TupleConfig& config, std::uint64_t x, std::uint64_t truncation_P,
                           const SieveOptions& opts = {});

/// sum_{n <= x} f(n) against frak_D x.
struct MeanSumResult {
  std::uint64_t observed = 0;
  EulerProductValue frak_D;
  double scaled_error = 0;  // |observed - frak_D x| / x^{2/(r_1 + 1)}
  EmpiricalReport report;
};

MeanSumResult mean_sum_f(const TupleConfig& config, std::uint64_t x, std::uint64_t truncation_P,
                         const SieveOptions& opts = {});

/// #{n <= x : f(n) = 1, n = b (mod q)} for b = 0..q-1, one pass.
std::vector<std::uint64_t> class_counts(const FIndicator& f, std::uint64_t x, std::uint64_t q);

struct ErrorTermSample {
  std::uint64_t x = 0;
  std::uint64_t q = 1;
  std::uint64_t b = 0;
  std::uint64_t count = 0;
  double E = 0;  // count - x g(q, b)/q
};

ErrorTermSample residue_error(const FIndicator& f, std::uint64_t x, std::uint64_t q, std::uint64_t b,
                              HighReal frak_D);
ErrorTermSample residue_error(const TupleConfig& config, std::uint64_t x, std::uint64_t q, std::uint64_t b,
                              std::uint64_t truncation_P, const SieveOptions& opts = {});

/// sum_{q <= Q} sum_b |E(x; q, b)|^2 under two b-range conventions:
///   weighted: b over residues 1..q, each term times floor((x - b)/q) + 1,
///             the number of b' <= x in that class;
///   plain:    b over residues 1..q, unweighted.
struct BdhResult {
  std::uint64_t x = 0;
  std::uint64_t Q = 0;
  double weighted = 0;
  double plain = 0;
  double weighted_ratio = 0;  // weighted / (Q x)
  double plain_ratio = 0;     // plain / (Q x)
};

BdhResult bdh_quadratic_mean(const FIndicator& f, std::uint64_t x, std::uint64_t Q, HighReal frak_D);
BdhResult bdh_quadratic_mean(const TupleConfig& config, std::uint64_t x, std::uint64_t Q,
                             std::uint64_t truncation_P, const SieveOptions& opts = {});

/// (1/N) sum_{k < N} S(k/N) T(k/N) with N = x + 1,
/// S(t) = sum_{n <= x} f(n) e(nt), T(t) = sum_{p <= x} e(-pt).
/// observed: the discrete average; predicted: sum_{p <= x} f(p).
EmpiricalReport dft_circle_identity(const TupleConfig& config, std::uint64_t x);

/// 1 iff no p <= y has p^k | n.
int mu_k_truncated(std::uint64_t n, unsigned k, std::uint64_t y);

/// prod_{p <= y} p^k; throws OverflowError beyond 128 bits.
i128 truncation_period(unsigned k, std::uint64_t y);

/// sum_{d > y} d^{-k} from below: exact partial sum to a cutoff plus the
/// integral lower bound of the remainder.
double zeta_tail_lower(unsigned k, std::uint64_t y);

struct ApproxResult {
  EmpiricalReport report;    // observed: distance; predicted: zeta tail bound
  double distance = 0;       // (1/x) sum (mu_k^{(y)} - mu_k)
  double bound = 0;          // sum_{d > y} d^{-k}
  bool within_bound = false;
  bool dominates = false;    // mu_k^{(y)} >= mu_k on n <= pointwise_limit
  bool periodic = false;     // mu_k^{(y)}(n) = mu_k^{(y)}(n + period) on samples
  i128 period = 0;
};

ApproxResult mu_k_approx(unsigned k, std::uint64_t y, std::uint64_t x, std::uint64_t pointwise_limit = 100'000,
                         const SieveOptions& opts = {});

/// (1/x) sum_{n <= x} f(n) c_q(n) against sum*_a G(q, a).
EmpiricalReport mean_f_ramanujan(const TupleConfig& config, std::uint64_t q, std::uint64_t x,
                                 std::uint64_t truncation_P, const SieveOptions& opts = {});

}  // namespace limitp
