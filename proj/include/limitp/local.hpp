#pragma once

// Per-prime data of a shifted k-free tuple, in exact arithmetic.
//
// At a prime p the excluded set {n : p^{r_i} | n + alpha_i for some i} is a
// union of p-adic balls n = -alpha_i (mod p^{r_i}). Two such balls are either
// nested or disjoint, so after dropping balls contained in others the rest
// partition the excluded set. Every count below is a sum over that partition,
// which costs O(s^2) per prime instead of O(p^{r_s}) enumeration.

#include <cstdint>
#include <optional>
#include <vector>

#include "limitp/checked.hpp"
#include "limitp/rational.hpp"
#include "limitp/tuple_config.hpp"

namespace limitp {

/// Closed form over the ball partition, or literal enumeration of
/// n <= p^{r_s} (test oracle; refused above kEnumerationCap).
enum class LocalMethod { closed_form, enumerate };

inline constexpr i128 kEnumerationCap = 10'000'000;

/// n = residue (mod p^exponent).
struct PAdicBall {
  i128 residue = 0;
  unsigned exponent = 0;
};

/// Excluded residues at one prime, as disjoint balls.
class LocalStructure {
public:
  LocalStructure(std::uint64_t p, const TupleConfig& config);

  std::uint64_t p() const { return p_; }
  unsigned top_exponent() const { return r_s_; }
  /// p^e for 0 <= e <= r_s.
  i128 power(unsigned e) const { return powers_.at(e); }
  const std::vector<PAdicBall>& balls() const { return balls_; }

  /// #{n <= p^{r_s} : n excluded, n = a (mod p^u)}, 0 <= u <= r_s.
  i128 excluded_in_class(i128 a, unsigned u) const;
  /// sum over c mod p^u of excluded_in_class(c, u)^2.
  i128 excluded_pair_count(unsigned u) const;

private:
  std::uint64_t p_;
  unsigned r_s_;
  std::vector<i128> powers_;
  std::vector<PAdicBall> balls_;
};

struct LocalCounts {
  i128 D = 0;      // excluded n <= p^{r_s}
  i128 Dstar = 0;  // excluded n <= p^{r_s} with p not dividing n
};

LocalCounts local_counts(std::uint64_t p, const TupleConfig& config,
                         LocalMethod method = LocalMethod::closed_form);

/// #{n <= p^{r_s} : n = a (mod p^{min(l, r_s)}), n not excluded}.
i128 chi_count(std::uint64_t p, unsigned l, i128 a, const TupleConfig& config,
               LocalMethod method = LocalMethod::closed_form);

/// Local factor chi_a^{(p^l)}(p) = p^{l - r_s} * chi_count for 0 <= l <= r_s.
/// l = 0 gives 1 - D(p)/p^{r_s}. For l > r_s the factor depends on a mod
/// p^{r_s} only and equals the indicator that a is not excluded.
Rational chi_local(std::uint64_t p, unsigned l, i128 a, const TupleConfig& config,
                   LocalMethod method = LocalMethod::closed_form);

/// chi_count for every residue a mod p^{min(l, r_s)}, indexed by a.
std::vector<i128> chi_count_table(const LocalStructure& local, unsigned l);

/// The prime-power value of the singular-series weight:
///   1 for l = 0,
///   p^{3l - 2r_s} * sum over excluded n, m <= p^{r_s} with n = m (mod p^{l-1})
///     of ([n = m (mod p^l)] - 1/p)  for 1 <= l <= r_s,
///   0 for l > r_s.
Rational frak_H_prime_power(std::uint64_t p, unsigned l, const TupleConfig& config,
                            LocalMethod method = LocalMethod::closed_form);
Rational frak_H_prime_power(const LocalStructure& local, unsigned l);

struct Admissibility {
  bool nonempty = true;      // D(p) < p^{r_s} at every prime
  bool positive_cf = true;   // D*(p) < phi(p^{r_s}) at every prime
  std::uint64_t nonempty_witness = 0;  // first prime violating nonempty, 0 if none
  std::uint64_t cf_witness = 0;        // first prime violating positive_cf, 0 if none
};

/// Exact admissibility test.
///
/// D(p) <= sum_i p^{r_s - r_i} <= s p^{r_s - r_1}, so D(p) = p^{r_s} forces
/// p^{r_1} <= s. Likewise D*(p) >= phi(p^{r_s}) = p^{r_s}(1 - 1/p) forces
/// s p^{-r_1} >= 1 - 1/p >= 1/2, i.e. p^{r_1} <= 2s. Only those primes are
/// examined.
Admissibility admissible(const TupleConfig& config);

struct LocalPrimeData {
  std::uint64_t p = 0;
  i128 D = 0;
  i128 Dstar = 0;
  std::optional<Rational> z_p;   // (1 - D/p^{r_s})^{-1}; empty when D = p^{r_s}
  std::vector<Rational> H_frak;  // H_frak[l] for l = 0..r_s
};

LocalPrimeData local_data(std::uint64_t p, const TupleConfig& config);

}  // namespace limitp
