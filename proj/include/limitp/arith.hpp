#pragma once

// Sieves and elementary multiplicative functions.
//
// All tables are indexed by n directly; slot 0 exists but holds no meaning
// (mu[0] = 0, phi[0] = 0, spf[0] = 0, is_prime[0] = false).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "limitp/checked.hpp"
#include "limitp/tuple_config.hpp"

namespace limitp {

/// Default number of integers handled by one sieve segment.
inline constexpr std::size_t kDefaultSegmentSize = std::size_t{1} << 22;

/// Default upper bound on bytes a single table build may allocate.
inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{2} << 30;

struct SieveOptions {
  std::size_t segment_size = kDefaultSegmentSize;
  std::size_t memory_budget = kDefaultMemoryBudget;
  unsigned threads = 0;  // 0: hardware concurrency

  /// Defaults, with segment_size overridden by LIMITP_SEGMENT_SIZE if set.
  static SieveOptions from_environment();
};

/// Packed bit array with 64-bit words.
class BitArray {
public:
  BitArray() = default;
  explicit BitArray(std::size_t size, bool value = false);

  std::size_t size() const { return size_; }
  bool operator[](std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= (u64{1} << (i & 63)); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(u64{1} << (i & 63)); }
  std::size_t count() const;
  /// Number of set bits in [0, end).
  std::size_t count_prefix(std::size_t end) const;

  friend bool operator==(const BitArray&, const BitArray&) = default;

private:
  std::size_t size_ = 0;
  std::vector<u64> words_;
};

struct ArithTables {
  std::uint32_t limit = 0;
  std::vector<std::int8_t> mu;
  std::vector<std::uint32_t> phi;
  std::vector<std::uint32_t> spf;
  BitArray is_prime;

  /// Prime factorization of 1 <= n <= limit as (prime, exponent) pairs.
  std::vector<std::pair<std::uint32_t, unsigned>> factor(std::uint32_t n) const;
};

/// Linear sieve for mu, phi, smallest prime factor and primality on 0..limit.
ArithTables build_tables(std::uint32_t limit, const SieveOptions& opts = {});

/// Indicator of k-freeness of n (1 <= n <= tables.limit).
int mu_k(std::uint64_t n, unsigned k, const ArithTables& tables);

/// Ramanujan sum c_q(n) = sum_{d | (q,n)} d mu(q/d).
std::int64_t ramanujan_sum(std::uint32_t q, std::int64_t n, const ArithTables& tables);

/// Primes p <= limit by a plain sieve of Eratosthenes.
std::vector<std::uint32_t> small_primes(std::uint32_t limit);

/// Trial-division factorization; for moduli outside any table.
std::vector<std::pair<std::uint64_t, unsigned>> factor_trial(std::uint64_t n);

/// Divisors d of q paired with mu(q/d), via trial-division factorization.
std::vector<std::pair<std::uint64_t, int>> divisors_with_mobius(std::uint64_t q);

/// c_q(b) for b = 0..q-1, from c_q(b) = sum_{d | (q, b)} d mu(q/d).
std::vector<std::int64_t> ramanujan_row(std::uint64_t q);

/// Indicator of a shifted k-free tuple on 1..limit.
struct FIndicator {
  std::uint64_t limit = 0;
  TupleConfig config;
  BitArray values;  // values[n] = f(n); slot 0 unused

  bool operator()(std::uint64_t n) const { return values[n]; }
};

FIndicator sieve_f(const TupleConfig& config, std::uint64_t limit, const SieveOptions& opts = {});

/// One sieve segment covering integers [lo, lo + size).
struct SegmentView {
  std::uint64_t lo = 0;
  std::size_t size = 0;
  const std::vector<std::uint8_t>* f = nullptr;      // f(lo + i)
  const std::vector<std::uint8_t>* prime = nullptr;  // primality of lo + i
};

/// Streams f and primality over [1, limit] in segments, in ascending order.
/// Memory stays O(segment_size + sqrt(limit)). Segment contents are computed
/// independently; the callback always runs on the calling thread.
void for_each_segment(const TupleConfig& config, std::uint64_t limit, const SieveOptions& opts,
                      const std::function<void(const SegmentView&)>& visit);

/// pi(x) by segmented sieve.
std::uint64_t prime_pi(std::uint64_t x, const SieveOptions& opts = {});

}  // namespace limitp
