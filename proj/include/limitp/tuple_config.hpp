#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace limitp {

/// One factor mu_r(n + alpha) of the tuple.
struct ShiftPair {
  std::uint64_t alpha = 0;
  unsigned r = 2;

  friend auto operator<=>(const ShiftPair&, const ShiftPair&) = default;
};

/// f(n) = prod_i mu_{r_i}(n + alpha_i), stored normalized:
///   - pairs sorted by (r, alpha) ascending, so r_1 <= ... <= r_s;
///   - exact duplicates removed;
///   - (alpha, r) dropped when some (alpha, r') with r' < r is present,
///     because r'-free already implies r-free.
/// Normalization leaves f unchanged pointwise.
class TupleConfig {
public:
  TupleConfig() = default;

  /// Validates (r >= 2) and normalizes. Throws std::invalid_argument.
  static TupleConfig make(std::vector<ShiftPair> pairs);
  static TupleConfig make(const std::vector<std::uint64_t>& alphas, const std::vector<unsigned>& rs);

  std::size_t s() const { return pairs_.size(); }
  const std::vector<ShiftPair>& pairs() const { return pairs_; }
  std::uint64_t alpha(std::size_t i) const { return pairs_[i].alpha; }
  unsigned r(std::size_t i) const { return pairs_[i].r; }
  unsigned r_min() const { return pairs_.front().r; }
  unsigned r_max() const { return pairs_.back().r; }
  std::uint64_t max_alpha() const;

  /// "alpha:r,alpha:r,..." in normalized order.
  std::string to_string() const;

  friend bool operator==(const TupleConfig&, const TupleConfig&) = default;

private:
  std::vector<ShiftPair> pairs_;
};

}  // namespace limitp
