#include "limitp/tuple_config.hpp"

#include <algorithm>
#include <stdexcept>

namespace limitp {

TupleConfig TupleConfig::make(std::vector<ShiftPair> pairs) {
  if (pairs.empty()) throw std::invalid_argument("tuple needs at least one alpha:r pair");
  for (const auto& p : pairs) {
    if (p.r < 2)
      throw std::invalid_argument("r must exceed 1 (got alpha=" + std::to_string(p.alpha) +
                                  ", r=" + std::to_string(p.r) + ")");
  }
  std::sort(pairs.begin(), pairs.end(), [](const ShiftPair& a, const ShiftPair& b) {
    return a.r != b.r ? a.r < b.r : a.alpha < b.alpha;
  });
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  TupleConfig out;
  for (const auto& p : pairs) {
    // Sorted by r, so any dominating pair with the same alpha is already kept.
    bool redundant = std::any_of(out.pairs_.begin(), out.pairs_.end(),
                                 [&](const ShiftPair& q) { return q.alpha == p.alpha; });
    if (!redundant) out.pairs_.push_back(p);
  }
  return out;
}

TupleConfig TupleConfig::make(const std::vector<std::uint64_t>& alphas, const std::vector<unsigned>& rs) {
  if (alphas.size() != rs.size()) throw std::invalid_argument("alphas and rs differ in length");
  std::vector<ShiftPair> pairs;
  pairs.reserve(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) pairs.push_back({alphas[i], rs[i]});
  return make(std::move(pairs));
}

std::uint64_t TupleConfig::max_alpha() const {
  std::uint64_t m = 0;
  for (const auto& p : pairs_) m = std::max(m, p.alpha);
  return m;
}

std::string TupleConfig::to_string() const {
  std::string s;
  for (const auto& p : pairs_) {
    if (!s.empty()) s += ',';
    s += std::to_string(p.alpha) + ':' + std::to_string(p.r);
  }
  return s;
}

}  // namespace limitp
