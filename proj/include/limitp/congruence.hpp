#pragma once

// Simultaneous linear congruences with arbitrary (non-coprime) moduli.

#include <optional>
#include <vector>

#include "limitp/checked.hpp"
#include "limitp/tuple_config.hpp"

namespace limitp {

/// n = residue (mod modulus), residue kept in [0, modulus).
struct Congruence {
  i128 residue = 0;
  i128 modulus = 1;

  Congruence() = default;
  Congruence(i128 r, i128 m);

  friend bool operator==(const Congruence&, const Congruence&) = default;
};

using CongruenceSystem = std::vector<Congruence>;

/// Merges two congruences; nullopt when they conflict mod gcd of the moduli.
/// Throws OverflowError when the lcm leaves 128-bit range.
std::optional<Congruence> crt_merge(const Congruence& a, const Congruence& b);

/// Pairwise-merge CRT. Returns the solution class mod lcm, or nullopt when
/// the system is inconsistent. An empty system yields 0 (mod 1).
std::optional<Congruence> crt_solve(const CongruenceSystem& system);

/// E_a: 1 iff n = -alpha_j (mod moduli[j]) for all j and n = a (mod q) has
/// a solution. moduli[j] is the already-raised modulus (d_j^{r_j}).
int e_indicator(const std::vector<i128>& moduli, i128 q, i128 a, const TupleConfig& config);

}  // namespace limitp
