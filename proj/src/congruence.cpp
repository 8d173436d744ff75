#include "limitp/congruence.hpp"

#include <stdexcept>

namespace limitp {

namespace {

/// Returns g = gcd(a, b) and x with a*x = g (mod b).
std::pair<i128, i128> ext_gcd(i128 a, i128 b) {
  i128 old_r = a, r = b;
  i128 old_s = 1, s = 0;
  while (r != 0) {
    i128 q = old_r / r;
    i128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  return {old_r, old_s};
}

/// (a * b) mod m for 0 <= a, b < m without intermediate overflow.
i128 mul_mod(i128 a, i128 b, i128 m) {
  i128 out;
  if (!__builtin_mul_overflow(a, b, &out)) return out % m;
  i128 result = 0;
  a %= m;
  while (b > 0) {
    if (b & 1) result = (result >= m - a) ? result - (m - a) : result + a;
    a = (a >= m - a) ? a - (m - a) : a + a;
    b >>= 1;
  }
  return result;
}

}  // namespace

Congruence::Congruence(i128 r, i128 m) : residue(0), modulus(m) {
  if (m < 1) throw std::invalid_argument("congruence modulus must be positive");
  residue = mod_floor(r, m);
}

std::optional<Congruence> crt_merge(const Congruence& a, const Congruence& b) {
  auto [g, inv] = ext_gcd(a.modulus, b.modulus);
  i128 diff = b.residue - a.residue;
  if (diff % g != 0) return std::nullopt;
  i128 step = b.modulus / g;  // lcm = a.modulus * step
  i128 lcm = checked_mul(a.modulus, step, "lcm of congruence moduli");
  // n = a.residue + a.modulus * t with t = (diff / g) * inv (mod step)
  i128 t = step == 1 ? 0 : mul_mod(mod_floor(diff / g, step), mod_floor(inv, step), step);
  i128 n = mod_floor(a.residue + mul_mod(a.modulus % lcm, t, lcm), lcm);
  return Congruence(n, lcm);
}

std::optional<Congruence> crt_solve(const CongruenceSystem& system) {
  Congruence acc(0, 1);
  for (const auto& c : system) {
    auto merged = crt_merge(acc, c);
    if (!merged) return std::nullopt;
    acc = *merged;
  }
  return acc;
}

int e_indicator(const std::vector<i128>& moduli, i128 q, i128 a, const TupleConfig& config) {
  if (moduli.size() != config.s()) throw std::invalid_argument("e_indicator: one modulus per tuple entry required");
  CongruenceSystem sys;
  sys.reserve(moduli.size() + 1);
  for (std::size_t j = 0; j < moduli.size(); ++j)
    sys.emplace_back(-static_cast<i128>(config.alpha(j)), moduli[j]);
  sys.emplace_back(a, q);
  return crt_solve(sys).has_value() ? 1 : 0;
}

}  // namespace limitp
