#include "limitp/global.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "limitp/arith.hpp"

namespace limitp {

namespace {

HighReal to_high(i128 v) { return static_cast<HighReal>(v); }

enum class ProductKind { density, prime_constant };

EulerProductValue euler_product(const TupleConfig& config, std::uint64_t P, bool keep, ProductKind kind) {
  if (P < 2) throw std::invalid_argument("Euler product truncation must be at least 2");
  if (P > std::numeric_limits<std::uint32_t>::max()) throw CapacityError("Euler product truncation too large");
  EulerProductValue out;
  out.truncation_P = P;
  if (keep) out.local_factors.emplace();

  const Admissibility adm = admissible(config);
  const bool vanishes = kind == ProductKind::density ? !adm.nonempty : !adm.positive_cf;
  if (vanishes) {
    out.exact_zero = true;
    out.zero_witness = kind == ProductKind::density ? adm.nonempty_witness : adm.cf_witness;
    out.value = 0;
    out.tail_bound = 0;
    if (keep) (*out.local_factors)[out.zero_witness] = 0;
    return out;
  }

  HighReal log_sum = 0;
  for (std::uint32_t p : small_primes(static_cast<std::uint32_t>(P))) {
    const LocalCounts c = local_counts(p, config);
    const i128 top = checked_pow(p, config.r_max(), "p^{r_s}");
    i128 removed = c.D, total = top;
    if (kind == ProductKind::prime_constant) {
      removed = c.Dstar;
      total = top / p * (p - 1);
    }
    if (keep) (*out.local_factors)[p] = to_rational(total - removed, total);
    if (removed != 0) log_sum += std::log1p(-to_high(removed) / to_high(total));
  }
  out.value = std::exp(log_sum);
  out.tail_bound = euler_tail_bound(config.s(), P);
  return out;
}

}  // namespace

HighReal euler_tail_bound(std::size_t s, std::uint64_t P) {
  const HighReal next = static_cast<HighReal>(P) + 1;
  const HighReal x_next = static_cast<HighReal>(s) / (next * (next - 1));
  if (x_next >= 1) return std::numeric_limits<HighReal>::infinity();
  return static_cast<HighReal>(s) / (static_cast<HighReal>(P) * (1 - x_next));
}

EulerProductValue density_frak_D(const TupleConfig& config, std::uint64_t truncation_P, bool keep_factors) {
  return euler_product(config, truncation_P, keep_factors, ProductKind::density);
}

EulerProductValue constant_cf(const TupleConfig& config, std::uint64_t truncation_P, bool keep_factors) {
  return euler_product(config, truncation_P, keep_factors, ProductKind::prime_constant);
}

Rational z_of(std::uint64_t q, const TupleConfig& config) {
  if (q == 0) throw std::invalid_argument("z_of: q must be positive");
  Rational z = 1;
  for (auto [p, e] : factor_trial(q)) {
    (void)e;
    const LocalCounts c = local_counts(p, config);
    const i128 top = checked_pow(static_cast<i128>(p), config.r_max(), "p^{r_s}");
    if (c.D >= top) throw InadmissibleError("z(q) undefined: D(p) = p^{r_s} at p = " + std::to_string(p));
    z *= to_rational(top, top - c.D);
  }
  return z;
}

Rational h_of(std::uint64_t q, i128 a, const TupleConfig& config) {
  if (q == 0) throw std::invalid_argument("h_of: q must be positive");
  Rational h = 1;
  for (auto [p, e] : factor_trial(q)) h *= chi_local(p, e, a, config);
  return h;
}

ResidueWeights residue_weights(std::uint64_t q, const TupleConfig& config) {
  if (q == 0) throw std::invalid_argument("residue_weights: q must be positive");
  if (q > static_cast<std::uint64_t>(kEnumerationCap)) throw CapacityError("residue_weights: q too large");
  ResidueWeights out;
  out.q = q;
  out.numer.assign(q, 1);
  out.z = z_of(q, config);
  for (auto [p, e] : factor_trial(q)) {
    LocalStructure local(p, config);
    const unsigned u = std::min(e, local.top_exponent());
    const std::vector<i128> table = chi_count_table(local, e);
    const auto mod = static_cast<std::uint64_t>(local.power(u));
    for (std::uint64_t b = 0; b < q; ++b) out.numer[b] = checked_mul(out.numer[b], table[b % mod], "h numerator");
    out.denom = checked_mul(out.denom, local.power(local.top_exponent() - u), "h denominator");
  }
  return out;
}

GValue g_of(std::uint64_t q, i128 a, const TupleConfig& config, HighReal frak_D) {
  GValue out;
  out.zh = z_of(q, config) * h_of(q, a, config);
  out.value = frak_D * to_long_double(out.zh);
  return out;
}

std::complex<HighReal> gauss_G(std::uint64_t q, i128 a, const TupleConfig& config, HighReal frak_D) {
  const ResidueWeights w = residue_weights(q, config);
  const HighReal scale = frak_D * to_long_double(w.z) / (to_high(w.denom) * static_cast<HighReal>(q));
  const auto qq = static_cast<i128>(q);
  const i128 ar = mod_floor(a, qq);
  std::complex<HighReal> sum = 0;
  // b runs over 1..q; b = q is the class of 0.
  for (std::uint64_t b = 1; b <= q; ++b) {
    const i128 phase = (ar * static_cast<i128>(b)) % qq;
    const HighReal angle = 2 * std::numbers::pi_v<HighReal> * to_high(phase) / static_cast<HighReal>(q);
    sum += to_high(w.numer[b % q]) * std::complex<HighReal>(std::cos(angle), std::sin(angle));
  }
  return sum * scale;
}

Rational frak_H(std::uint64_t q, const TupleConfig& config) {
  if (q == 0) throw std::invalid_argument("frak_H: q must be positive");
  Rational out = 1;
  for (auto [p, e] : factor_trial(q)) {
    if (e > config.r_max()) return 0;
    out *= frak_H_prime_power(p, e, config);
  }
  return out;
}

Rational sum_star_H(std::uint64_t q, const TupleConfig& config) {
  const ResidueWeights w = residue_weights(q, config);
  const std::vector<std::int64_t> c = ramanujan_row(q);
  i128 total = 0;
  for (std::uint64_t b = 0; b < q; ++b)
    if (c[b] != 0) total = checked_add(total, checked_mul(w.numer[b], c[b], "sum_star_H"), "sum_star_H");
  return to_rational(total, w.denom);
}

Rational sum_star_H_prime(std::uint64_t p, const TupleConfig& config) {
  const LocalCounts c = local_counts(p, config);
  const i128 pp = static_cast<i128>(p);
  const i128 numer = c.D - pp * (c.D - c.Dstar);
  return to_rational(numer, checked_pow(pp, config.r_max() - 1, "p^{r_s - 1}"));
}

SingularSeriesPartial singular_partial(std::uint64_t Q, const TupleConfig& config, HighReal frak_D,
                                       bool keep_terms) {
  if (Q == 0) throw std::invalid_argument("singular_partial: Q must be positive");
  if (Q > std::numeric_limits<std::uint32_t>::max() / 2) throw CapacityError("singular_partial: Q too large");
  SingularSeriesPartial out;
  out.Q = Q;
  out.target = frak_D;
  const unsigned r_s = config.r_max();

  // Local weights p^{-2l} z_p^2 H(p^l), l = 1..r_s, for every p <= Q.
  const ArithTables tables = build_tables(static_cast<std::uint32_t>(std::max<std::uint64_t>(Q, 2)));
  std::vector<std::vector<HighReal>> local(Q + 1);
  for (std::uint32_t p = 2; p <= Q; ++p) {
    if (!tables.is_prime[p]) continue;
    LocalStructure ls(p, config);
    const LocalCounts c = local_counts(p, config);
    const i128 top = ls.power(r_s);
    if (c.D >= top) throw InadmissibleError("singular series undefined: D(p) = p^{r_s} at p = " + std::to_string(p));
    const Rational z = to_rational(top, top - c.D);
    auto& w = local[p];
    w.assign(r_s + 1, 0);
    Rational pl2 = 1;
    for (unsigned l = 1; l <= r_s; ++l) {
      pl2 /= static_cast<unsigned long>(p) * static_cast<unsigned long>(p);
      w[l] = to_long_double(pl2 * z * z * frak_H_prime_power(ls, l));
    }
  }

  const HighReal d2 = frak_D * frak_D;
  if (keep_terms) out.per_q_terms.reserve(Q);
  HighReal sum = 0;
  for (std::uint32_t q = 1; q <= Q; ++q) {
    HighReal term = d2;
    if (q > 1) {
      for (auto [p, e] : tables.factor(q)) {
        if (e > r_s) {
          term = 0;
          break;
        }
        term *= local[p][e];
      }
    }
    sum += term;
    if (keep_terms) out.per_q_terms.push_back(term);
  }
  out.partial_sum = sum;
  return out;
}

HighReal cf_series_partial(std::uint64_t Q, const TupleConfig& config, HighReal frak_D) {
  if (Q == 0) throw std::invalid_argument("cf_series_partial: Q must be positive");
  const ArithTables tables = build_tables(static_cast<std::uint32_t>(std::max<std::uint64_t>(Q, 2)));
  HighReal sum = 0;
  for (std::uint32_t q = 1; q <= Q; ++q) {
    if (tables.mu[q] == 0) continue;
    const Rational term = Rational(tables.mu[q], tables.phi[q]) * z_of(q, config) / q * sum_star_H(q, config);
    sum += to_long_double(term);
  }
  return frak_D * sum;
}

}  // namespace limitp
