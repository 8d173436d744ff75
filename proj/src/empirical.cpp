#include "limitp/empirical.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace limitp {

EmpiricalReport make_report(std::uint64_t x, double observed, double predicted, double tail_bound,
                            std::string notes) {
  EmpiricalReport r;
  r.x = x;
  r.observed = observed;
  r.predicted = predicted;
  r.ratio = predicted != 0 ? observed / predicted : std::numeric_limits<double>::quiet_NaN();
  r.tail_bound = tail_bound;
  r.notes = std::move(notes);
  return r;
}

PrimeSumResult prime_sum_f(const TupleConfig& config, std::uint64_t x, std::uint64_t truncation_P,
                           const SieveOptions& opts) {
  PrimeSumResult out;
  for_each_segment(config, x, opts, [&](const SegmentView& seg) {
    const auto& f = *seg.f;
    const auto& prime = *seg.prime;
    for (std::size_t i = 0; i < seg.size; ++i) {
      out.pi_x += prime[i];
      out.observed += prime[i] & f[i];
    }
  });
  out.cf = constant_cf(config, truncation_P);
  const double cf = static_cast<double>(out.cf.value);
  const double tail = static_cast<double>(out.cf.tail_bound);
  const double by_log = x >= 2 ? cf * static_cast<double>(x) / std::log(static_cast<double>(x)) : 0.0;
  out.by_log = make_report(x, static_cast<double>(out.observed), by_log, tail,
                           "prime_sum f=" + config.to_string() + " normalization=x/log(x)");
  out.by_pi = make_report(x, static_cast<double>(out.observed), cf * static_cast<double>(out.pi_x), tail,
                          "prime_sum f=" + config.to_string() + " normalization=pi(x) pi=" +
                              std::to_string(out.pi_x));
  return out;
}

MeanSumResult mean_sum_f(const TupleConfig& config, std::uint64_t x, std::uint64_t truncation_P,
                         const SieveOptions& opts) {
  MeanSumResult out;
  for_each_segment(config, x, opts, [&](const SegmentView& seg) {
    for (std::size_t i = 0; i < seg.size; ++i) out.observed += (*seg.f)[i];
  });
  out.frak_D = density_frak_D(config, truncation_P);
  const double d = static_cast<double>(out.frak_D.value);
  const double predicted = d * static_cast<double>(x);
  const double exponent = 2.0 / (config.r_min() + 1.0);
  out.scaled_error = x > 0 ? std::abs(static_cast<double>(out.observed) - predicted) /
                                 std::pow(static_cast<double>(x), exponent)
                           : 0.0;
  std::ostringstream notes;
  notes.precision(6);
  notes << "mean_sum f=" << config.to_string() << " error/x^(2/(r1+1))=" << out.scaled_error;
  out.report = make_report(x, static_cast<double>(out.observed), predicted,
                           static_cast<double>(out.frak_D.tail_bound), notes.str());
  return out;
}

std::vector<std::uint64_t> class_counts(const FIndicator& f, std::uint64_t x, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("class_counts: q must be positive");
  if (x > f.limit) throw std::out_of_range("class_counts: x beyond indicator limit");
  std::vector<std::uint64_t> counts(q, 0);
  std::uint64_t b = 1 % q;
  for (std::uint64_t n = 1; n <= x; ++n) {
    counts[b] += f(n);
    if (++b == q) b = 0;
  }
  return counts;
}

namespace {

/// x g(q, b)/q for all b mod q; zero throughout when frak_D = 0.
std::vector<double> expected_class_counts(const TupleConfig& config, std::uint64_t x, std::uint64_t q,
                                          HighReal frak_D) {
  std::vector<double> out(q, 0.0);
  if (frak_D == 0) return out;
  const ResidueWeights w = residue_weights(q, config);
  const HighReal scale = static_cast<HighReal>(x) * frak_D * to_long_double(w.z) /
                         (static_cast<HighReal>(w.denom) * static_cast<HighReal>(q));
  for (std::uint64_t b = 0; b < q; ++b) out[b] = static_cast<double>(scale * static_cast<HighReal>(w.numer[b]));
  return out;
}

}  // namespace

ErrorTermSample residue_error(const FIndicator& f, std::uint64_t x, std::uint64_t q, std::uint64_t b,
                              HighReal frak_D) {
  if (q == 0) throw std::invalid_argument("residue_error: q must be positive");
  if (x > f.limit) throw std::out_of_range("residue_error: x beyond indicator limit");
  ErrorTermSample out;
  out.x = x;
  out.q = q;
  out.b = b;
  const std::uint64_t r = b % q;
  for (std::uint64_t n = (r == 0 ? q : r); n <= x; n += q) out.count += f(n);
  const std::vector<double> expected = expected_class_counts(f.config, x, q, frak_D);
  out.E = static_cast<double>(out.count) - expected[r];
  return out;
}

ErrorTermSample residue_error(const TupleConfig& config, std::uint64_t x, std::uint64_t q, std::uint64_t b,
                              std::uint64_t truncation_P, const SieveOptions& opts) {
  const FIndicator f = sieve_f(config, x, opts);
  return residue_error(f, x, q, b, density_frak_D(config, truncation_P).value);
}

BdhResult bdh_quadratic_mean(const FIndicator& f, std::uint64_t x, std::uint64_t Q, HighReal frak_D) {
  if (Q == 0 || Q > x) throw std::invalid_argument("bdh_quadratic_mean: need 1 <= Q <= x");
  if (x > f.limit) throw std::out_of_range("bdh_quadratic_mean: x beyond indicator limit");
  std::vector<std::uint64_t> ones;
  for (std::uint64_t n = 1; n <= x; ++n)
    if (f(n)) ones.push_back(n);

  BdhResult out;
  out.x = x;
  out.Q = Q;
  long double weighted = 0, plain = 0;
  std::vector<std::uint64_t> counts;
  for (std::uint64_t q = 1; q <= Q; ++q) {
    counts.assign(q, 0);
    for (std::uint64_t n : ones) ++counts[n % q];
    const std::vector<double> expected = expected_class_counts(f.config, x, q, frak_D);
    for (std::uint64_t b = 1; b <= q; ++b) {
      const std::uint64_t r = b % q;
      const long double e = static_cast<long double>(counts[r]) - expected[r];
      const std::uint64_t reps = b <= x ? (x - b) / q + 1 : 0;
      plain += e * e;
      weighted += static_cast<long double>(reps) * e * e;
    }
  }
  const double qx = static_cast<double>(Q) * static_cast<double>(x);
  out.weighted = static_cast<double>(weighted);
  out.plain = static_cast<double>(plain);
  out.weighted_ratio = out.weighted / qx;
  out.plain_ratio = out.plain / qx;
  return out;
}

BdhResult bdh_quadratic_mean(const TupleConfig& config, std::uint64_t x, std::uint64_t Q,
                             std::uint64_t truncation_P, const SieveOptions& opts) {
  const FIndicator f = sieve_f(config, x, opts);
  return bdh_quadratic_mean(f, x, Q, density_frak_D(config, truncation_P).value);
}

EmpiricalReport dft_circle_identity(const TupleConfig& config, std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("dft_circle_identity: x must be positive");
  if (x > 1'000'000) throw CapacityError("dft_circle_identity: dense evaluation limited to x <= 10^6");
  const std::uint64_t N = x + 1;
  const FIndicator f = sieve_f(config, x);
  const std::vector<std::uint32_t> primes = small_primes(static_cast<std::uint32_t>(x));

  std::vector<std::uint64_t> support;
  for (std::uint64_t n = 1; n <= x; ++n)
    if (f(n)) support.push_back(n);
  std::uint64_t exact = 0;
  for (std::uint32_t p : primes) exact += f(p);

  std::vector<std::complex<double>> twiddle(N);
  for (std::uint64_t j = 0; j < N; ++j) {
    const long double angle = 2 * std::numbers::pi_v<long double> * static_cast<long double>(j) / N;
    twiddle[j] = {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
  }
  std::complex<long double> total = 0;
  for (std::uint64_t k = 0; k < N; ++k) {
    std::complex<double> S = 0, T = 0;
    for (std::uint64_t n : support) S += twiddle[(k * n) % N];
    for (std::uint32_t p : primes) T += std::conj(twiddle[(k * p) % N]);
    const std::complex<double> st = S * T;
    total += std::complex<long double>(st.real(), st.imag());
  }
  total /= static_cast<long double>(N);

  std::ostringstream notes;
  notes.precision(3);
  notes << "dft_check f=" << config.to_string() << " N=" << N << " imag=" << static_cast<double>(total.imag())
        << " abs_deviation=" << static_cast<double>(std::abs(total.real() - static_cast<long double>(exact)));
  return make_report(x, static_cast<double>(total.real()), static_cast<double>(exact), 0.0, notes.str());
}

int mu_k_truncated(std::uint64_t n, unsigned k, std::uint64_t y) {
  if (n == 0) throw std::invalid_argument("mu_k_truncated: n must be positive");
  // d^k | n for a composite d <= y implies the same for a prime factor of d.
  for (std::uint64_t d = 2; d <= y; ++d) {
    i128 dk = 1;
    bool exceeds = false;
    for (unsigned e = 0; e < k && !exceeds; ++e) {
      dk *= d;
      exceeds = dk > static_cast<i128>(n);
    }
    if (exceeds) break;
    if (n % static_cast<std::uint64_t>(dk) == 0) return 0;
  }
  return 1;
}

i128 truncation_period(unsigned k, std::uint64_t y) {
  i128 period = 1;
  for (std::uint32_t p : small_primes(static_cast<std::uint32_t>(y)))
    period = checked_mul(period, checked_pow(p, k, "truncation period"), "truncation period");
  return period;
}

double zeta_tail_lower(unsigned k, std::uint64_t y) {
  if (k < 2) throw std::invalid_argument("zeta_tail_lower: k must be at least 2");
  const std::uint64_t cutoff = std::max<std::uint64_t>(y, 1'000'000);
  // Remainder sum_{d > cutoff} d^{-k} >= integral_{cutoff+1}^inf t^{-k} dt.
  long double sum = std::pow(static_cast<long double>(cutoff) + 1, 1.0L - k) / (k - 1.0L);
  for (std::uint64_t d = cutoff; d > y; --d) sum += std::pow(static_cast<long double>(d), -static_cast<long double>(k));
  return static_cast<double>(sum);
}

ApproxResult mu_k_approx(unsigned k, std::uint64_t y, std::uint64_t x, std::uint64_t pointwise_limit,
                         const SieveOptions& opts) {
  if (k < 2) throw std::invalid_argument("mu_k_approx: k must be at least 2");
  if (x == 0) throw std::invalid_argument("mu_k_approx: x must be positive");
  const std::uint64_t top = std::max(x, pointwise_limit);
  if (2 * (top + 1) > opts.memory_budget) throw CapacityError("mu_k_approx: x exceeds the memory budget");

  std::vector<std::uint8_t> full(top + 1, 1), truncated(top + 1, 1);
  for (std::uint32_t p : small_primes(static_cast<std::uint32_t>(std::sqrt(static_cast<double>(top)) + 1))) {
    i128 pk = checked_pow(p, k);
    if (pk > static_cast<i128>(top)) break;
    const auto step = static_cast<std::uint64_t>(pk);
    for (std::uint64_t m = step; m <= top; m += step) {
      full[m] = 0;
      if (p <= y) truncated[m] = 0;
    }
  }

  ApproxResult out;
  std::uint64_t diff = 0;
  for (std::uint64_t n = 1; n <= x; ++n) diff += static_cast<std::uint64_t>(truncated[n] - full[n]);
  out.distance = static_cast<double>(diff) / static_cast<double>(x);
  out.bound = zeta_tail_lower(k, y);
  out.within_bound = out.distance <= out.bound;

  out.dominates = true;
  for (std::uint64_t n = 1; n <= pointwise_limit; ++n)
    if (truncated[n] < full[n]) out.dominates = false;

  out.period = truncation_period(k, y);
  out.periodic = true;
  // Sampled windows: n and n + period must agree.
  for (std::uint64_t j = 0; j < 2000; ++j) {
    const std::uint64_t n = 1 + j * 7919 % std::max<std::uint64_t>(top, 1);
    const i128 shifted = static_cast<i128>(n) + out.period;
    if (shifted > static_cast<i128>(std::numeric_limits<std::uint64_t>::max() / 2)) {
      out.periodic = false;
      break;
    }
    if (mu_k_truncated(n, k, y) != mu_k_truncated(static_cast<std::uint64_t>(shifted), k, y)) out.periodic = false;
    if (static_cast<int>(truncated[n]) != mu_k_truncated(n, k, y)) out.periodic = false;
  }

  std::ostringstream notes;
  notes << "mu_k_approx k=" << k << " y=" << y << " period=" << to_string(out.period)
        << " dominates=" << (out.dominates ? "yes" : "no") << " periodic=" << (out.periodic ? "yes" : "no")
        << " within_bound=" << (out.within_bound ? "yes" : "no");
  out.report = make_report(x, out.distance, out.bound, 0.0, notes.str());
  return out;
}

EmpiricalReport mean_f_ramanujan(const TupleConfig& config, std::uint64_t q, std::uint64_t x,
                                 std::uint64_t truncation_P, const SieveOptions& opts) {
  if (q == 0 || x == 0) throw std::invalid_argument("mean_f_ramanujan: q and x must be positive");
  const std::vector<std::int64_t> c = ramanujan_row(q);
  long double acc = 0;
  std::uint64_t n = 1;
  for_each_segment(config, x, opts, [&](const SegmentView& seg) {
    for (std::size_t i = 0; i < seg.size; ++i, ++n)
      if ((*seg.f)[i]) acc += static_cast<long double>(c[n % q]);
  });
  const double observed = static_cast<double>(acc / static_cast<long double>(x));

  const EulerProductValue d = density_frak_D(config, truncation_P);
  double predicted = 0;
  if (d.value != 0)
    predicted = static_cast<double>(d.value * to_long_double(z_of(q, config) * sum_star_H(q, config) / q));
  return make_report(x, observed, predicted, static_cast<double>(d.tail_bound),
                     "mean_f_ramanujan f=" + config.to_string() + " q=" + std::to_string(q));
}

}  // namespace limitp
