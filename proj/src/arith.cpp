#include "limitp/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace limitp {

std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u != 0) {
    s += static_cast<char>('0' + static_cast<int>(u % 10));
    u /= 10;
  }
  if (neg) s += '-';
  std::reverse(s.begin(), s.end());
  return s;
}

SieveOptions SieveOptions::from_environment() {
  SieveOptions o;
  if (const char* env = std::getenv("LIMITP_SEGMENT_SIZE"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0' || v == 0)
      throw std::invalid_argument(std::string("LIMITP_SEGMENT_SIZE is not a positive integer: ") + env);
    o.segment_size = static_cast<std::size_t>(v);
  }
  return o;
}

BitArray::BitArray(std::size_t size, bool value)
    : size_(size), words_((size + 63) / 64, value ? ~u64{0} : u64{0}) {
  if (value && size % 64 != 0) words_.back() &= (u64{1} << (size % 64)) - 1;
}

std::size_t BitArray::count() const {
  std::size_t c = 0;
  for (u64 w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t BitArray::count_prefix(std::size_t end) const {
  std::size_t c = 0;
  std::size_t full = end / 64;
  for (std::size_t i = 0; i < full; ++i) c += static_cast<std::size_t>(std::popcount(words_[i]));
  if (end % 64 != 0) c += static_cast<std::size_t>(std::popcount(words_[full] & ((u64{1} << (end % 64)) - 1)));
  return c;
}

std::vector<std::pair<std::uint32_t, unsigned>> ArithTables::factor(std::uint32_t n) const {
  if (n == 0 || n > limit) throw std::out_of_range("factor: n outside table range");
  std::vector<std::pair<std::uint32_t, unsigned>> out;
  while (n > 1) {
    std::uint32_t p = spf[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

ArithTables build_tables(std::uint32_t limit, const SieveOptions& opts) {
  if (limit < 2) throw std::invalid_argument("build_tables: limit must be at least 2");
  // mu (1 byte) + phi (4) + spf (4) + one bit
  const double bytes = static_cast<double>(limit + 1) * 9.125;
  if (bytes > static_cast<double>(opts.memory_budget))
    throw CapacityError("build_tables: limit " + std::to_string(limit) + " needs ~" +
                        std::to_string(static_cast<long long>(bytes)) + " bytes, budget is " +
                        std::to_string(opts.memory_budget));

  ArithTables t;
  t.limit = limit;
  t.mu.assign(limit + 1, 0);
  t.phi.assign(limit + 1, 0);
  t.spf.assign(limit + 1, 0);
  t.is_prime = BitArray(limit + 1);
  std::vector<std::uint32_t> primes;
  t.mu[1] = 1;
  t.phi[1] = 1;
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (t.spf[i] == 0) {
      t.spf[i] = i;
      t.mu[i] = -1;
      t.phi[i] = i - 1;
      t.is_prime.set(i);
      primes.push_back(i);
    }
    for (std::uint32_t p : primes) {
      std::uint64_t m = std::uint64_t{p} * i;
      if (p > t.spf[i] || m > limit) break;
      auto mi = static_cast<std::uint32_t>(m);
      t.spf[mi] = p;
      if (i % p == 0) {
        t.mu[mi] = 0;
        t.phi[mi] = t.phi[i] * p;
      } else {
        t.mu[mi] = static_cast<std::int8_t>(-t.mu[i]);
        t.phi[mi] = t.phi[i] * (p - 1);
      }
    }
  }
  return t;
}

int mu_k(std::uint64_t n, unsigned k, const ArithTables& tables) {
  if (n == 0 || n > tables.limit) throw std::out_of_range("mu_k: n outside table range");
  auto m = static_cast<std::uint32_t>(n);
  while (m > 1) {
    std::uint32_t p = tables.spf[m];
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e >= k) return 0;
  }
  return 1;
}

std::int64_t ramanujan_sum(std::uint32_t q, std::int64_t n, const ArithTables& tables) {
  if (q == 0 || q > tables.limit) throw std::out_of_range("ramanujan_sum: q outside table range");
  auto g = static_cast<std::uint32_t>(std::gcd(static_cast<std::uint64_t>(q),
                                               static_cast<std::uint64_t>(n < 0 ? -n : n)));
  if (g == 0) g = q;
  // Walk divisors d of g from its factorization.
  std::vector<std::uint32_t> divisors{1};
  for (auto [p, e] : tables.factor(g)) {
    std::size_t base = divisors.size();
    std::uint32_t pk = 1;
    for (unsigned j = 1; j <= e; ++j) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divisors.push_back(divisors[i] * pk);
    }
  }
  std::int64_t sum = 0;
  for (std::uint32_t d : divisors) sum += static_cast<std::int64_t>(d) * tables.mu[q / d];
  return sum;
}

std::vector<std::uint32_t> small_primes(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor_trial(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factor_trial: n must be positive");
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::pair<std::uint64_t, int>> divisors_with_mobius(std::uint64_t q) {
  std::vector<std::pair<std::uint64_t, int>> out{{1, 1}};
  for (auto [p, e] : factor_trial(q)) {
    std::vector<std::pair<std::uint64_t, int>> next;
    next.reserve(out.size() * (e + 1));
    std::uint64_t pj = 1;
    for (unsigned j = 0; j <= e; ++j, pj *= p) {
      // q/d keeps p^{e - j}
      const int local_mu = (e - j == 0) ? 1 : (e - j == 1 ? -1 : 0);
      for (auto [d, mu] : out) next.emplace_back(d * pj, mu * local_mu);
    }
    out = std::move(next);
  }
  return out;
}

std::vector<std::int64_t> ramanujan_row(std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("ramanujan_row: q must be positive");
  std::vector<std::int64_t> row(q, 0);
  for (auto [d, mu] : divisors_with_mobius(q)) {
    if (mu == 0) continue;
    for (std::uint64_t b = 0; b < q; b += d) row[b] += static_cast<std::int64_t>(d) * mu;
  }
  return row;
}

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// Sieving state shared read-only across segments.
struct SegmentPlan {
  std::vector<std::uint32_t> base_primes;              // p <= sqrt(limit + max alpha)
  std::vector<std::vector<std::uint64_t>> powers;      // powers[i][j] = base_primes[j]^{r_i}, only while <= top
};

SegmentPlan make_plan(const TupleConfig& config, std::uint64_t limit) {
  SegmentPlan plan;
  std::uint64_t top = limit + config.max_alpha();
  plan.base_primes = small_primes(static_cast<std::uint32_t>(isqrt(top)));
  plan.powers.resize(config.s());
  for (std::size_t i = 0; i < config.s(); ++i) {
    for (std::uint32_t p : plan.base_primes) {
      std::uint64_t pk = 1;
      bool fits = true;
      for (unsigned e = 0; e < config.r(i); ++e) {
        if (pk > top / p) {
          fits = false;
          break;
        }
        pk *= p;
      }
      if (!fits) break;
      plan.powers[i].push_back(pk);
    }
  }
  return plan;
}

void fill_segment(const TupleConfig& config, const SegmentPlan& plan, std::uint64_t lo, std::size_t size,
                  bool want_f, bool want_primes, std::vector<std::uint8_t>& f, std::vector<std::uint8_t>& prime) {
  const std::uint64_t hi = lo + size;  // exclusive
  if (want_f) {
    f.assign(size, 1);
    for (std::size_t i = 0; i < config.s(); ++i) {
      const std::uint64_t shift = config.alpha(i);
      const std::uint64_t start = lo + shift;
      const std::uint64_t end = hi + shift;
      for (std::uint64_t pk : plan.powers[i]) {
        if (pk >= end) break;
        std::uint64_t m = (start + pk - 1) / pk * pk;
        for (; m < end; m += pk) f[m - start] = 0;
      }
    }
  }
  if (want_primes) {
    prime.assign(size, 1);
    for (std::uint64_t n = lo; n < std::min<std::uint64_t>(hi, 2); ++n) prime[n - lo] = 0;
    for (std::uint32_t p : plan.base_primes) {
      std::uint64_t pp = std::uint64_t{p} * p;
      if (pp >= hi) break;
      std::uint64_t m = std::max(pp, (lo + p - 1) / p * p);
      for (; m < hi; m += p) prime[m - lo] = 0;
    }
  }
}

void stream_segments(const TupleConfig& config, std::uint64_t limit, const SieveOptions& opts, bool want_f,
                     bool want_primes, const std::function<void(const SegmentView&)>& visit) {
  if (opts.segment_size == 0) throw std::invalid_argument("segment size must be positive");
  if (opts.segment_size * 2 > opts.memory_budget)
    throw CapacityError("segment size " + std::to_string(opts.segment_size) + " exceeds the memory budget");
  if (limit == 0) return;
  SegmentPlan plan = make_plan(config, limit);

  unsigned threads = opts.threads != 0 ? opts.threads : std::max(1U, std::thread::hardware_concurrency());
  const std::uint64_t nsegments = (limit + opts.segment_size - 1) / opts.segment_size;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, nsegments));
  if (2.0 * threads * static_cast<double>(opts.segment_size) > static_cast<double>(opts.memory_budget))
    threads = std::max<unsigned>(1, static_cast<unsigned>(opts.memory_budget / (2 * opts.segment_size)));

  std::vector<std::vector<std::uint8_t>> f(threads), prime(threads);
  for (std::uint64_t first = 0; first < nsegments; first += threads) {
    const unsigned batch = static_cast<unsigned>(std::min<std::uint64_t>(threads, nsegments - first));
    auto bounds = [&](unsigned t) {
      std::uint64_t lo = 1 + (first + t) * opts.segment_size;
      std::size_t size = static_cast<std::size_t>(std::min<std::uint64_t>(opts.segment_size, limit + 1 - lo));
      return std::pair{lo, size};
    };
    if (batch == 1) {
      auto [lo, size] = bounds(0);
      fill_segment(config, plan, lo, size, want_f, want_primes, f[0], prime[0]);
    } else {
      std::vector<std::jthread> workers;
      for (unsigned t = 0; t < batch; ++t) {
        workers.emplace_back([&, t] {
          auto [lo, size] = bounds(t);
          fill_segment(config, plan, lo, size, want_f, want_primes, f[t], prime[t]);
        });
      }
    }
    for (unsigned t = 0; t < batch; ++t) {
      auto [lo, size] = bounds(t);
      visit(SegmentView{lo, size, want_f ? &f[t] : nullptr, want_primes ? &prime[t] : nullptr});
    }
  }
}

}  // namespace

void for_each_segment(const TupleConfig& config, std::uint64_t limit, const SieveOptions& opts,
                      const std::function<void(const SegmentView&)>& visit) {
  stream_segments(config, limit, opts, true, true, visit);
}

FIndicator sieve_f(const TupleConfig& config, std::uint64_t limit, const SieveOptions& opts) {
  if (limit + 1 > opts.memory_budget * 8)
    throw CapacityError("sieve_f: indicator for limit " + std::to_string(limit) + " exceeds the memory budget");
  FIndicator out;
  out.limit = limit;
  out.config = config;
  out.values = BitArray(limit + 1);
  stream_segments(config, limit, opts, true, false, [&](const SegmentView& seg) {
    for (std::size_t i = 0; i < seg.size; ++i)
      if ((*seg.f)[i]) out.values.set(seg.lo + i);
  });
  return out;
}

std::uint64_t prime_pi(std::uint64_t x, const SieveOptions& opts) {
  std::uint64_t count = 0;
  stream_segments(TupleConfig::make({{0, 2}}), x, opts, false, true, [&](const SegmentView& seg) {
    for (std::size_t i = 0; i < seg.size; ++i) count += (*seg.prime)[i];
  });
  return count;
}

}  // namespace limitp
