#include "limitp/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "limitp/global.hpp"
#include "limitp/local.hpp"

namespace limitp {

namespace {

// Plain integers, or integer-valued scientific notation such as 1e7.
std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  const char* end = text.data() + text.size();
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec == std::errc() && ptr == end) return v;
  double d = 0;
  auto [dptr, dec] = std::from_chars(text.data(), end, d);
  if (dec == std::errc() && dptr == end && d >= 0 && d < 0x1p63 && d == std::floor(d))
    return static_cast<std::uint64_t>(d);
  throw std::invalid_argument(key + ": expected a non-negative integer, got '" + text + "'");
}

ShiftPair parse_pair(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("pair '" + text + "' is not of the form alpha:r");
  const std::string a = text.substr(0, colon), r = text.substr(colon + 1);
  if (!a.empty() && a.front() == '-') throw std::invalid_argument("alpha must be non-negative in pair '" + text + "'");
  ShiftPair p;
  p.alpha = parse_u64("alpha", a);
  const std::uint64_t rv = parse_u64("r", r);
  if (rv < 2) throw std::invalid_argument("r must exceed 1 in pair '" + text + "'");
  if (rv > 64) throw std::invalid_argument("r too large in pair '" + text + "'");
  p.r = static_cast<unsigned>(rv);
  return p;
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw std::invalid_argument("format must be csv or json, got '" + s + "'");
}

std::map<std::string, std::vector<std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  std::map<std::string, std::vector<std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
    out[trim(line.substr(0, eq))].push_back(trim(line.substr(eq + 1)));
  }
  return out;
}

}  // namespace

RunConfig parse_config(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Constants and empirical checks for shifted k-free tuples on primes", "limitp"};
  std::vector<std::string> pairs;
  std::string format = "csv", config_file;
  unsigned threads = 0;
  std::size_t segment = 0;

  app.add_option("command", cfg.command, "Command to run")->check(CLI::IsMember(kCommands));
  app.add_option("--pair", pairs, "Tuple factor alpha:r (repeatable)");
  app.add_option_function<std::string>("-x", [&](const std::string& v) { cfg.x = parse_u64("x", v); }, "Sample limit")->type_name("UINT");
  app.add_option_function<std::string>("-q", [&](const std::string& v) { cfg.q = parse_u64("q", v); }, "Modulus (residue)")->type_name("UINT");
  app.add_option("-b", cfg.b, "Residue class (residue; default all)");
  app.add_option_function<std::string>("-Q", [&](const std::string& v) { cfg.Q = parse_u64("Q", v); }, "Series / BDH cutoff")->type_name("UINT");
  app.add_option_function<std::string>("-P", [&](const std::string& v) { cfg.P = parse_u64("P", v); }, "Euler product prime cutoff")->type_name("UINT");
  app.add_option_function<std::string>("--pmax", [&](const std::string& v) { cfg.pmax = parse_u64("pmax", v); }, "Largest prime listed by 'local'")->type_name("UINT");
  app.add_option("-k", cfg.k, "Power for approx");
  app.add_option_function<std::string>("-y", [&](const std::string& v) { cfg.y = parse_u64("y", v); }, "Sieving bound for approx")->type_name("UINT");
  app.add_option("--format", format, "csv or json");
  app.add_option("-o,--output", cfg.output, "Output path ('-' for stdout)");
  app.add_option("--threads", threads, "Sieve threads (0: all cores)");
  app.add_option("--segment-size", segment, "Sieve segment size (overrides LIMITP_SEGMENT_SIZE)");
  app.add_option("--config", config_file, "key=value config file");

  const std::string usage = app.help();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(usage);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what(), usage);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what(), usage);
  }

  try {
    if (!config_file.empty()) {
      const auto file = read_config_file(config_file);
      auto unset = [&](const char* flag) { return app.count(flag) == 0; };
      for (const auto& [key, values] : file) {
        const std::string& v = values.back();
        if (key == "pair") {
          if (pairs.empty()) pairs = values;
        } else if (key == "command") {
          if (cfg.command.empty()) cfg.command = v;
        } else if (key == "x") {
          if (unset("-x")) cfg.x = parse_u64(key, v);
        } else if (key == "q") {
          if (unset("-q")) cfg.q = parse_u64(key, v);
        } else if (key == "b") {
          if (unset("-b")) cfg.b = static_cast<std::int64_t>(parse_u64(key, v));
        } else if (key == "Q") {
          if (unset("-Q")) cfg.Q = parse_u64(key, v);
          cfg.series_requested = true;
        } else if (key == "P") {
          if (unset("-P")) cfg.P = parse_u64(key, v);
        } else if (key == "pmax") {
          if (unset("--pmax")) cfg.pmax = parse_u64(key, v);
        } else if (key == "k") {
          if (unset("-k")) cfg.k = static_cast<unsigned>(parse_u64(key, v));
        } else if (key == "y") {
          if (unset("-y")) cfg.y = parse_u64(key, v);
        } else if (key == "format") {
          if (unset("--format")) format = v;
        } else if (key == "output") {
          if (unset("--output")) cfg.output = v;
        } else if (key == "threads") {
          if (unset("--threads")) threads = static_cast<unsigned>(parse_u64(key, v));
        } else if (key == "segment-size") {
          if (unset("--segment-size")) segment = parse_u64(key, v);
        } else {
          throw std::invalid_argument("unknown config key '" + key + "'");
        }
      }
    }
    if (app.count("-Q") != 0) cfg.series_requested = true;
    if (cfg.command.empty()) throw std::invalid_argument("a command is required");
    if (std::find(kCommands.begin(), kCommands.end(), cfg.command) == kCommands.end())
      throw std::invalid_argument("unknown command '" + cfg.command + "'");
    if (pairs.empty()) throw std::invalid_argument("at least one --pair alpha:r is required");
    std::vector<ShiftPair> parsed;
    for (const auto& p : pairs) parsed.push_back(parse_pair(p));
    cfg.tuple = TupleConfig::make(std::move(parsed));
    cfg.format = parse_format(format);
    if (cfg.x == 0 || cfg.q == 0 || cfg.Q == 0 || cfg.P == 0 || cfg.pmax == 0 || cfg.y == 0)
      throw std::invalid_argument("cutoffs must be positive");
    if (cfg.k < 2) throw std::invalid_argument("k must exceed 1");
    cfg.sieve = SieveOptions::from_environment();
    if (segment != 0) cfg.sieve.segment_size = segment;
    cfg.sieve.threads = threads;
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what(), usage);
  }
  return cfg;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string rational_text(const Rational& q) { return q.get_str(); }

EmpiricalReport product_row(const char* label, const TupleConfig& t, const EulerProductValue& v) {
  EmpiricalReport r = make_report(v.truncation_P, static_cast<double>(v.value), kNaN,
                                  static_cast<double>(v.tail_bound),
                                  std::string(label) + " f=" + t.to_string() +
                                      (v.exact_zero ? " exact_zero_at_p=" + std::to_string(v.zero_witness) : ""));
  return r;
}

void require_nonempty(const TupleConfig& t) {
  const Admissibility adm = admissible(t);
  if (!adm.nonempty)
    throw InadmissibleError("tuple " + t.to_string() + " is not admissible: D(p) = p^{r_s} at p = " +
                            std::to_string(adm.nonempty_witness));
}

}  // namespace

std::vector<EmpiricalReport> run_command(const RunConfig& cfg) {
  const TupleConfig& t = cfg.tuple;
  std::vector<EmpiricalReport> rows;
  const std::string& cmd = cfg.command;

  if (cmd == "constant") {
    const EulerProductValue cf = constant_cf(t, cfg.P);
    rows.push_back(product_row("constant_cf", t, cf));
    if (cfg.series_requested) {
      const EulerProductValue d = density_frak_D(t, cfg.P);
      const double series = static_cast<double>(cf_series_partial(cfg.Q, t, d.value));
      rows.push_back(make_report(cfg.Q, series, static_cast<double>(cf.value), static_cast<double>(cf.tail_bound),
                                 "cf_series Q=" + std::to_string(cfg.Q) + " f=" + t.to_string()));
    }
  } else if (cmd == "density") {
    rows.push_back(product_row("density", t, density_frak_D(t, cfg.P)));
  } else if (cmd == "local") {
    for (std::uint32_t p : small_primes(static_cast<std::uint32_t>(cfg.pmax))) {
      const LocalPrimeData d = local_data(p, t);
      const i128 top = checked_pow(p, t.r_max());
      const i128 phi_top = top / p * (p - 1);
      std::string notes = "local p=" + std::to_string(p) + " D=" + to_string(d.D) + " Dstar=" + to_string(d.Dstar) +
                          " z=" + (d.z_p ? rational_text(*d.z_p) : std::string("undefined")) + " H=";
      for (std::size_t l = 0; l < d.H_frak.size(); ++l) notes += (l ? "|" : "") + rational_text(d.H_frak[l]);
      EmpiricalReport r = make_report(p, static_cast<double>(d.D) / static_cast<double>(top),
                                      static_cast<double>(d.Dstar) / static_cast<double>(phi_top), 0.0, notes);
      r.ratio = kNaN;
      rows.push_back(std::move(r));
    }
  } else if (cmd == "singular") {
    require_nonempty(t);
    const EulerProductValue d = density_frak_D(t, cfg.P);
    const SingularSeriesPartial s = singular_partial(cfg.Q, t, d.value);
    rows.push_back(make_report(cfg.Q, static_cast<double>(s.partial_sum), static_cast<double>(s.target),
                               static_cast<double>(d.tail_bound), "singular_partial f=" + t.to_string()));
  } else if (cmd == "verify") {
    const PrimeSumResult ps = prime_sum_f(t, cfg.x, cfg.P, cfg.sieve);
    rows.push_back(ps.by_log);
    rows.push_back(ps.by_pi);
    rows.push_back(mean_sum_f(t, cfg.x, cfg.P, cfg.sieve).report);
  } else if (cmd == "residue") {
    require_nonempty(t);
    const FIndicator f = sieve_f(t, cfg.x, cfg.sieve);
    const EulerProductValue d = density_frak_D(t, cfg.P);
    const std::uint64_t first = cfg.b < 0 ? 0 : static_cast<std::uint64_t>(cfg.b) % cfg.q;
    const std::uint64_t last = cfg.b < 0 ? cfg.q - 1 : first;
    for (std::uint64_t b = first; b <= last; ++b) {
      const ErrorTermSample e = residue_error(f, cfg.x, cfg.q, b, d.value);
      std::ostringstream notes;
      notes.precision(12);
      notes << "residue q=" << cfg.q << " b=" << b << " E=" << e.E;
      rows.push_back(make_report(cfg.x, static_cast<double>(e.count), static_cast<double>(e.count) - e.E,
                                 static_cast<double>(d.tail_bound), notes.str()));
    }
    rows.push_back(mean_f_ramanujan(t, cfg.q, cfg.x, cfg.P, cfg.sieve));
  } else if (cmd == "bdh") {
    require_nonempty(t);
    const BdhResult r = bdh_quadratic_mean(t, cfg.x, cfg.Q, cfg.P, cfg.sieve);
    const double qx = static_cast<double>(cfg.Q) * static_cast<double>(cfg.x);
    rows.push_back(make_report(cfg.x, r.weighted, qx, 0.0,
                               "bdh convention=weighted Q=" + std::to_string(cfg.Q) + " f=" + t.to_string()));
    rows.push_back(make_report(cfg.x, r.plain, qx, 0.0,
                               "bdh convention=plain Q=" + std::to_string(cfg.Q) + " f=" + t.to_string()));
  } else if (cmd == "dft-check") {
    rows.push_back(dft_circle_identity(t, cfg.x));
  } else if (cmd == "approx") {
    rows.push_back(mu_k_approx(cfg.k, cfg.y, cfg.x, std::min<std::uint64_t>(cfg.x, 100'000), cfg.sieve).report);
  }
  return rows;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e) != nullptr) return kExitUsage;
  if (dynamic_cast<const CapacityError*>(&e) != nullptr) return kExitCapacity;
  if (dynamic_cast<const OverflowError*>(&e) != nullptr) return kExitCapacity;
  if (dynamic_cast<const InadmissibleError*>(&e) != nullptr) return kExitInadmissible;
  if (dynamic_cast<const std::invalid_argument*>(&e) != nullptr) return kExitUsage;
  return kExitEmptyReport;
}

}  // namespace limitp
