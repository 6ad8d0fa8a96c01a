#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "hecke/arith.hpp"
#include "hecke/coeff_cache.hpp"
#include "hecke/error.hpp"
#include "hecke/export.hpp"
#include "hecke/hecke_table.hpp"
#include "hecke/series.hpp"
#include "hecke/singular_series.hpp"
#include "hecke/sums.hpp"

namespace fs = std::filesystem;

namespace hecke::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::size_t kReportedShiftLimit = 10'000;

std::ofstream open_output(const fs::path& path) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path.string());
  return out;
}

void check_weight(const RunConfig& cfg) {
  if (!is_supported_weight(cfg.weight)) {
    throw UsageError("unsupported weight " + std::to_string(cfg.weight) +
                     "; level-1 cusp spaces of dimension one have weight 12, 16, 18, 20, 22 or 26");
  }
}

EigenvalueTable load_table(const RunConfig& cfg) {
  check_weight(cfg);
  const fs::path path = cfg.table_cache_path();
  if (!fs::exists(path)) {
    throw UsageError("no eigenvalue cache at " + path.string() + "; run `hecke expand --weight " +
                     std::to_string(cfg.weight) + " --n " + std::to_string(cfg.n) + "` first");
  }
  try {
    EigenvalueTable t = read_table_cache(path);
    if (t.weight != cfg.weight || t.limit != cfg.n) throw CacheError("header does not match --weight/--n");
    return t;
  } catch (const CacheError& e) {
    throw UsageError(std::string("eigenvalue cache is invalid (") + e.what() + "); rerun `hecke expand`");
  }
}

double estimate_c1f(const EigenvalueTable& table) {
  if (table.limit < 10) throw UsageError("N must be at least 10 to estimate the Rankin-Selberg constant");
  const auto grid = linear_grid(table.limit);
  return rankin_constant_empirical(table, grid).value;
}

std::string fmt(double x) { return format_double(x); }

template <typename Write>
void write_atomically(const fs::path& path, Write&& write) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write " + tmp.string());
    write(out);
  }
  fs::rename(tmp, path);
}

int cmd_expand(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  check_weight(cfg);
  if (cfg.n < 2) throw UsageError("--n must be at least 2");
  fs::create_directories(cfg.cache_dir());
  const bool want_coeffs = cfg.n <= max_int128_limit(cfg.weight);

  std::optional<FourierExpansion> cached_coeffs;
  if (want_coeffs && fs::exists(cfg.coeff_cache_path())) {
    try {
      auto e = read_coeff_cache(cfg.coeff_cache_path());
      if (e.weight == cfg.weight && e.limit() == cfg.n) cached_coeffs = std::move(e);
      else err << "warning: coefficient cache header mismatch; rebuilding\n";
    } catch (const CacheError& e) {
      err << "warning: coefficient cache rejected (" << e.what() << "); rebuilding\n";
    }
  }
  bool table_ok = false;
  if (fs::exists(cfg.table_cache_path())) {
    try {
      const auto t = read_table_cache(cfg.table_cache_path());
      table_ok = t.weight == cfg.weight && t.limit == cfg.n;
      if (!table_ok) err << "warning: eigenvalue cache header mismatch; rebuilding\n";
    } catch (const CacheError& e) {
      err << "warning: eigenvalue cache rejected (" << e.what() << "); rebuilding\n";
    }
  }

  if (table_ok && (cached_coeffs || !want_coeffs)) {
    out << "expand: cache hit for weight " << cfg.weight << ", N = " << cfg.n << "\n";
    return kSuccess;
  }

  const FourierExpansion expansion =
      cached_coeffs ? *cached_coeffs : eigenform_expansion(cfg.weight, cfg.n, cfg.threads);
  if (want_coeffs && !cached_coeffs) {
    write_atomically(cfg.coeff_cache_path(), [&](std::ostream& o) { write_coeff_cache(o, expansion); });
  } else if (!want_coeffs) {
    err << "warning: weight " << cfg.weight << " coefficients up to N = " << cfg.n
        << " can exceed 128 bits; only the eigenvalue cache is written\n";
  }
  const EigenvalueTable table = normalize(expansion);
  write_atomically(cfg.table_cache_path(), [&](std::ostream& o) { write_table_cache(o, table); });

  out << "expand: weight " << cfg.weight << ", N = " << cfg.n << ", c_2 = " << expansion[2].get_str()
      << ", max coefficient bits = " << expansion.series.max_bits() << "\n";
  if (want_coeffs) out << "  " << cfg.coeff_cache_path().string() << "\n";
  out << "  " << cfg.table_cache_path().string() << "\n";
  return kSuccess;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const EigenvalueTable table = load_table(cfg);
  const FactorSieve sieve(static_cast<std::uint32_t>(std::max<std::size_t>(table.limit, 2)));
  const auto d2 = sieve.divisor_counts();
  bool ok = true;
  auto line = [&](bool pass, const std::string& name, const std::string& detail) {
    out << (pass ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
    ok = ok && pass;
  };

  const MultiplicativityReport mult = multiplicativity_check(table, sieve);
  line(mult.witness == 0, "hecke-multiplicativity",
       "max residual " + fmt(mult.max_residual) +
           (mult.witness ? ", first violation at n = " + std::to_string(mult.witness) : std::string()));

  std::mt19937_64 rng(cfg.seed);
  double worst = 0.0;
  std::uint64_t wm = 1;
  std::uint64_t wn = 1;
  for (int i = 0; i < 10'000; ++i) {
    const std::uint64_t m = 1 + rng() % table.limit;
    const std::uint64_t n = 1 + rng() % (table.limit / m);
    const double scaled = hecke_relation_check(table, m, n) / (d2[m] * d2[n]);
    if (scaled > worst) {
      worst = scaled;
      wm = m;
      wn = n;
    }
  }
  line(worst < 1e-8, "hecke-relation-random",
       "max residual/(d(m)d(n)) " + fmt(worst) + " at (m, n) = (" + std::to_string(wm) + ", " + std::to_string(wn) + ")");

  const DeligneReport del = deligne_report(table, sieve);
  line(del.holds, "deligne-bound", "max |lambda(n)|/d(n) = " + fmt(del.max_ratio) + " at n = " + std::to_string(del.argmax));

  const std::size_t sq_limit = std::min<std::size_t>(table.limit, 100'000);
  const DivisorSumReport ds = divisor_sum_check(table, square_table(table, sq_limit));
  line(ds.max_deviation < 1e-8, "square-divisor-sum",
       "max deviation " + fmt(ds.max_deviation) + " at n = " + std::to_string(ds.witness));

  double rs_worst = 0.0;
  for (std::uint64_t q = 1; q <= 200; ++q) {
    for (std::uint64_t h = 0; h <= 200; ++h) {
      rs_worst = std::max(rs_worst, std::abs(ramanujan_sum_bruteforce(q, h) - static_cast<double>(ramanujan_sum(q, h))));
    }
  }
  const FactorSieve rs_sieve(1000);
  bool gcd_bound = true;
  for (std::uint32_t q = 1; q <= 1000 && gcd_bound; ++q) {
    for (std::uint64_t h = 1; h <= 1000; ++h) {
      if (static_cast<std::uint64_t>(std::llabs(ramanujan_sum(rs_sieve, q, h))) > gcd_u64(q, h)) {
        gcd_bound = false;
        break;
      }
    }
  }
  line(rs_worst < 1e-6 && gcd_bound, "ramanujan-sums",
       "closed form vs direct max difference " + fmt(rs_worst) + ", |c_q(h)| <= gcd(q,h) " +
           (gcd_bound ? "holds" : "violated"));

  for (std::size_t x = 1000; x <= table.limit; x *= 10) {
    const double d = prime_sum_normalization(table, sieve, x);
    out << "INFO prime-sum-normalization X = " << x << ": " << fmt(d) << "\n";
  }
  if (!ok) throw VerificationFailure("verification failed");
  return kSuccess;
}

int cmd_singular(const RunConfig& cfg, std::ostream& out) {
  const EigenvalueTable table = load_table(cfg);
  const double c1f = estimate_c1f(table);
  const std::size_t h_max = cfg.effective_h_max();
  if (h_max < 1) throw UsageError("--h-max must be positive");

  std::vector<SingularSeriesResult> results;
  std::size_t dq_rows = cfg.q_max;
  double doubling_ratio = 0.0;
  if (cfg.tol) {
    const SingularSeries series(c1f, table, cfg.q_max, 1e-13, cfg.threads);
    results.resize(h_max);
    for (std::size_t h = 1; h <= h_max; ++h) results[h - 1] = series.bh_adaptive(h, *cfg.tol);
    auto dq = open_output(cfg.out / "dq.csv");
    write_dq_csv(dq, series, dq_rows);
  } else {
    if (2 * cfg.q_max > table.limit) throw UsageError("--q-max too large for the table: need 2 q_max <= N");
    const SingularSeries series(c1f, table, 2 * cfg.q_max, 1e-13, cfg.threads);
    results = series.bh_batch(h_max, cfg.q_max, cfg.threads);
    const auto doubled = series.bh_batch(h_max, 2 * cfg.q_max, cfg.threads);
    for (std::size_t i = 0; i < h_max; ++i) {
      doubling_ratio = std::max(doubling_ratio, std::abs(doubled[i].value - results[i].value) / results[i].tail_bound);
    }
    auto dq = open_output(cfg.out / "dq.csv");
    write_dq_csv(dq, series, dq_rows);
  }
  {
    auto bh = open_output(cfg.out / "bh.csv");
    write_bh_csv(bh, results);
  }

  double mean = 0.0;
  for (const auto& r : results) mean += r.value;
  mean /= static_cast<double>(results.size());
  out << "singular: c1f = " << fmt(c1f) << ", H = " << h_max << ", q_max = " << cfg.q_max << "\n";
  out << "  mean B_h = " << fmt(mean) << ", c1f^2 = " << fmt(c1f * c1f)
      << ", relative difference = " << fmt(mean / (c1f * c1f) - 1.0) << "\n";
  if (!cfg.tol) out << "  max |B_h(2 q_max) - B_h(q_max)| / tail = " << fmt(doubling_ratio) << "\n";
  out << "  wrote " << (cfg.out / "dq.csv").string() << ", " << (cfg.out / "bh.csv").string() << "\n";
  return kSuccess;
}

int cmd_shifted(const RunConfig& cfg, std::ostream& out) {
  const EigenvalueTable table = load_table(cfg);
  const std::size_t h_max = cfg.effective_h_max();
  if (cfg.x < 1000) throw UsageError("--x must be at least 1000");
  if (h_max < 1) throw UsageError("--h-max must be positive");
  if (2 * cfg.x + h_max > table.limit) {
    throw UsageError("need 2X + H <= N, got 2X + H = " + std::to_string(2 * cfg.x + h_max) + " and N = " +
                     std::to_string(table.limit));
  }
  if (cfg.q_max > table.limit) throw UsageError("--q-max exceeds N");

  const double c1f = estimate_c1f(table);
  const SingularSeries series(c1f, table, cfg.q_max, 1e-13, cfg.threads);
  const std::size_t reported = std::min(h_max, kReportedShiftLimit);
  const auto records = shifted_sum_batch(table, cfg.x, reported, series, cfg.q_max, cfg.threads);
  const ErrorReport report = error_statistics(records, default_thresholds(cfg.x));
  const double total = shifted_sum_total(table, cfg.x, h_max);
  const double main_term = c1f * c1f * static_cast<double>(h_max) * static_cast<double>(cfg.x);

  {
    auto csv = open_output(cfg.out / "shifted.csv");
    write_shifted_csv(csv, records);
    auto json = open_output(cfg.out / "report.json");
    write_report_json(json, report, h_max);
    auto plt = open_output(cfg.out / "shifted_error.plt");
    write_error_plot_script(plt, "shifted.csv", "shifted_error.png");
  }
  out << "shifted: X = " << cfg.x << ", H = " << h_max << ", h reported 1.." << reported << "\n";
  out << "  median |S/X - B_h| = " << fmt(median_abs_error(records)) << ", L1 average = " << fmt(report.l1_average)
      << "\n";
  out << "  sum_{h<=H} S(X,h) / (c1f^2 H X) - 1 = " << fmt(total / main_term - 1.0) << "\n";
  const ShiuReport shiu = shiu_envelope_check(records);
  out << "  max S/(X (log log(h+16))^16) = " << fmt(shiu.max_ratio) << " at h = " << shiu.witness_h << "\n";
  return kSuccess;
}

int cmd_expsum(const RunConfig& cfg, std::ostream& out) {
  const EigenvalueTable table = load_table(cfg);
  std::vector<std::size_t> ladder;
  for (unsigned k = 10; k <= 17; ++k) {
    const std::size_t x = std::size_t{1} << k;
    if (2 * x <= table.limit) ladder.push_back(x);
  }
  if (ladder.size() < 2) throw UsageError("expsum needs N >= 4096 for a two-point X ladder");
  const SquareTable square = square_table(table, ladder.back());
  const auto alphas = alpha_set(cfg.seed);

  auto csv = open_output(cfg.out / "expsum.csv");
  write_expsum_header(csv);
  std::vector<double> xs;
  std::vector<double> max_abs;
  for (std::size_t x : ladder) {
    write_expsum_rows(csv, exp_sum_batch(table, alphas, x, cfg.threads));
    const auto miller = miller_sum_batch(square, alphas, x, cfg.threads);
    write_expsum_rows(csv, miller);
    double best = 0.0;
    for (const auto& s : miller) best = std::max(best, std::abs(s.value));
    xs.push_back(static_cast<double>(x));
    max_abs.push_back(best);
  }
  const SlopeFit fit = log_log_slope(xs, max_abs);

  nlohmann::ordered_json summary;
  summary["ladder"] = ladder;
  summary["miller_max_abs"] = max_abs;
  summary["miller_slope"] = fit.slope;
  auto js = open_output(cfg.out / "expsum_summary.json");
  js << summary.dump(2) << "\n";

  out << "expsum: " << alphas.size() << " alphas, X ladder " << ladder.front() << ".." << ladder.back() << "\n";
  out << "  Miller growth exponent = " << fmt(fit.slope) << " (bound 3/4 + eps)\n";
  return kSuccess;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  const EigenvalueTable table = load_table(cfg);
  const FactorSieve sieve(static_cast<std::uint32_t>(std::max<std::size_t>(table.limit, 2)));
  out << "report: weight " << table.weight << ", N = " << table.limit << "\n";
  for (std::size_t n = 1; n <= std::min<std::size_t>(table.limit, 5); ++n) {
    out << "  lambda(" << n << ") = " << fmt(table.values[n]) << "\n";
  }
  const DeligneReport del = deligne_report(table, sieve);
  out << "  Deligne ratio max = " << fmt(del.max_ratio) << " at n = " << del.argmax << "\n";
  if (table.limit >= 10) {
    const auto grid = linear_grid(table.limit);
    const ConstantEstimate emp = rankin_constant_empirical(table, grid);
    out << "  c1f (regression) = " << fmt(emp.value) << " +- " << fmt(emp.uncertainty) << "\n";
  }
  if (table.limit >= 1000) {
    const ConstantEstimate eu = rankin_constant_euler(table, table.limit);
    out << "  c1f (Euler product, P = N) = " << fmt(eu.value) << " +- " << fmt(eu.uncertainty) << "\n";
  }
  return kSuccess;
}

}  // namespace

std::size_t RunConfig::effective_h_max() const {
  if (h_max) return *h_max;
  return static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(x), 0.75)));
}

fs::path RunConfig::cache_dir() const {
  if (cache) return *cache;
  if (const char* env = std::getenv("HECKE_CACHE_DIR"); env && *env) return env;
  return "cache";
}

fs::path RunConfig::coeff_cache_path() const {
  return cache_dir() / ("qexp_w" + std::to_string(weight) + "_n" + std::to_string(n) + ".bin");
}

fs::path RunConfig::table_cache_path() const {
  return cache_dir() / ("lambda_w" + std::to_string(weight) + "_n" + std::to_string(n) + ".bin");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Hecke eigenvalues, singular series and shifted convolution experiments"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string cache_flag;
  std::string out_flag;
  std::size_t h_max = 0;
  double tol = 0.0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--weight", cfg.weight, "eigenform weight (12, 16, 18, 20, 22, 26)");
    sub->add_option("--n", cfg.n, "expansion length N");
    sub->add_option("--x", cfg.x, "window start X");
    sub->add_option("--h-max", h_max, "largest shift H (default floor(X^0.75))");
    sub->add_option("--q-max", cfg.q_max, "singular series truncation");
    sub->add_option("--tol", tol, "adaptive B_h tail tolerance");
    sub->add_option("--out", out_flag, "output directory");
    sub->add_option("--cache", cache_flag, "cache directory (else $HECKE_CACHE_DIR, else ./cache)");
    sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for random alpha sampling and random Hecke pairs");
  };
  auto* expand = app.add_subcommand("expand", "build and cache the q-expansion and eigenvalue table");
  auto* verify = app.add_subcommand("verify", "check Hecke relations, Deligne bound and Ramanujan sums");
  auto* singular = app.add_subcommand("singular", "write D_q and B_h with tail bounds");
  auto* shifted = app.add_subcommand("shifted", "shifted convolution sums against B_h X");
  auto* expsum = app.add_subcommand("expsum", "exponential sums and the Miller exponent");
  auto* report = app.add_subcommand("report", "summarize a cached table");
  for (auto* sub : {expand, verify, singular, shifted, expsum, report}) add_common(sub);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }
  if (!cache_flag.empty()) cfg.cache = cache_flag;
  if (!out_flag.empty()) cfg.out = out_flag;
  for (auto* sub : {expand, verify, singular, shifted, expsum, report}) {
    if (sub->count("--h-max")) cfg.h_max = h_max;
    if (sub->count("--tol")) {
      if (!(tol > 0.0)) {
        err << "error: --tol must be positive\n";
        return kUsageError;
      }
      cfg.tol = tol;
    }
  }

  try {
    if (*expand) return cmd_expand(cfg, out, err);
    if (*verify) return cmd_verify(cfg, out);
    if (*singular) return cmd_singular(cfg, out);
    if (*shifted) return cmd_shifted(cfg, out);
    if (*expsum) return cmd_expsum(cfg, out);
    if (*report) return cmd_report(cfg, out);
  } catch (const VerificationFailure& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailure;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ConfigurationError& e) {
    err << "error: " << e.what() << " (raise --q-max or loosen --tol)\n";
    return kUsageError;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternalError;
  }
  return kUsageError;
}

}  // namespace hecke::cli
