#include "unitfrac/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "unitfrac/bounds.hpp"
#include "unitfrac/census.hpp"
#include "unitfrac/errors.hpp"
#include "unitfrac/montecarlo.hpp"
#include "unitfrac/numerics.hpp"

namespace unitfrac::cli {

namespace {

using Json = nlohmann::ordered_json;

// Text cells carry big integers as decimal strings.
using Cell = std::variant<std::monostate, std::string, double, std::int64_t, bool>;

struct Report {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  Json meta = Json::object();
};

std::string format_double(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string cell_text(const Cell& c, int digits) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v, digits);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return std::to_string(v);
        }
      },
      c);
}

Json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          return std::isfinite(v) ? Json(v) : Json(nullptr);
        } else {
          return Json(v);
        }
      },
      c);
}

void emit(const Report& r, OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::Json: {
      Json doc = Json::object();
      doc["command"] = r.command;
      for (const auto& [k, v] : r.meta.items()) doc[k] = v;
      Json rows = Json::array();
      for (const auto& row : r.rows) {
        Json obj = Json::object();
        for (std::size_t k = 0; k < r.columns.size(); ++k) obj[r.columns[k]] = cell_json(row[k]);
        rows.push_back(std::move(obj));
      }
      doc["rows"] = std::move(rows);
      out << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::Csv: {
      for (std::size_t k = 0; k < r.columns.size(); ++k) out << (k ? "," : "") << r.columns[k];
      out << '\n';
      for (const auto& row : r.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << cell_text(row[k], 17);
        out << '\n';
      }
      break;
    }
    case OutputFormat::Table: {
      std::vector<std::size_t> width(r.columns.size());
      std::vector<std::vector<std::string>> text;
      for (std::size_t k = 0; k < r.columns.size(); ++k) width[k] = r.columns[k].size();
      for (const auto& row : r.rows) {
        auto& line = text.emplace_back();
        for (std::size_t k = 0; k < row.size(); ++k) {
          line.push_back(cell_text(row[k], 10));
          width[k] = std::max(width[k], line.back().size());
        }
      }
      auto print_line = [&](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
          out << (k ? "  " : "") << std::setw(static_cast<int>(width[k])) << cells[k];
        }
        out << '\n';
      };
      print_line(r.columns);
      for (const auto& line : text) print_line(line);
      for (const auto& [k, v] : r.meta.items()) out << "# " << k << ": " << v.dump() << '\n';
      break;
    }
  }
}

double log2_big(const BigInt& v) {
  if (v <= 0) return -std::numeric_limits<double>::infinity();
  const auto top = static_cast<long>(boost::multiprecision::msb(v));
  const long shift = std::max(0L, top - 62);
  const double mantissa = static_cast<BigInt>(v >> shift).convert_to<double>();
  return std::log2(mantissa) + static_cast<double>(shift);
}

double millis(double seconds) { return std::round(seconds * 1000.0) / 1000.0; }

CensusResult run_census(unsigned n, const std::string& method, unsigned threads) {
  const CensusOptions opts{threads, MitmArithmetic::Auto};
  if (method == "auto") return count_auto(n, opts);
  if (method == "brute") return count_bruteforce(n, opts);
  if (method == "mitm") return count_mitm(n, opts);
  return count_signwalk(n, opts);
}

Report census_report(const RunConfig& cfg) {
  const CensusResult res = run_census(cfg.n, cfg.method, cfg.threads);
  Report r{"census",
           {"n", "count_le_one", "count_eq_one", "count_le_one_excluding_empty", "method", "seconds"},
           {}};
  r.rows.push_back({std::int64_t{res.n}, res.count_le_one.str(), res.count_eq_one.str(),
                    BigInt(res.count_le_one - 1).str(), std::string(to_string(res.method)),
                    millis(res.elapsed_seconds)});
  return r;
}

std::vector<Cell> bound_row(const BoundReport& b) {
  return {std::int64_t{b.params.n}, std::int64_t{b.params.m}, b.params.t, b.params.x,
          std::string(to_string(b.variant)), b.log2_prob_bound, b.log2_count_bound, b.bits_per_n};
}

Report bound_report(const RunConfig& cfg) {
  Report r{"bound", {"n", "m", "t", "x", "variant", "log2_prob_bound", "log2_count_bound", "bits_per_n"}, {}};
  if (!cfg.m) {
    if (cfg.variant != "best") throw DomainError("bound: --variant " + cfg.variant + " needs --m");
    r.rows.push_back(bound_row(best_finite_bound(cfg.n)));
    return r;
  }
  const unsigned m = *cfg.m;
  const ChernoffParams p = canonical_params(cfg.n, m);
  const bool all = cfg.variant == "all" || cfg.variant == "best";
  if (all || cfg.variant == "exact") r.rows.push_back(bound_row(tail_bound_log2(p, BoundVariant::ExactCosh)));
  if (all || cfg.variant == "lemma") r.rows.push_back(bound_row(tail_bound_log2(p, BoundVariant::Lemma)));
  if (all || cfg.variant == "optimized") r.rows.push_back(bound_row(optimized_bound_log2(cfg.n, m)));
  return r;
}

Report rate_report(const RunConfig& cfg) {
  const double f = rate_function(cfg.c);
  Report r{"rate", {"c", "f", "bits_per_n"}, {}};
  r.rows.push_back({cfg.c, f, bits_per_n_asymptotic(f)});
  return r;
}

Report optimize_report(const RunConfig& cfg) {
  const RateMinimum opt = minimize_rate(cfg.lo, cfg.hi, cfg.tol);
  Report r{"optimize", {"c_star", "f_star", "bits_per_n", "bracket_lo", "bracket_hi", "unimodal"}, {}};
  r.rows.push_back({opt.c_star, opt.f_star, bits_per_n_asymptotic(opt.f_star), opt.bracket_lo, opt.bracket_hi,
                    opt.unimodal});
  return r;
}

std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("REPRO_SEED")) {
    try {
      return std::stoull(env, nullptr, 0);
    } catch (const std::exception&) {
      throw DomainError(std::string("REPRO_SEED is not an unsigned integer: ") + env);
    }
  }
  return kDefaultSeed;
}

McEstimate run_mc(const RunConfig& cfg) {
  if (cfg.n == 0) throw DomainError("mc: n must be >= 1");
  const double t = cfg.t ? *cfg.t : harmonic_float(cfg.n) - 2.0;
  return estimate_tail(cfg.n, t, cfg.trials, resolve_seed(cfg), cfg.threads);
}

Report mc_report(const RunConfig& cfg) {
  const McEstimate e = run_mc(cfg);
  Report r{"mc", {"n", "t", "trials", "hits", "p_hat", "ci_halfwidth", "seed"}, {}};
  r.rows.push_back({std::int64_t{e.n}, e.t, static_cast<std::int64_t>(e.trials), static_cast<std::int64_t>(e.hits),
                    e.p_hat, e.ci_halfwidth, std::to_string(e.seed)});
  return r;
}

Report compare_report(const RunConfig& cfg) {
  const unsigned n = cfg.n;
  if (n == 0) throw DomainError("compare: n must be >= 1");
  Report r{"compare",
           {"n", "trivial_lower_bound", "log2_trivial_lower_bound", "count_le_one", "log2_count_le_one",
            "log2_count_bound", "bits_per_n", "mc_p_hat", "log2_mc_count", "consistent"},
           {}};
  const BigInt lower = trivial_lower_bound(n);
  std::vector<Cell> row{std::int64_t{n}, lower.str(), log2_big(lower)};

  std::optional<BigInt> count;
  if (n <= kMitmMaxN) {
    count = count_auto(n, CensusOptions{cfg.threads, MitmArithmetic::Auto}).count_le_one;
    row.emplace_back(count->str());
    row.emplace_back(log2_big(*count));
  } else {
    row.emplace_back(std::monostate{});
    row.emplace_back(std::monostate{});
  }

  std::optional<double> log2_bound;
  if (n >= kMinBoundN) {
    const BoundReport b = best_finite_bound(n);
    log2_bound = b.log2_count_bound;
    row.emplace_back(b.log2_count_bound);
    row.emplace_back(b.bits_per_n);
  } else {
    row.emplace_back(std::monostate{});
    row.emplace_back(std::monostate{});
  }

  const McEstimate e = run_mc(cfg);
  row.emplace_back(e.p_hat);
  row.emplace_back(e.hits ? Cell{static_cast<double>(n) + std::log2(e.p_hat)} : Cell{std::monostate{}});

  bool consistent = true;
  if (count) {
    consistent = lower <= *count;
    if (log2_bound) consistent = consistent && log2_big(*count) <= *log2_bound;
  } else if (log2_bound) {
    consistent = log2_big(lower) <= *log2_bound;
  }
  row.emplace_back(consistent);
  r.rows.push_back(std::move(row));
  return r;
}

Report threshold_table(const RunConfig& cfg) {
  const ThresholdReport t = threshold_report(cfg.n, cfg.threads, cfg.target);
  Report r{"threshold", {"n", "bits_per_n", "below_target"}, {}};
  for (const auto& row : t.rows) r.rows.push_back({std::int64_t{row.n}, row.bits_per_n, row.bits_per_n <= t.target});
  r.meta["target"] = t.target;
  r.meta["crossing_n"] = t.crossing_n ? Json(*t.crossing_n) : Json(nullptr);
  r.meta["monotonicity_violations"] = t.monotonicity_violations;
  return r;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Report report;
    switch (config.subcommand) {
      case Subcommand::Census: report = census_report(config); break;
      case Subcommand::Bound: report = bound_report(config); break;
      case Subcommand::Rate: report = rate_report(config); break;
      case Subcommand::Optimize: report = optimize_report(config); break;
      case Subcommand::Mc: report = mc_report(config); break;
      case Subcommand::Compare: report = compare_report(config); break;
      case Subcommand::Threshold: report = threshold_table(config); break;
    }
    if (config.output) {
      std::ofstream file(*config.output);
      if (!file) {
        err << "error: cannot open " << *config.output << " for writing\n";
        return 1;
      }
      emit(report, config.format, file);
    } else {
      emit(report, config.format, out);
    }
    return 0;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return 1;
  }
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counting and bounding subsets of {1..n} with reciprocal sum <= 1", "unitfrac"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;

  const std::map<std::string, OutputFormat> formats{
      {"table", OutputFormat::Table}, {"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}};
  app.add_option("--format", cfg.format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("-o,--output", cfg.output, "Write the report to this file");
  app.add_option("--threads", cfg.threads, "Worker threads (0 = auto)");

  auto* census = app.add_subcommand("census", "Exact counts for {1..n}");
  census->add_option("n", cfg.n)->required();
  census->add_option("--method", cfg.method)->check(CLI::IsMember({"auto", "brute", "mitm", "signwalk"}));

  auto* bound = app.add_subcommand("bound", "Chernoff upper bound on the count");
  bound->add_option("n", cfg.n)->required();
  bound->add_option("--m", cfg.m, "Split index (canonical params at this m)");
  bound->add_option("--variant", cfg.variant)->check(CLI::IsMember({"best", "exact", "lemma", "optimized", "all"}));

  auto* rate = app.add_subcommand("rate", "Asymptotic rate function f(c)");
  rate->add_option("c", cfg.c)->required();

  auto* optimize = app.add_subcommand("optimize", "Minimize f(c) over (lo, hi)");
  optimize->add_option("--lo", cfg.lo);
  optimize->add_option("--hi", cfg.hi);
  optimize->add_option("--tol", cfg.tol);

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of P(sum eps_i / i >= t)");
  mc->add_option("n", cfg.n)->required();
  mc->add_option("--t", cfg.t, "Threshold (default H_n - 2)");
  mc->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
  mc->add_option("--seed", cfg.seed, "Seed (default: $REPRO_SEED, else 1)");

  auto* compare = app.add_subcommand("compare", "Census, bound, lower bound and Monte Carlo side by side");
  compare->add_option("n", cfg.n)->required();
  compare->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
  compare->add_option("--seed", cfg.seed);

  auto* threshold = app.add_subcommand("threshold", "bits_per_n of the best bound for n = 19..n_max");
  threshold->add_option("n_max", cfg.n)->required();
  threshold->add_option("--target", cfg.target);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
    return 2;
  }

  const std::map<CLI::App*, Subcommand> kinds{
      {census, Subcommand::Census}, {bound, Subcommand::Bound},     {rate, Subcommand::Rate},
      {optimize, Subcommand::Optimize}, {mc, Subcommand::Mc},       {compare, Subcommand::Compare},
      {threshold, Subcommand::Threshold}};
  cfg.subcommand = kinds.at(app.get_subcommands().front());
  return run(cfg, out, err);
}

}  // namespace unitfrac::cli
