#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace unitfrac::cli {

enum class Subcommand { Census, Bound, Rate, Optimize, Mc, Compare, Threshold };
enum class OutputFormat { Table, Csv, Json };

struct RunConfig {
  Subcommand subcommand = Subcommand::Census;
  unsigned n = 0;  // n, or n_max for threshold
  std::optional<unsigned> m;
  std::string method = "auto";   // census
  std::string variant = "best";  // bound
  double c = 0.0;                // rate
  double lo = 1e-4;              // optimize
  double hi = 0.124;
  double tol = 1e-10;
  std::optional<double> t;  // mc; defaults to H_n - 2
  std::uint64_t trials = 100000;
  std::optional<std::uint64_t> seed;
  double target = 0.93;  // threshold
  unsigned threads = 1;  // 0 = auto
  OutputFormat format = OutputFormat::Table;
  std::optional<std::string> output;
};

inline constexpr std::uint64_t kDefaultSeed = 1;

/// Exit status: 0 success, 1 domain/capacity error, 2 usage error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (without the program name) and runs it.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unitfrac::cli
