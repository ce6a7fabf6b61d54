#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace owl::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 1;
inline constexpr int kRuntimeFailure = 2;

struct ProjectOptions {
  std::string input_path;
  std::string weights_spec;  // explicit weight file, or "oscar:MU1,MU2"
  double epsilon = 0.0;
  std::string output_path;
};

struct BenchOptions {
  std::vector<std::size_t> lengths{1000, 10000};
  std::vector<double> densities{1.0, 0.1};
  std::size_t runs = 5;
  std::uint64_t seed = 1;
  std::string out_path;  // empty: CSV to stdout
  bool parallel = false;
};

struct RegressOptions {
  std::size_t d = 1;
  std::string solver = "fbs";  // fbs | fista | drs
  std::size_t iters = 100;
  std::uint64_t seed = 1;
  std::string out_path;  // empty: CSV to stdout
  double step = 0.0;     // 0: derived default; for drs this is the penalty
  double mu1 = 1e-3;
  double mu2 = 1e-5;
  double noise_variance = 0.01;
};

struct GenOptions {
  std::size_t d = 1;
  std::uint64_t seed = 1;
  std::string out_prefix;
  double mu1 = 1e-3;
  double mu2 = 1e-5;
  double noise_variance = 0.01;
};

// Each runs one subcommand end to end, writing human output to `out` and
// diagnostics to `err`, and returns one of the exit codes above. Exceptions
// never escape.
int run_project(const ProjectOptions& opt, std::ostream& out, std::ostream& err);
int run_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err);
int run_regress(const RegressOptions& opt, std::ostream& out, std::ostream& err);
int run_gen(const GenOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace owl::cli
