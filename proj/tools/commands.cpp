#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <new>
#include <ostream>
#include <sstream>
#include <string_view>
#include <thread>

#include "owl/errors.hpp"
#include "owl/norms.hpp"
#include "owl/projection.hpp"
#include "owl/solvers.hpp"
#include "owl/synthetic.hpp"
#include "owl/vector_io.hpp"

namespace owl::cli {

namespace {

// Maps every failure onto the exit-code contract; nothing escapes to main.
template <typename Fn>
int guarded(Fn&& fn, std::ostream& err) {
  try {
    fn();
    return kOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory; the regression matrix is dense (1000d x 1000d "
           "doubles), try a smaller --d\n";
    return kRuntimeFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

WeightVector weights_from_spec(const std::string& spec, std::size_t n) {
  constexpr std::string_view prefix = "oscar:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string body = spec.substr(prefix.size());
    const auto comma = body.find(',');
    if (comma == std::string::npos)
      throw ParseError("weights spec '" + spec + "': expected oscar:MU1,MU2");
    char* end = nullptr;
    const std::string first = body.substr(0, comma), second = body.substr(comma + 1);
    const double mu1 = std::strtod(first.c_str(), &end);
    if (end != first.c_str() + first.size() || first.empty())
      throw ParseError("weights spec '" + spec + "': bad MU1");
    const double mu2 = std::strtod(second.c_str(), &end);
    if (end != second.c_str() + second.size() || second.empty())
      throw ParseError("weights spec '" + spec + "': bad MU2");
    return oscar_weights({mu1, mu2, n});
  }
  WeightVector w = validate_weights(read_vector_file(spec));
  if (w.size() != n)
    throw DimensionMismatch("weight file " + spec + " has " + std::to_string(w.size()) +
                            " entries, input has " + std::to_string(n));
  return w;
}

void write_csv(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream file(path);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << content;
  if (!file.flush()) throw IoError("write to " + path + " failed");
}

unsigned thread_cap(bool parallel) {
  if (!parallel) return 1;
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("OWL_THREADS")) {
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && parsed >= 1)
      cap = std::min<unsigned long>(cap, parsed);
  }
  return cap;
}

}  // namespace

int run_project(const ProjectOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const std::vector<double> z = read_vector_file(opt.input_path);
        OwlBall ball(weights_from_spec(opt.weights_spec, z.size()), opt.epsilon);
        const ProjectionResult res = project_owl_ball(z, ball);
        if (!opt.output_path.empty())
          write_vector_file(opt.output_path, res.x_star, "projection of " + opt.input_path);

        out << std::setprecision(17);
        out << "n: " << z.size() << '\n';
        out << "omega: " << eval_owl_norm(res.x_star, ball.weights) << '\n';
        out << "lambda: " << res.lambda_star << '\n';
        out << "outer loops: " << res.outer_loops << '\n';
        if (res.branch_trace.size() == 1 && res.branch_trace[0] == Branch::Feasible) {
          out << "feasible: returned unchanged\n";
          return;
        }
        out << "branches: ";
        for (std::size_t i = 0; i < res.branch_trace.size(); ++i) {
          if (i > 0) out << ", ";
          out << to_string(res.branch_trace[i]);
        }
        out << '\n';
      },
      err);
}

int run_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        if (opt.runs == 0) throw InvalidArgument("bench: --runs must be at least 1");
        if (opt.lengths.empty() || opt.densities.empty())
          throw InvalidArgument("bench: need at least one length and one density");
        for (double d : opt.densities)
          if (!(d > 0.0) || d > 1.0)
            throw InvalidArgument("bench: densities must lie in (0, 1]");

        const std::vector<BenchRow> rows =
            owl::run_bench(opt.lengths, opt.densities, opt.runs, opt.seed, thread_cap(opt.parallel));

        std::ostringstream csv;
        csv << "n,density,mean_s,std_s\n";
        for (const BenchRow& r : rows)
          csv << r.n << ',' << std::setprecision(6) << r.density << ','
              << std::setprecision(9) << r.mean_s << ',' << r.std_s << '\n';
        write_csv(opt.out_path, csv.str(), out);
        if (!opt.out_path.empty())
          out << rows.size() << " rows -> " << opt.out_path << '\n';
      },
      err);
}

int run_regress(const RegressOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        SyntheticData data =
            gen_synthetic({opt.d, opt.seed, opt.mu1, opt.mu2, opt.noise_variance});
        RegressionProblem prob{std::move(data.A), std::move(data.b),
                               OwlBall(std::move(data.w), data.epsilon)};

        std::optional<double> step;
        if (opt.step != 0.0) step = opt.step;

        SolverTrace trace;
        if (opt.solver == "fbs") {
          trace = fbs_solve(prob, step, opt.iters);
        } else if (opt.solver == "fista") {
          trace = fista_solve(prob, step, opt.iters);
        } else if (opt.solver == "drs") {
          trace = drs_solve(prob, step.value_or(1.0), opt.iters);
        } else {
          throw InvalidArgument("regress: unknown solver '" + opt.solver +
                                "' (expected fbs, fista or drs)");
        }

        std::ostringstream csv;
        csv << std::setprecision(17) << "iter,objective,elapsed_s,feasibility\n";
        for (const TraceRow& r : trace.rows)
          csv << r.iter << ',' << r.objective << ',' << std::setprecision(9)
              << r.elapsed_s << ',' << std::setprecision(17) << r.feasibility << '\n';
        write_csv(opt.out_path, csv.str(), out);
        if (!opt.out_path.empty())
          out << std::setprecision(17) << opt.solver << ": final objective "
              << trace.rows.back().objective << " after " << opt.iters
              << " iterations -> " << opt.out_path << '\n';
      },
      err);
}

int run_gen(const GenOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        if (opt.out_prefix.empty()) throw InvalidArgument("gen: --out-prefix is required");
        const SyntheticData data =
            gen_synthetic({opt.d, opt.seed, opt.mu1, opt.mu2, opt.noise_variance});

        const auto n = static_cast<std::size_t>(data.x_true.size());
        // Eigen stores column-major; the file format is row-major.
        const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
            row_major = data.A;
        write_matrix_file(opt.out_prefix + "A.txt", {row_major.data(), n * n}, n, n);
        write_vector_file(opt.out_prefix + "b.txt", {data.b.data(), n});
        write_vector_file(opt.out_prefix + "x_true.txt", {data.x_true.data(), n});
        write_vector_file(opt.out_prefix + "w.txt", data.w.span());
        write_vector_file(opt.out_prefix + "epsilon.txt", {&data.epsilon, 1},
                          "ball radius = owl norm of x_true");
        out << "wrote " << opt.out_prefix << "{A,b,x_true,w,epsilon}.txt (n = " << n
            << ", epsilon = " << std::setprecision(17) << data.epsilon << ")\n";
      },
      err);
}

}  // namespace owl::cli
