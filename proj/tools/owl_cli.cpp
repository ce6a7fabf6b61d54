#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact projection onto the ordered weighted l1 norm ball"};
  app.require_subcommand(1);

  owl::cli::ProjectOptions project;
  CLI::App* p = app.add_subcommand("project", "Project a vector onto an OWL ball");
  p->add_option("--input", project.input_path, "vector file (one value per line)")
      ->required();
  p->add_option("--weights", project.weights_spec, "weight file or oscar:MU1,MU2")
      ->required();
  p->add_option("--eps", project.epsilon, "ball radius (positive)")->required();
  p->add_option("--output", project.output_path, "where to write the projection");

  owl::cli::BenchOptions bench;
  CLI::App* b = app.add_subcommand("bench", "Time projections over an (n, density) grid");
  b->add_option("--lengths", bench.lengths, "vector lengths");
  b->add_option("--densities", bench.densities, "nonzero fractions in (0, 1]");
  b->add_option("--runs", bench.runs, "timed runs per cell");
  b->add_option("--seed", bench.seed, "base RNG seed");
  b->add_option("--out", bench.out_path, "CSV path (default: stdout)");
  b->add_flag("--parallel", bench.parallel,
              "run grid cells concurrently (capped by OWL_THREADS)");

  owl::cli::RegressOptions regress;
  CLI::App* r = app.add_subcommand("regress", "Constrained least squares on synthetic data");
  r->add_option("--d", regress.d, "problem scale (n = 1000 d)");
  r->add_option("--solver", regress.solver, "fbs | fista | drs");
  r->add_option("--iters", regress.iters, "iteration count");
  r->add_option("--seed", regress.seed, "RNG seed");
  r->add_option("--out", regress.out_path, "trace CSV path (default: stdout)");
  r->add_option("--step", regress.step, "step size (drs: penalty); 0 derives a default");
  r->add_option("--mu1", regress.mu1, "weight offset");
  r->add_option("--mu2", regress.mu2, "weight slope");
  r->add_option("--noise-variance", regress.noise_variance, "observation noise variance");

  owl::cli::GenOptions gen;
  CLI::App* g = app.add_subcommand("gen", "Write a synthetic problem instance to files");
  g->add_option("--d", gen.d, "problem scale (n = 1000 d)");
  g->add_option("--seed", gen.seed, "RNG seed");
  g->add_option("--out-prefix", gen.out_prefix, "path prefix for the output files")
      ->required();
  g->add_option("--mu1", gen.mu1, "weight offset");
  g->add_option("--mu2", gen.mu2, "weight slope");
  g->add_option("--noise-variance", gen.noise_variance, "observation noise variance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : owl::cli::kValidationError;
  }

  if (p->parsed()) return owl::cli::run_project(project, std::cout, std::cerr);
  if (b->parsed()) return owl::cli::run_bench(bench, std::cout, std::cerr);
  if (r->parsed()) return owl::cli::run_regress(regress, std::cout, std::cerr);
  return owl::cli::run_gen(gen, std::cout, std::cerr);
}
