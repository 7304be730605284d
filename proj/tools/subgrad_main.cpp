// subgrad: run geometric-step subgradient descent, estimate condition numbers
// and regularity constants, or sweep the whole verification matrix.
#include <CLI11.hpp>

#include "subgrad/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Subgradient descent with geometrically decaying step sizes"};
  app.require_subcommand(1);

  subgrad::RunOptions run_opt;
  CLI::App* run = app.add_subcommand("run", "run one descent and verify its convergence bound");
  run->add_option("--problem", run_opt.problem, "problem name from the registry")->required();
  std::string run_x0;
  run->add_option("--x0", run_x0, "starting point, comma-separated decimals (default: built-in)");
  run->add_option("--schedule", run_opt.schedule,
                  "geometric-exact | geometric-banded | polyak | constant");
  run->add_option("--r", run_opt.r, "decay parameter r, or 'auto' for the maximal admissible value");
  run->add_option("--beta", run_opt.beta, "band parameter for geometric-banded (default 0.5)");
  run->add_option("--R", run_opt.R, "distance surrogate for geometric-banded (default 0.5*dist0)");
  run->add_option("--eta", run_opt.eta, "step size for the constant schedule");
  run->add_option("--max-iters", run_opt.max_iters, "iteration cap (default 1000)");
  run->add_option("--grad-tol", run_opt.grad_tol, "subgradient norm stopping tolerance (default 1e-12)");
  run->add_option("--out", run_opt.out, "output directory (default .)");

  subgrad::EstimateOptions est_opt;
  CLI::App* est = app.add_subcommand("estimate", "estimate the condition number and check properties");
  est->add_option("--problem", est_opt.problem, "problem name from the registry")->required();
  std::string est_x0;
  est->add_option("--x0", est_x0, "starting point defining the sampled ball (default: built-in)");
  est->add_option("--samples", est_opt.samples, "number of random samples (default 100000)");
  est->add_option("--seed", est_opt.seed, "RNG seed (default 0)");
  est->add_option("--exclusion-radius", est_opt.exclusion_radius,
                  "skip samples this close to the minimizer set (default 1e-6*radius)");
  est->add_option("--rho-max", est_opt.rho_max, "weak-convexity search ceiling (default 1e3)");
  est->add_option("--out", est_opt.out, "output directory (default .)");

  subgrad::SuiteOptions suite_opt;
  CLI::App* suite = app.add_subcommand("suite", "run the full bound-verification matrix");
  suite->add_option("--out", suite_opt.out, "output directory (default .)");
  suite->add_option("--problem", suite_opt.problem, "restrict the matrix to one problem");
  suite->add_option("--r-override", suite_opt.r_override, "replace the r grid with a single value");
  suite->add_option("--max-iters", suite_opt.max_iters, "iteration cap per run (default 1000)");
  suite->add_option("--grad-tol", suite_opt.grad_tol, "stopping tolerance per run (default 1e-12)");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    if (!run_x0.empty()) run_opt.x0 = run_x0;
    return subgrad::cmd_run(run_opt);
  }
  if (est->parsed()) {
    if (!est_x0.empty()) est_opt.x0 = est_x0;
    return subgrad::cmd_estimate(est_opt);
  }
  return subgrad::cmd_suite(suite_opt);
}
