#include <iostream>

#include <CLI11.hpp>

#include "twistperiod/acceptance.hpp"
#include "twistperiod/cli.hpp"
#include "twistperiod/parallel.hpp"

int main(int argc, char** argv) {
  using namespace twistperiod;
  CLI::App app{"twisted period integrals over hyperplane arrangements"};
  app.require_subcommand(1);

  std::string job_path;
  RunOptions opts;
  std::string out_dir = ".";
  auto* run = app.add_subcommand("run", "run a job file and write report.json");
  run->add_option("job", job_path, "job JSON file")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_flag("--plot", opts.plot, "write chambers.svg (n=2 only)");
  run->add_option("--tol", opts.tol, "relative quadrature tolerance")->check(CLI::PositiveNumber);

  auto* suite = app.add_subcommand("verify-suite", "run the 12 acceptance criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_code::schema;
  }
  configure_threads_from_env();

  if (run->parsed()) {
    opts.out_dir = out_dir;
    const RunResult r = run_job_file(job_path, opts);
    if (r.exit_code != exit_code::ok) std::cerr << "twistperiod: " << r.reason << '\n';
    return r.exit_code;
  }
  if (suite->parsed()) {
    int failed = 0;
    for (int id = 1; id <= kCriterionCount; ++id) {
      const CriterionResult r = run_criterion(id);
      std::cout << format_result(r) << std::endl;
      failed += r.passed ? 0 : 1;
    }
    std::cout << (kCriterionCount - failed) << "/" << kCriterionCount << " criteria passed\n";
    return failed == 0 ? exit_code::ok : exit_code::check_failed;
  }
  return exit_code::ok;
}
