// Command-line front end for batch verification runs.

#include <iostream>

#include "CLI11.hpp"
#include "fermatlab/report.hpp"

int main(int argc, char** argv) {
  using fermatlab::report::RunConfig;
  RunConfig cfg;
  CLI::App app{"Batch verification of instance files"};
  app.add_option("--task", cfg.task, "Task to run, or 'all'")
      ->check(CLI::IsMember(fermatlab::report::task_names()));
  app.add_option("--input", cfg.inputs, "Instance file or directory of *.inst files")->required();
  app.add_option("--out", cfg.out_dir, "Output directory")->required();
  app.add_option("--radii", cfg.radii, "Radius grid, comma separated")->delimiter(',');
  app.add_option("--samples", cfg.samples, "Monte Carlo sample count");
  app.add_option("--seed", cfg.seed, "Quadrature seed");
  app.add_option("--tol", cfg.tolerance, "Residual tolerance");
  app.add_option("--field-order", cfg.field_order, "Conductor N for instances without a field line");
  app.add_option("--jobs", cfg.jobs, "Worker threads");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fermatlab::report::kExitUsage;
  }
  return fermatlab::report::run(cfg, std::cerr);
}
