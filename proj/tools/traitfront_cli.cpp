#include <iostream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "traitfront/commands.hpp"

using namespace traitfront;

int main(int argc, char** argv) {
  CLI::App app{"Trait-structured front propagation: spectral solver, simulator, HJ limit and verification"};
  app.require_subcommand(1, 1);
  std::string config_path, out_dir;
  std::vector<std::string> overrides;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--set", overrides, "override one key (repeatable)")->allow_extra_args(false);
    sub->add_option("--out", out_dir, "existing output directory");
  };
  CLI::App* spectral = app.add_subcommand("spectral", "write dispersion.csv and cstar.csv");
  CLI::App* simulate = app.add_subcommand("simulate", "integrate the model and write snapshots and tracks");
  CLI::App* hj = app.add_subcommand("hj", "solve the constrained Hamilton-Jacobi limit");
  CLI::App* verify = app.add_subcommand("verify", "run the verification suite and write report.csv");
  for (CLI::App* sub : {spectral, simulate, hj, verify}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunConfig cfg;
  try {
    cfg = config_path.empty() ? parse_config("") : load_config(config_path);
    for (const std::string& s : overrides) apply_override(cfg, s);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    cfg.validate();
    output_dir(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }
  if (cfg.threads > 0) omp_set_num_threads(static_cast<int>(cfg.threads));

  try {
    if (*spectral) cmd_spectral(cfg);
    else if (*simulate) cmd_simulate(cfg);
    else if (*hj) cmd_hj(cfg);
    else return cmd_verify(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
