#include <iostream>

#include "CLI11.hpp"
#include "fraclaw/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fraclaw: fractional conservation law laboratory"};
  app.require_subcommand(1);
  app.fallthrough();

  fraclaw::RunManifest m;
  app.add_option("--config", m.config_path, "key = value config file")
      ->envname("FRACLAW_CONFIG")
      ->check(CLI::ExistingFile);
  app.add_option("--out", m.out_dir, "output directory")->envname("FRACLAW_OUT");
  app.add_option("--seed", m.seed, "seed for randomized test functions")->envname("FRACLAW_SEED");
  app.add_option("--workers", m.workers, "parallel runs in rescale and sweep")
      ->envname("FRACLAW_WORKERS")
      ->check(CLI::PositiveNumber);
  app.add_flag("--check-only", m.check_only, "validate the config and print it resolved");

  const char* help[][2] = {
      {"kernel", "kernel samples and time-decay fits"},
      {"solve", "integrate the configured problem and write diagnostics"},
      {"rescale", "rescaled solutions at s = 1 against the N-wave"},
      {"verify", "reference run with every bound checked"},
      {"sweep", "rescaled family over lambda_list with tails and diagnostics"},
  };
  for (const auto& h : help) {
    app.add_subcommand(h[0], h[1])->callback([&m, name = std::string(h[0])] {
      m.command = fraclaw::command_from_string(name);
    });
  }

  CLI11_PARSE(app, argc, argv);
  return fraclaw::run(m, std::cout);
}
