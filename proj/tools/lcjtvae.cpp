//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lcjt/app/commands.h"
#include "lcjt/app/run_config.h"

int main(int argc, char **argv) {
  CLI::App app { "Ligase-conditioned junction-tree VAE pipeline" };
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  std::string config_path;
  std::optional<long long> seed;
  std::string out_dir;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "flat key = value configuration file");
  app.add_option("--seed", seed, "random seed (overrides config)");
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_option("--set", overrides, "extra KEY=VALUE override, repeatable");

  const char *const commands[][2] = {
    { "ingest", "filter compounds and write property/affinity/scaffold tables" },
    { "train", "train the model and write the log, loss curve and checkpoint" },
    { "generate", "sample molecules per ligase from a checkpoint" },
    { "eval", "score samples and project chemical space" },
    { "report", "cross-target docking heatmap and means" },
  };
  for (const auto &c: commands)
    app.add_subcommand(c[0], c[1]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : lcjt::kExitError;
  }

  lcjt::RunConfig cfg;
  try {
    if (!config_path.empty())
      cfg = lcjt::RunConfig::load(config_path);
    for (const std::string &kv: overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0)
        throw lcjt::Error("--set expects KEY=VALUE, got '" + kv + "'");
      cfg.set(lcjt::trim(kv.substr(0, eq)), lcjt::trim(kv.substr(eq + 1)));
    }
  } catch (const lcjt::ParseError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return lcjt::kExitSchema;
  } catch (const lcjt::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return lcjt::kExitError;
  }
  if (seed)
    cfg.set("seed", std::to_string(*seed));
  if (!out_dir.empty())
    cfg.set("out", out_dir);

  const std::string name = app.get_subcommands().front()->get_name();
  const lcjt::CommandResult r = lcjt::run_command(name, cfg);
  if (r.exit_code != 0)
    std::cerr << "error: " << r.message << "\n";
  return r.exit_code;
}
