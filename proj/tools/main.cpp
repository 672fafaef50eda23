// SPDX-FileCopyrightText: Copyright (c) 2026 axiphor contributors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "axiphor/runner.hpp"

namespace {

// 0 success, 1 usage, 2 domain/geometry, 3 numerical conditioning.
int dispatch(const std::string& command, const std::string& config_path,
             const axiphor::runner::RunOptions& opts) {
  using namespace axiphor;
  try {
    const scene::SceneConfig config = scene::load_scene(config_path);
    if (command == "particle")
      runner::run_particle(config, opts, std::cout);
    else if (command == "field")
      runner::run_field(config, opts, std::cout);
    else if (command == "force")
      runner::run_force(config, opts, std::cout);
    else
      runner::run_simulate(config, opts, std::cout);
    return 0;
  } catch (const ConditioningError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {  // DomainError, GeometryError, I/O
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acoustic radiation force, torque and acoustophoresis for axisymmetric particles"};
  app.require_subcommand(1);

  std::string config_path;
  std::string sweep_text;
  axiphor::runner::RunOptions opts;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "scene description file (JSON)")->required();
    sub->add_option("--out-dir", opts.out_dir, "output directory (overrides the config)");
    sub->add_option("--n-max", opts.n_max_override, "expansion truncation override");
    sub->add_flag("--quiet", opts.quiet, "suppress the stdout report");
    sub->add_flag("--provenance", opts.provenance,
                  "echo the config as # comments inside CSV outputs");
  };

  add_common(app.add_subcommand("particle", "export the particle surface as STL"));
  add_common(app.add_subcommand("field", "sample the incident pressure on the xOz plane"));
  CLI::App* force = app.add_subcommand("force", "radiation force and torque at a fixed pose");
  add_common(force);
  force->add_option("--sweep", sweep_text,
                    "orientation sweep axis=min:max:count (radians), e.g. x=0:1.5708:19");
  add_common(app.add_subcommand("simulate", "time-march the drag-damped rigid-body motion"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;  // help/version exit clean, anything else is usage
  }

  if (!sweep_text.empty()) {
    try {
      opts.sweep = axiphor::runner::parse_sweep(sweep_text);
    } catch (const axiphor::DomainError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }

  return dispatch(app.get_subcommands().front()->get_name(), config_path, opts);
}
