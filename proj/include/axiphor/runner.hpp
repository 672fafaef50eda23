// SPDX-FileCopyrightText: Copyright (c) 2026 axiphor contributors
// SPDX-License-Identifier: Apache-2.0
//
// The four subcommand workhorses. Each takes a parsed scene plus the command
// line options, writes its data files and prints a short human report to the
// given stream. Errors surface as the library exception types; the CLI maps
// them to exit codes.

#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "axiphor/scene.hpp"

namespace axiphor::runner {

// Orientation sweep parsed from "axis=min:max:count", axis in {x, y, z},
// angles in radians. Throws DomainError on malformed input.
struct SweepSpec {
  int axis = 0;  // 0 = x, 1 = y, 2 = z
  double min = 0.0;
  double max = 0.0;
  int count = 1;
};

SweepSpec parse_sweep(const std::string& text);

struct RunOptions {
  std::string out_dir;     // empty: use the config's outputs.directory
  int n_max_override = 0;  // 0: config numerics / truncation heuristic
  bool quiet = false;      // suppress the stdout report (files still written)
  bool provenance = false; // echo the config as # comments in CSV outputs
  std::optional<SweepSpec> sweep;  // force subcommand only
};

void run_particle(const scene::SceneConfig& config, const RunOptions& opts, std::ostream& out);
void run_field(const scene::SceneConfig& config, const RunOptions& opts, std::ostream& out);
void run_force(const scene::SceneConfig& config, const RunOptions& opts, std::ostream& out);
void run_simulate(const scene::SceneConfig& config, const RunOptions& opts, std::ostream& out);

}  // namespace axiphor::runner
