// SPDX-FileCopyrightText: Copyright (c) 2026 axiphor contributors
// SPDX-License-Identifier: Apache-2.0
//
// Scene description files: one JSON document holds the particle, medium,
// source, pose, dynamics and output settings for every subcommand. Absent
// keys take the documented defaults (40 kHz, air, sound-hard, 1 Pa plane
// wave or v0 = 1.5 m/s); unknown keys are rejected so typos cannot silently
// fall back to defaults.

#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "axiphor/common.hpp"
#include "axiphor/geometry.hpp"
#include "axiphor/scatter.hpp"
#include "axiphor/wavefield.hpp"

namespace axiphor::scene {

struct ParticleConfig {
  std::vector<double> mapping_coefficients{0.002};
  // Rescales every c_j by override / c_1 so the shape keeps its proportions
  // while c_1 becomes the requested averaged radius.
  std::optional<double> averaged_radius_override;
  double density = 15.0;  // kg/m^3
};

struct PoseConfig {
  Vec3 initial_position = Vec3::Zero();     // m
  Vec3 initial_orientation = Vec3::Zero();  // extrinsic x-y-z angles, rad
};

struct DynamicsConfig {
  double dt = 1e-4;    // s
  double t_end = 0.1;  // s
  double g = 9.81;     // m/s^2, along -z
};

struct NumericsConfig {
  int n_max = 0;                        // 0 = truncation heuristic
  std::vector<double> quadrature_radii;  // projection radius pair; empty = auto
};

struct OutputsConfig {
  std::string directory = ".";
  std::string trajectory_filename = "Myfilename.txt";
  std::string particle_filename = "particle_data.stl";
  std::string force_filename = "force.csv";
};

// xOz sampling window for the `field` subcommand.
struct FieldGridConfig {
  double x_min = -0.02, x_max = 0.02;  // m
  double z_min = -0.02, z_max = 0.02;  // m
  int nx = 41, nz = 41;
  std::string filename = "field.csv";
};

struct SceneConfig {
  ParticleConfig particle;
  scatter::BoundaryKind boundary = scatter::BoundaryKind::SoundHard;
  std::string medium_preset = "air";  // empty when the medium is explicit
  wavefield::Medium medium = wavefield::medium_preset("air");
  std::optional<wavefield::PlaneWave> plane;  // exactly one source is set
  std::optional<wavefield::TransducerArray> array;
  double frequency = 40e3;  // Hz
  PoseConfig pose;
  DynamicsConfig dynamics;
  NumericsConfig numerics;
  OutputsConfig outputs;
  FieldGridConfig field;
};

SceneConfig parse_scene(const nlohmann::ordered_json& j);
SceneConfig scene_from_string(const std::string& text);
SceneConfig load_scene(const std::string& path);

nlohmann::ordered_json serialize_scene(const SceneConfig& config);
std::string scene_to_string(const SceneConfig& config);

// The validated mapping actually used by computations, override applied.
geometry::MappingCoefficients effective_mapping(const ParticleConfig& particle);

}  // namespace axiphor::scene
