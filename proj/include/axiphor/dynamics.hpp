// SPDX-FileCopyrightText: Copyright (c) 2026 axiphor contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "axiphor/common.hpp"
#include "axiphor/geometry.hpp"
#include "axiphor/radforce.hpp"
#include "axiphor/scatter.hpp"
#include "axiphor/transform.hpp"
#include "axiphor/wavefield.hpp"

namespace axiphor::dynamics {

struct DynamicsParams {
  double rho_p = 0.0;                // particle density, kg/m^3
  double g = 9.81;                   // gravity magnitude, acts along -z
  double dt = 0.0;                   // s
  double t_end = 0.0;                // s
  double rel_tol = 0.05;             // settled-pose termination threshold
  double min_interdistance = 0.010;  // m, array far-field guard
  double position_floor = 1e-6;      // m, relative-change floor
  double angle_floor = 1e-4;         // rad, relative-change floor
};

// Throws DomainError unless dt > 0, t_end >= dt and 0 < rel_tol < 1.
void validate_params(const DynamicsParams& params);

// `position` is the mapping origin (the expansion center the forces are
// computed about); `velocity` belongs to the center of mass, which sits at
// position + R (0, 0, center_z). angular_velocity is in the lab frame.
struct RigidBodyState {
  double time = 0.0;
  Vec3 position = Vec3::Zero();
  transform::Orientation orientation;
  Vec3 velocity = Vec3::Zero();
  Vec3 angular_velocity = Vec3::Zero();
};

enum class TerminationReason { converged_5pct, reached_t_end, below_min_interdistance };

struct TrajectoryRecord {
  double t;
  Vec3 position;  // mapping origin
  Vec3 angles;    // extrinsic x-y-z report, branch chosen for continuity
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
  TerminationReason termination;
};

// One dt of rigid-body motion under the given radiation forcing (about the
// mapping origin), weight on gravity_mass, and sphere drag with
// a = averaged_radius: translation m dv/dt = F - 6 pi mu a v integrated
// exactly (linear ODE, forcing constant within the step); rotation
// I dw/dt + w x (I w) = T - 8 pi mu a^3 w with the drag handled exactly per
// body axis and the gyroscopic term explicit; orientation advanced by
// exp([w dt]x) and re-orthonormalized when the drift exceeds 1e-10.
// Buoyancy and added mass are deliberately absent.
RigidBodyState step(const RigidBodyState& state, const radforce::ForceTorque& forcing,
                    const geometry::MassProperties& props, const wavefield::Medium& medium,
                    const DynamicsParams& params);

// Exactly one of `plane` / `array` must be set. n_max = 0 picks the
// truncation heuristic for the particle's maximum radius.
struct Scene {
  geometry::MappingCoefficients mapping;
  scatter::BoundaryKind boundary = scatter::BoundaryKind::SoundHard;
  wavefield::Medium medium;
  double frequency = 0.0;  // Hz
  std::optional<wavefield::PlaneWave> plane;
  std::optional<wavefield::TransducerArray> array;
  Vec3 initial_position = Vec3::Zero();
  Vec3 initial_orientation = Vec3::Zero();  // extrinsic x-y-z angles, rad
  bool use_sphere_gravity_volume = true;
  int n_max = 0;
};

// Marches the scene: each step re-expands the incident field about the current
// mapping origin (analytically for plane waves, by two-radius projection for
// arrays), scatters through the body-frame T-matrix, integrates force, torque,
// weight and drag, and records (t, position, angles) including t = 0.
// Stops when every position component and reported angle changes by less than
// rel_tol relative to max(|value|, floor) on two consecutive steps (a state
// that repeats bitwise converges immediately), when t reaches t_end, or when
// an array scene sinks to a vertical plane distance below min_interdistance.
// Throws GeometryError if the initial interdistance already violates the
// guard or if the projection/force radii collide with a transducer, naming
// the offending step.
Trajectory simulate(const Scene& scene, const DynamicsParams& params);

}  // namespace axiphor::dynamics
