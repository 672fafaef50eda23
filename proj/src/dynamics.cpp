// SPDX-FileCopyrightText: Copyright (c) 2026 axiphor contributors
// SPDX-License-Identifier: Apache-2.0

#include "axiphor/dynamics.hpp"

#include <Eigen/Geometry>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <sstream>

namespace axiphor::dynamics {

namespace {

Mat3 rotation_exp(const Vec3& w_dt) {
  const double angle = w_dt.norm();
  if (angle == 0.0) return Mat3::Identity();
  return Eigen::AngleAxisd(angle, w_dt / angle).toRotationMatrix();
}

// Nearest rotation matrix in the Frobenius sense.
Mat3 reorthonormalized(const Mat3& R) {
  Eigen::JacobiSVD<Mat3> svd(R, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

bool bitwise_equal(const Vec3& a, const Vec3& b) {
  return a.x() == b.x() && a.y() == b.y() && a.z() == b.z();
}

bool bitwise_equal(const Mat3& a, const Mat3& b) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

}  // namespace

void validate_params(const DynamicsParams& params) {
  if (!(params.dt > 0.0) || !std::isfinite(params.dt))
    throw DomainError("dynamics: time step must be positive");
  if (!(params.t_end >= params.dt) || !std::isfinite(params.t_end))
    throw DomainError("dynamics: ending time must cover at least one step");
  if (!(params.rel_tol > 0.0 && params.rel_tol < 1.0))
    throw DomainError("dynamics: termination threshold must lie in (0, 1)");
}

RigidBodyState step(const RigidBodyState& state, const radforce::ForceTorque& forcing,
                    const geometry::MassProperties& props, const wavefield::Medium& medium,
                    const DynamicsParams& params) {
  validate_params(params);
  if (!forcing.force.allFinite() || !forcing.torque.allFinite())
    throw DomainError("step: forcing is not finite");
  if (!(medium.mu > 0.0) || !std::isfinite(medium.mu))
    throw DomainError("step: the drag model needs a viscous medium (mu > 0)");
  if (!(props.mass > 0.0) || !(props.averaged_radius > 0.0) || !(props.inertia_axial > 0.0) ||
      !(props.inertia_transverse > 0.0))
    throw DomainError("step: mass properties must describe a solid body");

  const double a = props.averaged_radius;
  const double b = 6.0 * kPi * medium.mu * a;
  const double c_rot = 8.0 * kPi * medium.mu * a * a * a;

  const Mat3& R = state.orientation.rotation;
  const Vec3 offset = R * Vec3(0.0, 0.0, props.center_z);  // mapping origin -> center of mass

  // Translation about the center of mass. Drag and weight act there, so only
  // the radiation force needs transporting for the torque below. The linear
  // ODE with constant within-step forcing is integrated exactly.
  const Vec3 F = forcing.force - Vec3(0.0, 0.0, params.g * props.gravity_mass);
  const Vec3 v_inf = F / b;
  const double decay = std::exp(-b * params.dt / props.mass);
  const Vec3 v_new = v_inf + (state.velocity - v_inf) * decay;
  const Vec3 x_cm = state.position + offset;
  const Vec3 x_cm_new =
      x_cm + v_inf * params.dt + (state.velocity - v_inf) * (props.mass / b) * (1.0 - decay);

  // Rotation in body axes about the center of mass: per-axis exact linear
  // drag, gyroscopic coupling held explicit over the step.
  const Vec3 torque_cm = forcing.torque - offset.cross(forcing.force);
  const Vec3 torque_body = R.transpose() * torque_cm;
  const Vec3 w_body = R.transpose() * state.angular_velocity;
  const Vec3 inertia(props.inertia_transverse, props.inertia_transverse, props.inertia_axial);
  const Vec3 gyro = w_body.cross(Vec3(inertia.array() * w_body.array()));
  Vec3 w_body_new;
  for (int i = 0; i < 3; ++i) {
    const double w_inf = (torque_body[i] - gyro[i]) / c_rot;
    w_body_new[i] = w_inf + (w_body[i] - w_inf) * std::exp(-c_rot * params.dt / inertia[i]);
  }
  const Vec3 w_lab_new = R * w_body_new;

  Mat3 R_new = rotation_exp(w_lab_new * params.dt) * R;
  if ((R_new.transpose() * R_new - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-10)
    R_new = reorthonormalized(R_new);

  RigidBodyState next;
  next.time = state.time + params.dt;
  next.orientation = transform::orientation_from_matrix(R_new);
  next.position = x_cm_new - R_new * Vec3(0.0, 0.0, props.center_z);
  next.velocity = v_new;
  next.angular_velocity = w_lab_new;
  return next;
}

namespace {

double nearest_source_distance(const std::vector<Vec3>& sources, const Vec3& x) {
  double d = std::numeric_limits<double>::infinity();
  for (const Vec3& s : sources) d = std::min(d, (x - s).norm());
  return d;
}

}  // namespace

Trajectory simulate(const Scene& scene, const DynamicsParams& params) {
  validate_params(params);
  if (scene.plane.has_value() == scene.array.has_value())
    throw DomainError("simulate: the scene needs exactly one source, plane wave or array");
  if (!(scene.frequency > 0.0) || !std::isfinite(scene.frequency))
    throw DomainError("simulate: frequency must be positive");
  if (!(params.rho_p > 0.0) || !std::isfinite(params.rho_p))
    throw DomainError("simulate: particle density must be positive");

  const double k = 2.0 * kPi * scene.frequency / scene.medium.c0;
  const double r_max = geometry::max_radius(scene.mapping);
  const int n_max = scene.n_max > 0 ? scene.n_max : wavefield::default_truncation(k, r_max);
  const geometry::MassProperties props =
      geometry::mass_properties(scene.mapping, params.rho_p, scene.use_sphere_gravity_volume);
  const scatter::TMatrix tmat = scatter::tmatrix_nullfield(scene.mapping, scene.boundary, k, n_max);

  std::vector<Vec3> sources;
  if (scene.array) {
    wavefield::validate_array(*scene.array);
    for (const Vec3& p : scene.array->positions)
      sources.push_back(p - Vec3(0.0, 0.0, scene.array->interdistance));
    const double plane_distance = scene.initial_position.z() + scene.array->interdistance;
    if (!(plane_distance > params.min_interdistance)) {
      std::ostringstream msg;
      msg << "simulate: initial particle-to-array distance " << plane_distance
          << " m is inside the far-field guard (min_interdistance " << params.min_interdistance
          << " m)";
      throw GeometryError(msg.str());
    }
  }

  const std::array<double, 2> proj_radii = {1.5 * r_max, 1.9 * r_max};
  const double force_radius = 1.6 * r_max;

  RigidBodyState state;
  state.position = scene.initial_position;
  state.orientation = transform::euler_to_rotation(scene.initial_orientation);

  Trajectory out;
  out.records.push_back({0.0, state.position, scene.initial_orientation});

  bool prev_within_tol = false;
  for (long step_index = 1;; ++step_index) {
    radforce::ForceTorque forcing;
    try {
      wavefield::WaveExpansion incident = [&] {
        if (scene.plane)
          return wavefield::plane_wave_coefficients(*scene.plane, k, n_max, state.position);
        const double d = nearest_source_distance(sources, state.position);
        if (!(proj_radii[1] < 0.5 * d)) {
          std::ostringstream msg;
          msg << "projection radius " << proj_radii[1] << " m reaches past half the distance "
              << d << " m to the nearest transducer";
          throw GeometryError(msg.str());
        }
        const wavefield::TransducerArray& arr = *scene.array;
        return wavefield::project_incident(
            [&](const Vec3& x) {
              return wavefield::piston_pressure(arr, scene.medium, scene.frequency, x);
            },
            k, n_max, state.position, proj_radii);
      }();
      const wavefield::WaveExpansion scattered =
          scatter::scatter_lab_frame(tmat, incident, state.orientation);
      std::vector<double> distances;
      distances.reserve(sources.size());
      for (const Vec3& s : sources) distances.push_back((state.position - s).norm());
      radforce::validate_quadrature_radius(force_radius, r_max, distances);
      forcing =
          radforce::force_torque(incident, scattered, scene.medium, scene.frequency, force_radius);
    } catch (const GeometryError& e) {
      std::ostringstream msg;
      msg << "simulate: step " << step_index << " (t = " << state.time << " s): " << e.what();
      throw GeometryError(msg.str());
    }

    const Vec3 prev_position = state.position;
    const Mat3 prev_rotation = state.orientation.rotation;
    const Vec3 prev_report = out.records.back().angles;
    state = step(state, forcing, props, scene.medium, params);
    const Vec3 angles = transform::euler_xyz_continuous(state.orientation.rotation, prev_report);
    out.records.push_back({state.time, state.position, angles});

    // A pose that repeats bitwise can never leave the fixed point again, so
    // it converges without waiting for a second quiet step.
    if (bitwise_equal(state.position, prev_position) &&
        bitwise_equal(state.orientation.rotation, prev_rotation)) {
      out.termination = TerminationReason::converged_5pct;
      break;
    }
    bool within_tol = true;
    for (int i = 0; i < 3; ++i) {
      within_tol = within_tol &&
                   std::abs(state.position[i] - prev_position[i]) /
                           std::max(std::abs(state.position[i]), params.position_floor) <
                       params.rel_tol &&
                   std::abs(angles[i] - prev_report[i]) /
                           std::max(std::abs(angles[i]), params.angle_floor) <
                       params.rel_tol;
    }
    if (within_tol && prev_within_tol) {
      out.termination = TerminationReason::converged_5pct;
      break;
    }
    prev_within_tol = within_tol;
    if (state.time >= params.t_end - 0.5 * params.dt) {
      out.termination = TerminationReason::reached_t_end;
      break;
    }
    if (scene.array &&
        state.position.z() + scene.array->interdistance < params.min_interdistance) {
      out.termination = TerminationReason::below_min_interdistance;
      break;
    }
  }
  return out;
}

}  // namespace axiphor::dynamics
