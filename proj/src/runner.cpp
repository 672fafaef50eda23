// SPDX-FileCopyrightText: Copyright (c) 2026 axiphor contributors
// SPDX-License-Identifier: Apache-2.0

#include "axiphor/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

#include "axiphor/dynamics.hpp"
#include "axiphor/radforce.hpp"

namespace axiphor::runner {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

// Shortest exact decimal form, for header echoes.
std::string echo(double v) { return nlohmann::ordered_json(v).dump(); }

fs::path output_path(const scene::SceneConfig& config, const RunOptions& opts,
                     const std::string& filename) {
  const fs::path dir = opts.out_dir.empty() ? fs::path(config.outputs.directory)
                                            : fs::path(opts.out_dir);
  fs::create_directories(dir);
  return dir / filename;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary: no platform newline games
  if (!out) throw DomainError("cannot write \"" + path.string() + "\"");
  return out;
}

void write_provenance(std::ofstream& out, const scene::SceneConfig& config) {
  out << "# config: " << scene::serialize_scene(config).dump() << "\n";
}

int resolve_n_max(const scene::SceneConfig& config, const RunOptions& opts, double k,
                  double r_max) {
  if (opts.n_max_override > 0) return opts.n_max_override;
  if (config.numerics.n_max > 0) return config.numerics.n_max;
  return wavefield::default_truncation(k, r_max);
}

std::vector<Vec3> source_centers(const scene::SceneConfig& config) {
  std::vector<Vec3> centers;
  if (config.array)
    for (const Vec3& p : config.array->positions)
      centers.push_back(p - Vec3(0.0, 0.0, config.array->interdistance));
  return centers;
}

// Incident beam-shape coefficients about `origin`: analytic for plane waves,
// two-radius projection of the piston far field for arrays.
wavefield::WaveExpansion incident_expansion(const scene::SceneConfig& config, double k, int n_max,
                                            const Vec3& origin, double r_max) {
  if (config.plane) return wavefield::plane_wave_coefficients(*config.plane, k, n_max, origin);

  std::array<double, 2> radii = {1.5 * r_max, 1.9 * r_max};
  if (config.numerics.quadrature_radii.size() == 2) {
    radii = {config.numerics.quadrature_radii[0], config.numerics.quadrature_radii[1]};
    if (!(radii[0] > 0.0 && radii[1] > 0.0) || radii[0] == radii[1])
      throw DomainError("numerics.quadrature_radii must be two distinct positive radii");
  }
  double nearest = std::numeric_limits<double>::infinity();
  for (const Vec3& s : source_centers(config)) nearest = std::min(nearest, (origin - s).norm());
  if (!(std::max(radii[0], radii[1]) < 0.5 * nearest)) {
    std::ostringstream msg;
    msg << "projection radius " << std::max(radii[0], radii[1])
        << " m reaches past half the distance " << nearest << " m to the nearest transducer";
    throw GeometryError(msg.str());
  }
  const wavefield::TransducerArray& arr = *config.array;
  return wavefield::project_incident(
      [&](const Vec3& x) {
        return wavefield::piston_pressure(arr, config.medium, config.frequency, x);
      },
      k, n_max, origin, radii);
}

}  // namespace

SweepSpec parse_sweep(const std::string& text) {
  SweepSpec spec;
  const auto eq = text.find('=');
  if (eq != 1 || (text[0] != 'x' && text[0] != 'y' && text[0] != 'z'))
    throw DomainError("sweep: expected \"axis=min:max:count\" with axis x, y or z, got \"" +
                      text + "\"");
  spec.axis = text[0] - 'x';
  const std::string rest = text.substr(2);
  const auto c1 = rest.find(':');
  const auto c2 = rest.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw DomainError("sweep: expected \"axis=min:max:count\", got \"" + text + "\"");
  try {
    size_t used = 0;
    spec.min = std::stod(rest.substr(0, c1), &used);
    if (used != c1) throw std::invalid_argument("min");
    spec.max = std::stod(rest.substr(c1 + 1, c2 - c1 - 1), &used);
    if (used != c2 - c1 - 1) throw std::invalid_argument("max");
    const std::string count_text = rest.substr(c2 + 1);
    spec.count = std::stoi(count_text, &used);
    if (used != count_text.size()) throw std::invalid_argument("count");
  } catch (const std::logic_error&) {
    throw DomainError("sweep: could not parse numbers in \"" + text + "\"");
  }
  if (spec.count < 1) throw DomainError("sweep: count must be at least 1");
  if (spec.count == 1 && spec.min != spec.max)
    throw DomainError("sweep: a single-point sweep needs min == max");
  return spec;
}

void run_particle(const scene::SceneConfig& config, const RunOptions& opts, std::ostream& out) {
  const geometry::MappingCoefficients mapping = scene::effective_mapping(config.particle);
  const geometry::SurfaceMesh mesh = geometry::build_mesh(mapping, 96, 96);
  const fs::path path = output_path(config, opts, config.outputs.particle_filename);
  geometry::export_stl(mesh, path.string());

  double z_min = std::numeric_limits<double>::infinity();
  double z_max = -z_min, rho_max = 0.0;
  const int samples = 2048;
  for (int i = 0; i <= samples; ++i) {
    const auto s = geometry::meridian(mapping, kPi * i / samples);
    z_min = std::min(z_min, s.z);
    z_max = std::max(z_max, s.z);
    rho_max = std::max(rho_max, s.rho);
  }
  const geometry::MassProperties props =
      geometry::mass_properties(mapping, config.particle.density, true);

  if (opts.quiet) return;
  out << "volume = " << fmt(props.volume) << " m^3\n";
  out << "axial extent = " << fmt(z_max - z_min) << " m\n";
  out << "equatorial extent = " << fmt(2.0 * rho_max) << " m\n";
  out << "averaged radius = " << fmt(mapping.c[0]) << " m\n";
  out << "wrote " << path.string() << "\n";
}

void run_field(const scene::SceneConfig& config, const RunOptions& opts, std::ostream& out) {
  if (config.plane.has_value() == config.array.has_value())
    throw DomainError("field: the scene needs exactly one source, plane wave or array");
  const double k = 2.0 * kPi * config.frequency / config.medium.c0;
  const scene::FieldGridConfig& g = config.field;

  const fs::path path = output_path(config, opts, g.filename);
  std::ofstream file = open_output(path);
  if (opts.provenance) write_provenance(file, config);
  file << "x,z,re_p,im_p,abs_p\n";

  std::vector<std::pair<double, double>> skipped;
  long rows = 0;
  for (int ix = 0; ix < g.nx; ++ix) {
    const double x = g.nx == 1 ? g.x_min : g.x_min + ix * (g.x_max - g.x_min) / (g.nx - 1);
    for (int iz = 0; iz < g.nz; ++iz) {
      const double z = g.nz == 1 ? g.z_min : g.z_min + iz * (g.z_max - g.z_min) / (g.nz - 1);
      Complex p;
      if (config.plane) {
        p = config.plane->amplitude *
            std::exp(Complex(0.0, k * (config.plane->direction.x() * x +
                                       config.plane->direction.z() * z)));
      } else {
        try {
          p = wavefield::piston_pressure(*config.array, config.medium, config.frequency,
                                         Vec3(x, 0.0, z));
        } catch (const DomainError&) {
          skipped.emplace_back(x, z);  // grid point on an element center
          continue;
        }
      }
      file << fmt(x) << ',' << fmt(z) << ',' << fmt(p.real()) << ',' << fmt(p.imag()) << ','
           << fmt(std::abs(p)) << "\n";
      ++rows;
    }
  }
  for (const auto& [x, z] : skipped)
    file << "# skipped x=" << fmt(x) << " z=" << fmt(z) << ": transducer element center\n";

  if (opts.quiet) return;
  out << "wrote " << path.string() << " (" << rows << " points, " << skipped.size()
      << " skipped)\n";
}

void run_force(const scene::SceneConfig& config, const RunOptions& opts, std::ostream& out) {
  if (config.plane.has_value() == config.array.has_value())
    throw DomainError("force: the scene needs exactly one source, plane wave or array");
  const geometry::MappingCoefficients mapping = scene::effective_mapping(config.particle);
  const double k = 2.0 * kPi * config.frequency / config.medium.c0;
  const double r_max = geometry::max_radius(mapping);
  const int n_max = resolve_n_max(config, opts, k, r_max);

  const wavefield::WaveExpansion incident =
      incident_expansion(config, k, n_max, config.pose.initial_position, r_max);

  const double force_radius = 1.6 * r_max;
  std::vector<double> distances;
  for (const Vec3& s : source_centers(config))
    distances.push_back((config.pose.initial_position - s).norm());
  radforce::validate_quadrature_radius(force_radius, r_max, distances);

  const scatter::TMatrix tmat = scatter::tmatrix_nullfield(mapping, config.boundary, k, n_max);

  const bool swept = opts.sweep.has_value();
  std::vector<double> thetas;
  if (swept) {
    const SweepSpec& s = *opts.sweep;
    for (int i = 0; i < s.count; ++i)
      thetas.push_back(s.count == 1 ? s.min : s.min + i * (s.max - s.min) / (s.count - 1));
  } else {
    thetas.push_back(0.0);
  }

  // Sweep entries are independent; workers claim rows from a shared counter
  // and write into preallocated slots, so the output order is fixed.
  std::vector<radforce::ForceTorque> rows(thetas.size());
  std::vector<std::exception_ptr> errors(thetas.size());
  std::atomic<size_t> cursor{0};
  auto worker = [&] {
    for (size_t i = cursor.fetch_add(1); i < thetas.size(); i = cursor.fetch_add(1)) {
      try {
        Vec3 angles = config.pose.initial_orientation;
        if (swept) angles[opts.sweep->axis] = thetas[i];
        const transform::Orientation o = transform::euler_to_rotation(angles);
        const wavefield::WaveExpansion scattered = scatter::scatter_lab_frame(tmat, incident, o);
        rows[i] =
            radforce::force_torque(incident, scattered, config.medium, config.frequency,
                                   force_radius);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n_workers = std::max(
      1u, std::min(std::thread::hardware_concurrency(), static_cast<unsigned>(thetas.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  const fs::path path = output_path(config, opts, config.outputs.force_filename);
  std::ofstream file = open_output(path);
  if (opts.provenance) write_provenance(file, config);
  file << "theta,F_x,F_y,F_z,T_x,T_y,T_z\n";
  for (size_t i = 0; i < thetas.size(); ++i) {
    const radforce::ForceTorque& ft = rows[i];
    file << fmt(thetas[i]);
    for (int c = 0; c < 3; ++c) file << ',' << fmt(ft.force[c]);
    for (int c = 0; c < 3; ++c) file << ',' << fmt(ft.torque[c]);
    file << "\n";
  }

  if (opts.quiet) return;
  if (!swept) {
    const radforce::ForceTorque& ft = rows[0];
    out << "F = [ " << fmt(ft.force.x()) << ' ' << fmt(ft.force.y()) << ' ' << fmt(ft.force.z())
        << " ] N\n";
    out << "T = [ " << fmt(ft.torque.x()) << ' ' << fmt(ft.torque.y()) << ' '
        << fmt(ft.torque.z()) << " ] N m\n";
  } else {
    out << "swept theta_" << static_cast<char>('x' + opts.sweep->axis) << " over ["
        << echo(opts.sweep->min) << ", " << echo(opts.sweep->max) << "] rad in "
        << opts.sweep->count << " steps\n";
  }
  out << "wrote " << path.string() << " (" << thetas.size() << " rows)\n";
}

void run_simulate(const scene::SceneConfig& config, const RunOptions& opts, std::ostream& out) {
  if (!config.array)
    throw DomainError("simulate: acoustophoresis needs a transducer array source");

  dynamics::Scene ds;
  ds.mapping = scene::effective_mapping(config.particle);
  ds.boundary = config.boundary;
  ds.medium = config.medium;
  ds.frequency = config.frequency;
  ds.array = config.array;
  ds.initial_position = config.pose.initial_position;
  ds.initial_orientation = config.pose.initial_orientation;
  ds.n_max = opts.n_max_override > 0 ? opts.n_max_override : config.numerics.n_max;

  dynamics::DynamicsParams params;
  params.rho_p = config.particle.density;
  params.g = config.dynamics.g;
  params.dt = config.dynamics.dt;
  params.t_end = config.dynamics.t_end;

  const dynamics::Trajectory trajectory = dynamics::simulate(ds, params);

  const fs::path path = output_path(config, opts, config.outputs.trajectory_filename);
  std::ofstream file = open_output(path);
  file << "# axiphor trajectory\n";
  file << "# mapping_coefficients =";
  for (double c : ds.mapping.c) file << ' ' << echo(c);
  file << "\n";
  file << "# averaged_radius_override = "
       << (config.particle.averaged_radius_override ? echo(*config.particle.averaged_radius_override)
                                                    : std::string("none"))
       << "\n";
  file << "# density = " << echo(params.rho_p) << "\n";
  file << "# boundary = "
       << (config.boundary == scatter::BoundaryKind::SoundHard ? "sound_hard" : "sound_soft")
       << "\n";
  file << "# medium = " << config.medium.name << " (rho0 = " << echo(config.medium.rho0)
       << ", c0 = " << echo(config.medium.c0) << ", mu = " << echo(config.medium.mu) << ")\n";
  file << "# frequency = " << echo(config.frequency) << "\n";
  const wavefield::TransducerArray& arr = *config.array;
  file << "# array: " << arr.positions.size() << " elements, radius = " << echo(arr.element_radius)
       << ", v0 = " << echo(arr.v0) << ", interdistance = " << echo(arr.interdistance) << "\n";
  for (size_t i = 0; i < arr.positions.size(); ++i)
    file << "# element " << i << ": position = [" << echo(arr.positions[i].x()) << ' '
         << echo(arr.positions[i].y()) << ' ' << echo(arr.positions[i].z())
         << "], phase_delay = " << echo(arr.phase_delay[i])
         << ", amplitude_ratio = " << echo(arr.amplitude_ratio[i]) << "\n";
  file << "# initial_position = " << echo(ds.initial_position.x()) << ' '
       << echo(ds.initial_position.y()) << ' ' << echo(ds.initial_position.z()) << "\n";
  file << "# initial_orientation = " << echo(ds.initial_orientation.x()) << ' '
       << echo(ds.initial_orientation.y()) << ' ' << echo(ds.initial_orientation.z()) << "\n";
  file << "# dt = " << echo(params.dt) << "\n";
  file << "# t_end = " << echo(params.t_end) << "\n";
  file << "# g = " << echo(params.g) << "\n";
  file << "# rel_tol = " << echo(params.rel_tol) << "\n";
  file << "# min_interdistance = " << echo(params.min_interdistance) << "\n";
  file << "# position_floor = " << echo(params.position_floor) << "\n";
  file << "# angle_floor = " << echo(params.angle_floor) << "\n";
  file << "# n_max = " << (ds.n_max > 0 ? std::to_string(ds.n_max) : std::string("auto")) << "\n";
  file << "# columns: t x y z theta_x theta_y theta_z\n";
  for (const dynamics::TrajectoryRecord& r : trajectory.records) {
    file << fmt(r.t);
    for (int c = 0; c < 3; ++c) file << ' ' << fmt(r.position[c]);
    for (int c = 0; c < 3; ++c) file << ' ' << fmt(r.angles[c]);
    file << "\n";
  }

  const char* reason = "";
  switch (trajectory.termination) {
    case dynamics::TerminationReason::converged_5pct: reason = "converged_5pct"; break;
    case dynamics::TerminationReason::reached_t_end: reason = "reached_t_end"; break;
    case dynamics::TerminationReason::below_min_interdistance:
      reason = "below_min_interdistance";
      break;
  }

  if (opts.quiet) return;
  const dynamics::TrajectoryRecord& last = trajectory.records.back();
  out << "termination: " << reason << " at t = " << echo(last.t) << " s ("
      << trajectory.records.size() << " records)\n";
  out << "final position = [ " << fmt(last.position.x()) << ' ' << fmt(last.position.y()) << ' '
      << fmt(last.position.z()) << " ] m\n";
  out << "final angles = [ " << fmt(last.angles.x()) << ' ' << fmt(last.angles.y()) << ' '
      << fmt(last.angles.z()) << " ] rad\n";
  out << "wrote " << path.string() << "\n";
}

}  // namespace axiphor::runner
