// SPDX-FileCopyrightText: Copyright (c) 2026 axiphor contributors
// SPDX-License-Identifier: Apache-2.0

#include "axiphor/scene.hpp"

#include <fstream>
#include <sstream>

namespace axiphor::scene {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw DomainError("scene config: " + where + ": " + what);
}

// Rejects unknown keys so a typo cannot silently fall back to a default.
void check_keys(const ordered_json& j, const std::string& where,
                std::initializer_list<const char*> known) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) fail(where, "unknown key \"" + item.key() + "\"");
  }
}

double get_number(const ordered_json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

int get_int(const ordered_json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

std::string get_string(const ordered_json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

Vec3 get_vec3(const ordered_json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) fail(where, "expected an array of 3 numbers");
  return Vec3(get_number(j[0], where), get_number(j[1], where), get_number(j[2], where));
}

std::vector<double> get_numbers(const ordered_json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(get_number(v, where));
  return out;
}

Complex get_amplitude(const ordered_json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return Complex(get_number(j[0], where), get_number(j[1], where));
  fail(where, "expected a number or [re, im]");
}

ParticleConfig parse_particle(const ordered_json& j) {
  ParticleConfig p;
  check_keys(j, "particle", {"mapping_coefficients", "averaged_radius_override", "density"});
  if (j.contains("mapping_coefficients"))
    p.mapping_coefficients = get_numbers(j["mapping_coefficients"], "particle.mapping_coefficients");
  if (j.contains("averaged_radius_override") && !j["averaged_radius_override"].is_null())
    p.averaged_radius_override =
        get_number(j["averaged_radius_override"], "particle.averaged_radius_override");
  if (j.contains("density")) p.density = get_number(j["density"], "particle.density");
  return p;
}

void parse_medium(const ordered_json& j, SceneConfig& c) {
  check_keys(j, "medium", {"preset", "rho0", "c0", "mu", "name"});
  if (j.contains("preset")) {
    if (j.contains("rho0") || j.contains("c0") || j.contains("mu"))
      fail("medium", "give either a preset or explicit rho0/c0/mu, not both");
    c.medium_preset = get_string(j["preset"], "medium.preset");
    c.medium = wavefield::medium_preset(c.medium_preset);
    return;
  }
  for (const char* k : {"rho0", "c0", "mu"})
    if (!j.contains(k)) fail("medium", std::string("explicit medium needs \"") + k + "\"");
  c.medium_preset.clear();
  c.medium.rho0 = get_number(j["rho0"], "medium.rho0");
  c.medium.c0 = get_number(j["c0"], "medium.c0");
  c.medium.mu = get_number(j["mu"], "medium.mu");
  c.medium.name = j.contains("name") ? get_string(j["name"], "medium.name") : "custom";
}

void parse_source(const ordered_json& j, SceneConfig& c) {
  check_keys(j, "source", {"plane", "array"});
  if (j.contains("plane") == j.contains("array"))
    fail("source", "exactly one of \"plane\" or \"array\" must be given");
  if (j.contains("plane")) {
    const ordered_json& p = j["plane"];
    check_keys(p, "source.plane", {"amplitude", "direction"});
    wavefield::PlaneWave wave{Complex(1.0, 0.0), Vec3(0, 0, 1)};
    if (p.contains("amplitude")) wave.amplitude = get_amplitude(p["amplitude"], "source.plane.amplitude");
    if (p.contains("direction")) wave.direction = get_vec3(p["direction"], "source.plane.direction");
    c.plane = wave;
    return;
  }
  const ordered_json& a = j["array"];
  check_keys(a, "source.array",
             {"radius", "positions", "v0", "phase_delay", "amplitude_ratio", "interdistance"});
  if (!a.contains("positions")) fail("source.array", "needs \"positions\"");
  wavefield::TransducerArray arr;
  arr.element_radius = a.contains("radius") ? get_number(a["radius"], "source.array.radius") : 0.005;
  arr.v0 = a.contains("v0") ? get_number(a["v0"], "source.array.v0") : 1.5;
  arr.interdistance =
      a.contains("interdistance") ? get_number(a["interdistance"], "source.array.interdistance") : 0.020;
  const ordered_json& pos = a["positions"];
  if (!pos.is_array() || pos.empty()) fail("source.array.positions", "expected a non-empty array");
  for (const auto& p : pos) arr.positions.push_back(get_vec3(p, "source.array.positions"));
  arr.phase_delay = a.contains("phase_delay")
                        ? get_numbers(a["phase_delay"], "source.array.phase_delay")
                        : std::vector<double>(arr.positions.size(), 0.0);
  arr.amplitude_ratio = a.contains("amplitude_ratio")
                            ? get_numbers(a["amplitude_ratio"], "source.array.amplitude_ratio")
                            : std::vector<double>(arr.positions.size(), 1.0);
  wavefield::validate_array(arr);
  c.array = arr;
}

}  // namespace

SceneConfig parse_scene(const ordered_json& j) {
  SceneConfig c;
  check_keys(j, "top level",
             {"particle", "boundary", "medium", "source", "frequency", "pose", "dynamics",
              "numerics", "outputs", "field"});

  if (j.contains("particle")) c.particle = parse_particle(j["particle"]);

  if (j.contains("boundary")) {
    const std::string b = get_string(j["boundary"], "boundary");
    if (b == "sound_hard")
      c.boundary = scatter::BoundaryKind::SoundHard;
    else if (b == "sound_soft")
      c.boundary = scatter::BoundaryKind::SoundSoft;
    else
      fail("boundary", "expected \"sound_hard\" or \"sound_soft\", got \"" + b + "\"");
  }

  if (j.contains("medium")) parse_medium(j["medium"], c);

  if (j.contains("source"))
    parse_source(j["source"], c);
  else
    c.plane = wavefield::PlaneWave{Complex(1.0, 0.0), Vec3(0, 0, 1)};

  if (j.contains("frequency")) c.frequency = get_number(j["frequency"], "frequency");
  if (!(c.frequency > 0.0)) fail("frequency", "must be positive");

  if (j.contains("pose")) {
    const ordered_json& p = j["pose"];
    check_keys(p, "pose", {"initial_position", "initial_orientation"});
    if (p.contains("initial_position"))
      c.pose.initial_position = get_vec3(p["initial_position"], "pose.initial_position");
    if (p.contains("initial_orientation"))
      c.pose.initial_orientation = get_vec3(p["initial_orientation"], "pose.initial_orientation");
  }

  if (j.contains("dynamics")) {
    const ordered_json& d = j["dynamics"];
    check_keys(d, "dynamics", {"dt", "t_end", "g"});
    if (d.contains("dt")) c.dynamics.dt = get_number(d["dt"], "dynamics.dt");
    if (d.contains("t_end")) c.dynamics.t_end = get_number(d["t_end"], "dynamics.t_end");
    if (d.contains("g")) c.dynamics.g = get_number(d["g"], "dynamics.g");
  }

  if (j.contains("numerics")) {
    const ordered_json& n = j["numerics"];
    check_keys(n, "numerics", {"n_max", "quadrature_radii"});
    if (n.contains("n_max")) c.numerics.n_max = get_int(n["n_max"], "numerics.n_max");
    if (n.contains("quadrature_radii")) {
      c.numerics.quadrature_radii = get_numbers(n["quadrature_radii"], "numerics.quadrature_radii");
      if (!c.numerics.quadrature_radii.empty() && c.numerics.quadrature_radii.size() != 2)
        fail("numerics.quadrature_radii", "expected exactly two radii");
    }
  }

  if (j.contains("outputs")) {
    const ordered_json& o = j["outputs"];
    check_keys(o, "outputs",
               {"directory", "trajectory_filename", "particle_filename", "force_filename"});
    if (o.contains("directory")) c.outputs.directory = get_string(o["directory"], "outputs.directory");
    if (o.contains("trajectory_filename"))
      c.outputs.trajectory_filename = get_string(o["trajectory_filename"], "outputs.trajectory_filename");
    if (o.contains("particle_filename"))
      c.outputs.particle_filename = get_string(o["particle_filename"], "outputs.particle_filename");
    if (o.contains("force_filename"))
      c.outputs.force_filename = get_string(o["force_filename"], "outputs.force_filename");
  }

  if (j.contains("field")) {
    const ordered_json& f = j["field"];
    check_keys(f, "field", {"x_min", "x_max", "z_min", "z_max", "nx", "nz", "filename"});
    if (f.contains("x_min")) c.field.x_min = get_number(f["x_min"], "field.x_min");
    if (f.contains("x_max")) c.field.x_max = get_number(f["x_max"], "field.x_max");
    if (f.contains("z_min")) c.field.z_min = get_number(f["z_min"], "field.z_min");
    if (f.contains("z_max")) c.field.z_max = get_number(f["z_max"], "field.z_max");
    if (f.contains("nx")) c.field.nx = get_int(f["nx"], "field.nx");
    if (f.contains("nz")) c.field.nz = get_int(f["nz"], "field.nz");
    if (f.contains("filename")) c.field.filename = get_string(f["filename"], "field.filename");
    if (c.field.nx < 1 || c.field.nz < 1) fail("field", "grid needs nx, nz >= 1");
  }

  return c;
}

SceneConfig scene_from_string(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("scene config: invalid JSON: ") + e.what());
  }
  return parse_scene(j);
}

SceneConfig load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("scene config: cannot open \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return scene_from_string(buffer.str());
}

nlohmann::ordered_json serialize_scene(const SceneConfig& c) {
  ordered_json j;

  ordered_json particle;
  particle["mapping_coefficients"] = c.particle.mapping_coefficients;
  particle["averaged_radius_override"] =
      c.particle.averaged_radius_override ? ordered_json(*c.particle.averaged_radius_override)
                                          : ordered_json(nullptr);
  particle["density"] = c.particle.density;
  j["particle"] = particle;

  j["boundary"] = c.boundary == scatter::BoundaryKind::SoundHard ? "sound_hard" : "sound_soft";

  ordered_json medium;
  if (!c.medium_preset.empty()) {
    medium["preset"] = c.medium_preset;
  } else {
    medium["rho0"] = c.medium.rho0;
    medium["c0"] = c.medium.c0;
    medium["mu"] = c.medium.mu;
    medium["name"] = c.medium.name;
  }
  j["medium"] = medium;

  ordered_json source;
  if (c.plane) {
    ordered_json plane;
    plane["amplitude"] = {c.plane->amplitude.real(), c.plane->amplitude.imag()};
    plane["direction"] = {c.plane->direction.x(), c.plane->direction.y(), c.plane->direction.z()};
    source["plane"] = plane;
  } else if (c.array) {
    ordered_json array;
    array["radius"] = c.array->element_radius;
    ordered_json positions = ordered_json::array();
    for (const Vec3& p : c.array->positions) positions.push_back({p.x(), p.y(), p.z()});
    array["positions"] = positions;
    array["v0"] = c.array->v0;
    array["phase_delay"] = c.array->phase_delay;
    array["amplitude_ratio"] = c.array->amplitude_ratio;
    array["interdistance"] = c.array->interdistance;
    source["array"] = array;
  }
  j["source"] = source;

  j["frequency"] = c.frequency;

  ordered_json pose;
  pose["initial_position"] = {c.pose.initial_position.x(), c.pose.initial_position.y(),
                              c.pose.initial_position.z()};
  pose["initial_orientation"] = {c.pose.initial_orientation.x(), c.pose.initial_orientation.y(),
                                 c.pose.initial_orientation.z()};
  j["pose"] = pose;

  ordered_json dynamics;
  dynamics["dt"] = c.dynamics.dt;
  dynamics["t_end"] = c.dynamics.t_end;
  dynamics["g"] = c.dynamics.g;
  j["dynamics"] = dynamics;

  ordered_json numerics;
  numerics["n_max"] = c.numerics.n_max;
  numerics["quadrature_radii"] = c.numerics.quadrature_radii;
  j["numerics"] = numerics;

  ordered_json outputs;
  outputs["directory"] = c.outputs.directory;
  outputs["trajectory_filename"] = c.outputs.trajectory_filename;
  outputs["particle_filename"] = c.outputs.particle_filename;
  outputs["force_filename"] = c.outputs.force_filename;
  j["outputs"] = outputs;

  ordered_json field;
  field["x_min"] = c.field.x_min;
  field["x_max"] = c.field.x_max;
  field["z_min"] = c.field.z_min;
  field["z_max"] = c.field.z_max;
  field["nx"] = c.field.nx;
  field["nz"] = c.field.nz;
  field["filename"] = c.field.filename;
  j["field"] = field;

  return j;
}

std::string scene_to_string(const SceneConfig& c) { return serialize_scene(c).dump(2) + "\n"; }

geometry::MappingCoefficients effective_mapping(const ParticleConfig& particle) {
  std::vector<double> c = particle.mapping_coefficients;
  if (particle.averaged_radius_override) {
    if (c.empty() || !(c[0] > 0.0))
      throw GeometryError("mapping: averaged radius c_1 must be positive");
    const double scale = *particle.averaged_radius_override / c[0];
    for (double& v : c) v *= scale;
  }
  return geometry::make_mapping(std::move(c));
}

}  // namespace axiphor::scene
