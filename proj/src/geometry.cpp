// SPDX-FileCopyrightText: Copyright (c) 2026 axiphor contributors
// SPDX-License-Identifier: Apache-2.0

#include "axiphor/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "axiphor/specfun.hpp"

namespace axiphor::geometry {

namespace {

constexpr int kValidationGrid = 4096;

struct Point {
  double rho, z, drho, dz;
};

Point eval_map(const std::vector<double>& c, double gamma) {
  Point p{0.0, 0.0, 0.0, 0.0};
  for (size_t j = 0; j < c.size(); ++j) {
    const double k = 2.0 - static_cast<double>(j + 1);
    const double arg = k * gamma;
    p.z += c[j] * std::cos(arg);
    p.rho += c[j] * std::sin(arg);
    p.dz += -c[j] * k * std::sin(arg);
    p.drho += c[j] * k * std::cos(arg);
  }
  return p;
}

}  // namespace

MappingCoefficients make_mapping(std::vector<double> c) {
  if (c.empty()) throw GeometryError("mapping: coefficient list is empty");
  for (double v : c)
    if (!std::isfinite(v)) throw GeometryError("mapping: coefficients must be finite");
  if (c[0] <= 0.0) throw GeometryError("mapping: averaged radius c_1 must be positive");

  // rho > 0 strictly inside and theta(gamma) monotone: both are required for
  // a simple star-like surface of revolution. Report the offending range.
  double bad_lo = -1.0, bad_hi = -1.0;
  double prev_theta = 0.0;
  bool monotone = true;
  for (int i = 1; i < kValidationGrid; ++i) {
    const double gamma = kPi * i / kValidationGrid;
    const Point p = eval_map(c, gamma);
    if (p.rho <= 0.0) {
      if (bad_lo < 0.0) bad_lo = gamma;
      bad_hi = gamma;
    }
    const double theta = std::atan2(p.rho, p.z);
    if (i > 1 && theta < prev_theta - 1e-12 && bad_lo < 0.0) {
      monotone = false;
      bad_lo = bad_hi = gamma;
    }
    prev_theta = theta;
  }
  if (bad_lo >= 0.0) {
    std::ostringstream msg;
    msg << "mapping: " << (monotone ? "meridian radius rho() is non-positive" : "meridian self-intersects")
        << " for gamma in [" << bad_lo << ", " << bad_hi << "] rad";
    throw GeometryError(msg.str());
  }
  return MappingCoefficients{std::move(c)};
}

MeridianSample meridian(const MappingCoefficients& map, double gamma) {
  if (!(gamma >= 0.0 && gamma <= kPi))
    throw DomainError("meridian: gamma outside [0, pi]");
  const Point p = eval_map(map.c, gamma);
  MeridianSample s;
  s.gamma = gamma;
  s.rho = p.rho;
  s.z = p.z;
  s.arc_jacobian = std::hypot(p.drho, p.dz);
  // outward normal is the tangent rotated by -90 deg in the (z, rho) plane
  s.normal_rho = -p.dz / s.arc_jacobian;
  s.normal_z = p.drho / s.arc_jacobian;
  return s;
}

double max_radius(const MappingCoefficients& map) {
  double r = 0.0;
  for (int i = 0; i <= kValidationGrid; ++i) {
    const Point p = eval_map(map.c, kPi * i / kValidationGrid);
    r = std::max(r, std::hypot(p.rho, p.z));
  }
  return r;
}

SurfaceMesh build_mesh(const MappingCoefficients& map, int n_theta, int n_phi) {
  if (n_theta < 2 || n_phi < 3)
    throw DomainError("build_mesh: need n_theta >= 2 and n_phi >= 3");
  SurfaceMesh mesh;
  const double z_top = eval_map(map.c, 0.0).z;
  const double z_bot = eval_map(map.c, kPi).z;
  mesh.vertices.emplace_back(0.0, 0.0, z_top);
  for (int i = 1; i < n_theta; ++i) {
    const Point p = eval_map(map.c, kPi * i / n_theta);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * kPi * j / n_phi;
      mesh.vertices.emplace_back(p.rho * std::cos(phi), p.rho * std::sin(phi), p.z);
    }
  }
  mesh.vertices.emplace_back(0.0, 0.0, z_bot);
  const int bottom = static_cast<int>(mesh.vertices.size()) - 1;
  auto ring = [&](int i, int j) { return 1 + (i - 1) * n_phi + (j % n_phi); };

  for (int j = 0; j < n_phi; ++j)
    mesh.triangles.push_back({0, ring(1, j), ring(1, j + 1)});
  for (int i = 1; i < n_theta - 1; ++i)
    for (int j = 0; j < n_phi; ++j) {
      mesh.triangles.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
      mesh.triangles.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
    }
  for (int j = 0; j < n_phi; ++j)
    mesh.triangles.push_back({bottom, ring(n_theta - 1, j + 1), ring(n_theta - 1, j)});

  double six_vol = 0.0;
  for (const auto& t : mesh.triangles)
    six_vol += mesh.vertices[t[0]].dot(mesh.vertices[t[1]].cross(mesh.vertices[t[2]]));
  if (six_vol < 0.0)
    for (auto& t : mesh.triangles) std::swap(t[1], t[2]);

  mesh.facet_normals.reserve(mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    const Vec3 n = (mesh.vertices[t[1]] - mesh.vertices[t[0]])
                       .cross(mesh.vertices[t[2]] - mesh.vertices[t[0]]);
    const double len = n.norm();
    mesh.facet_normals.push_back(len > 0.0 ? Vec3(n / len) : Vec3(0.0, 0.0, 1.0));
  }
  return mesh;
}

void export_stl(const SurfaceMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("export_stl: cannot open '" + path + "' for writing");
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9e", v);
    return std::string(buf);
  };
  out << "solid particle\n";
  for (size_t i = 0; i < mesh.triangles.size(); ++i) {
    const Vec3& n = mesh.facet_normals[i];
    out << "  facet normal " << fmt(n.x()) << ' ' << fmt(n.y()) << ' ' << fmt(n.z()) << '\n';
    out << "    outer loop\n";
    for (int k = 0; k < 3; ++k) {
      const Vec3& v = mesh.vertices[mesh.triangles[i][k]];
      out << "      vertex " << fmt(v.x()) << ' ' << fmt(v.y()) << ' ' << fmt(v.z()) << '\n';
    }
    out << "    endloop\n";
    out << "  endfacet\n";
  }
  out << "endsolid particle\n";
  if (!out.flush()) throw IoError("export_stl: write to '" + path + "' failed");
}

MassProperties mass_properties(const MappingCoefficients& map, double rho_p,
                               bool use_sphere_gravity_volume) {
  if (!(rho_p > 0.0) || !std::isfinite(rho_p))
    throw DomainError("mass_properties: particle density must be positive");

  // Solid-of-revolution integrals over the meridian; the integrands are short
  // trigonometric polynomials, so a fixed 256-point rule is exact in practice.
  const auto gl = specfun::gauss_legendre(256);
  double vol = 0.0, zmom = 0.0, iax = 0.0, itr = 0.0;
  for (size_t q = 0; q < gl.nodes.size(); ++q) {
    const double gamma = 0.5 * kPi * (gl.nodes[q] + 1.0);
    const double w = 0.5 * kPi * gl.weights[q];
    const Point p = eval_map(map.c, gamma);
    const double r2 = p.rho * p.rho;
    vol += w * (-kPi * r2 * p.dz);
    zmom += w * (-kPi * r2 * p.z * p.dz);
    iax += w * (-0.5 * kPi * r2 * r2 * p.dz);
    itr += w * (-(0.25 * kPi * r2 * r2 + kPi * r2 * p.z * p.z) * p.dz);
  }

  MassProperties mp;
  mp.volume = vol;
  mp.mass = rho_p * vol;
  mp.center_z = zmom / vol;
  mp.inertia_axial = rho_p * iax;
  mp.inertia_transverse = rho_p * itr - mp.mass * mp.center_z * mp.center_z;
  const double a = map.c[0];
  mp.averaged_radius = a;
  mp.gravity_mass =
      use_sphere_gravity_volume ? rho_p * (4.0 / 3.0) * kPi * a * a * a : mp.mass;
  return mp;
}

}  // namespace axiphor::geometry
