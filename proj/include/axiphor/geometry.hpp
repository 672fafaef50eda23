// SPDX-FileCopyrightText: Copyright (c) 2026 axiphor contributors
// SPDX-License-Identifier: Apache-2.0
//
// Axisymmetric particle geometry. The meridian is the image of
// w(gamma) = sum_j c_j e^{i (2-j) gamma}, gamma in [0, pi], with z = Re w and
// rho = Im w; the surface is its revolution about the z axis. c_1 equals the
// averaged radius, c = [a] is the sphere of radius a.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "axiphor/common.hpp"

namespace axiphor::geometry {

// Validated at construction: c_1 > 0, rho > 0 strictly inside (0, pi), the
// curve stays simple (polar angle increases monotonically along gamma).
struct MappingCoefficients {
  std::vector<double> c;
};

MappingCoefficients make_mapping(std::vector<double> c);

struct MeridianSample {
  double gamma;
  double rho, z;
  double normal_rho, normal_z;  // outward unit normal in the meridian plane
  double arc_jacobian;          // |w'(gamma)|
};

MeridianSample meridian(const MappingCoefficients& map, double gamma);

// Largest distance from the mapping origin to the surface.
double max_radius(const MappingCoefficients& map);

struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<Vec3> facet_normals;
};

// Watertight revolution mesh with consistent outward orientation;
// n_theta >= 2 meridian subdivisions, n_phi >= 3 azimuthal ones.
SurfaceMesh build_mesh(const MappingCoefficients& map, int n_theta, int n_phi);

void export_stl(const SurfaceMesh& mesh, const std::string& path);

struct MassProperties {
  double volume;              // true solid volume
  double mass;                // rho_p * volume
  double gravity_mass;        // mass entering the weight (see flag below)
  double center_z;            // centroid offset along the symmetry axis
  double inertia_axial;       // about the symmetry axis, through the centroid
  double inertia_transverse;  // about a transverse axis through the centroid
  double averaged_radius;     // c_1, the drag length scale
};

// use_sphere_gravity_volume replaces the weight volume by (4/3) pi c_1^3 (the
// averaged-radius sphere); inertia and mass always use the true solid.
MassProperties mass_properties(const MappingCoefficients& map, double rho_p,
                               bool use_sphere_gravity_volume);

}  // namespace axiphor::geometry
