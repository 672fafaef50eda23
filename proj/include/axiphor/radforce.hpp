// SPDX-FileCopyrightText: Copyright (c) 2026 axiphor contributors
// SPDX-License-Identifier: Apache-2.0
//
// Time-averaged acoustic radiation force and torque. The primary path
// integrates the momentum flux of the total field over a sphere enclosing the
// particle; the Gor'kov potential provides the small-particle cross-check.

#pragma once

#include <functional>
#include <vector>

#include "axiphor/common.hpp"
#include "axiphor/wavefield.hpp"

namespace axiphor::radforce {

struct ForceTorque {
  Vec3 force;   // N
  Vec3 torque;  // N m, about the shared expansion origin
};

// Monopole/dipole contrast factors; the rigid fixed sphere has f1 = f2 = 1.
struct GorkovCoefficients {
  double f1 = 1.0;
  double f2 = 1.0;
};

// Momentum-flux quadrature over the sphere of the given radius centered on
// the shared expansion origin. Both expansions must agree in origin and
// wavenumber; the incident one is regular, the scattered one outgoing. The
// result is radius-independent as long as the sphere clears the particle and
// encloses no sources (see validate_quadrature_radius).
ForceTorque force_torque(const wavefield::WaveExpansion& incident,
                         const wavefield::WaveExpansion& scattered,
                         const wavefield::Medium& medium, double f, double radius);

// Guard for the quadrature sphere: it must clear the particle extent and stay
// short of every source distance. Throws GeometryError naming the violation.
void validate_quadrature_radius(double radius, double particle_extent,
                                const std::vector<double>& source_distances);

using PvSampler = std::function<wavefield::PressureVelocity(const Vec3&)>;

// Gor'kov potential force on a small sphere of the given radius:
//   U = 2 pi a^3 [ f1 <p^2> / (3 rho0 c0^2) - f2 rho0 <|v|^2> / 2 ],
// differentiated by central differences with step 1e-3/k. Valid for
// k a << 1 (warns above 0.3); a traveling plane wave yields zero, the
// potential carries no scattering force.
Vec3 gorkov_force(const PvSampler& field, double particle_radius,
                  const GorkovCoefficients& gc, const wavefield::Medium& medium,
                  double k, const Vec3& position);

}  // namespace axiphor::radforce
