// SPDX-FileCopyrightText: Copyright (c) 2026 axiphor contributors
// SPDX-License-Identifier: Apache-2.0

#include "axiphor/radforce.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "axiphor/specfun.hpp"

namespace axiphor::radforce {

ForceTorque force_torque(const wavefield::WaveExpansion& incident,
                         const wavefield::WaveExpansion& scattered,
                         const wavefield::Medium& medium, double f, double radius) {
  if (incident.kind != wavefield::WaveKind::Regular ||
      scattered.kind != wavefield::WaveKind::Outgoing)
    throw DomainError("force_torque: needs a regular incident and an outgoing scattered "
                      "expansion");
  if ((incident.origin - scattered.origin).norm() > 1e-12)
    throw DomainError("force_torque: expansions must share their origin");
  if (std::abs(incident.k - scattered.k) > 1e-9 * incident.k)
    throw DomainError("force_torque: expansions must share their wavenumber");
  if (!(radius > 0.0)) throw DomainError("force_torque: radius must be positive");

  // The integrand is bilinear in the fields, degree <= 2 n_max in the
  // harmonics: Gauss-Legendre in cos(theta) and a uniform azimuthal rule of
  // more than 2 n_max + 1 points integrate it exactly, which is what makes
  // the result radius-independent to rounding.
  const int n_max = std::max(incident.n_max, scattered.n_max);
  const int n_theta = 2 * n_max + 2;
  const int n_phi = 4 * n_max + 4;
  const auto rule = specfun::gauss_legendre(n_theta);
  const double w_phi = 2.0 * kPi / n_phi;

  const double rho0 = medium.rho0;
  const double c0 = medium.c0;
  Vec3 force = Vec3::Zero();
  Vec3 torque = Vec3::Zero();
  for (int i = 0; i < n_theta; ++i) {
    const double ct = rule.nodes[i];
    const double st = std::sqrt(1.0 - ct * ct);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = w_phi * j;
      const Vec3 rhat(st * std::cos(phi), st * std::sin(phi), ct);
      const Vec3 x = incident.origin + radius * rhat;
      const auto pv_i = wavefield::evaluate_expansion(incident, medium, f, x);
      const auto pv_s = wavefield::evaluate_expansion(scattered, medium, f, x);
      const Complex p = pv_i.p + pv_s.p;
      const CVec3 v = pv_i.v + pv_s.v;

      const double w = rule.weights[i] * w_phi;
      const double v2 = v.squaredNorm();
      const double p2 = std::norm(p) / (4.0 * rho0 * c0 * c0) - rho0 * v2 / 4.0;
      const Complex vn = v(0) * rhat(0) + v(1) * rhat(1) + v(2) * rhat(2);
      const Vec3 momentum = 0.5 * (v * std::conj(vn)).real();
      force -= w * radius * radius * (p2 * rhat + rho0 * momentum);

      const CVec3 rxv = rhat.cast<Complex>().cross(v);
      torque -= w * rho0 * radius * radius * radius *
                0.5 * (rxv * std::conj(vn)).real();
    }
  }
  return {force, torque};
}

void validate_quadrature_radius(double radius, double particle_extent,
                                const std::vector<double>& source_distances) {
  if (!(radius > particle_extent)) {
    std::ostringstream msg;
    msg << "quadrature radius " << radius << " m does not clear the particle extent "
        << particle_extent << " m";
    throw GeometryError(msg.str());
  }
  for (double d : source_distances)
    if (radius >= d) {
      std::ostringstream msg;
      msg << "quadrature radius " << radius << " m reaches a source at " << d << " m";
      throw GeometryError(msg.str());
    }
}

Vec3 gorkov_force(const PvSampler& field, double particle_radius,
                  const GorkovCoefficients& gc, const wavefield::Medium& medium,
                  double k, const Vec3& position) {
  if (!(k > 0.0)) throw DomainError("gorkov_force: wavenumber must be positive");
  if (!(particle_radius > 0.0))
    throw DomainError("gorkov_force: particle radius must be positive");
  if (k * particle_radius > 0.3)
    std::cerr << "warning: gorkov_force: k a = " << k * particle_radius
              << " exceeds 0.3, the long-wavelength assumption degrades\n";
  const double a3 = particle_radius * particle_radius * particle_radius;
  const auto potential = [&](const Vec3& x) {
    const auto pv = field(x);
    const double p2 = 0.5 * std::norm(pv.p);
    const double v2 = 0.5 * pv.v.squaredNorm();
    return 2.0 * kPi * a3 *
           (gc.f1 * p2 / (3.0 * medium.rho0 * medium.c0 * medium.c0) -
            gc.f2 * medium.rho0 * v2 / 2.0);
  };
  const double h = 1e-3 / k;
  Vec3 grad;
  for (int i = 0; i < 3; ++i) {
    Vec3 dx = Vec3::Zero();
    dx[i] = h;
    grad[i] = (potential(position + dx) - potential(position - dx)) / (2.0 * h);
  }
  return -grad;
}

}  // namespace axiphor::radforce
