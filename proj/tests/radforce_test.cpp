// SPDX-FileCopyrightText: Copyright (c) 2026 axiphor contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "axiphor/radforce.hpp"
#include "axiphor/scatter.hpp"
#include "support/approx.hpp"

using namespace axiphor;
using namespace axiphor::radforce;
using scatter::BoundaryKind;
using scatter::TMatrix;
using wavefield::WaveExpansion;
using wavefield::WaveKind;

namespace {

constexpr double kAir40kHz = 2.0 * kPi * 40000.0 / 343.0;

WaveExpansion plane_wave(double k, int n_max, const Vec3& direction, const Vec3& origin,
                         Complex amplitude = 1.0) {
  wavefield::PlaneWave pw;
  pw.amplitude = amplitude;
  pw.direction = direction.normalized();
  return wavefield::plane_wave_coefficients(pw, k, n_max, origin);
}

WaveExpansion add(const WaveExpansion& a, const WaveExpansion& b) {
  WaveExpansion out = a;
  for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
  return out;
}

double frequency_of(double k, const wavefield::Medium& medium) {
  return k * medium.c0 / (2.0 * kPi);
}

}  // namespace

TEST_CASE("plane wave thrust on a rigid sphere is axial") {
  const auto air = wavefield::medium_preset("air");
  const double a = 0.002;
  const int n_max = wavefield::default_truncation(kAir40kHz, a);
  const TMatrix t = scatter::tmatrix_nullfield(geometry::make_mapping({a}),
                                               BoundaryKind::SoundHard, kAir40kHz, n_max);
  const WaveExpansion inc = plane_wave(kAir40kHz, n_max, Vec3::UnitZ(), Vec3::Zero());
  const WaveExpansion sc = t.apply(inc);
  const double f = frequency_of(kAir40kHz, air);
  const ForceTorque ft = force_torque(inc, sc, air, f, 2.0 * a);

  CHECK(ft.force.z() > 0.0);
  CHECK(std::abs(ft.force.x()) < 1e-10 * ft.force.z());
  CHECK(std::abs(ft.force.y()) < 1e-10 * ft.force.z());
  CHECK(ft.torque.norm() < 1e-10 * ft.force.z() * a);

  // A source-free field alone carries no net momentum through a closed
  // sphere: the incident-only flux must vanish.
  const WaveExpansion no_scatter =
      wavefield::make_expansion(WaveKind::Outgoing, n_max, kAir40kHz, Vec3::Zero());
  const ForceTorque empty = force_torque(inc, no_scatter, air, f, 2.0 * a);
  CHECK(empty.force.norm() < 1e-10 * ft.force.z());
  CHECK(empty.torque.norm() < 1e-10 * ft.force.z() * a);
}

TEST_CASE("force and torque are radius independent") {
  const auto air = wavefield::medium_preset("air");
  const auto map = geometry::make_mapping({0.002, 0.0, 0.0004});
  const double extent = geometry::max_radius(map);
  const int n_max = wavefield::default_truncation(kAir40kHz, extent);
  const TMatrix t =
      scatter::tmatrix_nullfield(map, BoundaryKind::SoundHard, kAir40kHz, n_max);
  const auto o = transform::euler_to_rotation(Vec3(kPi / 6, 0.0, 0.0));
  const WaveExpansion inc = plane_wave(kAir40kHz, n_max, Vec3::UnitZ(), Vec3::Zero());
  const WaveExpansion sc = scatter::scatter_lab_frame(t, inc, o);
  const double f = frequency_of(kAir40kHz, air);

  const ForceTorque near = force_torque(inc, sc, air, f, 2.0 * extent);
  const ForceTorque far = force_torque(inc, sc, air, f, 3.4 * extent);
  // The tilted ellipsoid feels a genuine restoring torque; both vectors must
  // agree between the two spheres to quadrature rounding.
  CHECK(near.torque.norm() > 0.0);
  CHECK((near.force - far.force).norm() < 1e-6 * near.force.norm());
  CHECK((near.torque - far.torque).norm() < 1e-6 * near.torque.norm());
}

TEST_CASE("doubling the amplitude quadruples force and torque") {
  const auto air = wavefield::medium_preset("air");
  const auto map = geometry::make_mapping({0.002, 0.0, 0.0004});
  const double extent = geometry::max_radius(map);
  const int n_max = wavefield::default_truncation(kAir40kHz, extent);
  const TMatrix t =
      scatter::tmatrix_nullfield(map, BoundaryKind::SoundHard, kAir40kHz, n_max);
  const auto o = transform::euler_to_rotation(Vec3(0.4, -0.2, 0.0));
  const double f = frequency_of(kAir40kHz, air);

  const WaveExpansion inc1 = plane_wave(kAir40kHz, n_max, Vec3::UnitZ(), Vec3::Zero());
  const WaveExpansion inc2 =
      plane_wave(kAir40kHz, n_max, Vec3::UnitZ(), Vec3::Zero(), 2.0);
  const ForceTorque ft1 =
      force_torque(inc1, scatter::scatter_lab_frame(t, inc1, o), air, f, 2.0 * extent);
  const ForceTorque ft2 =
      force_torque(inc2, scatter::scatter_lab_frame(t, inc2, o), air, f, 2.0 * extent);
  CHECK((ft2.force - 4.0 * ft1.force).norm() < 1e-12 * ft2.force.norm());
  CHECK((ft2.torque - 4.0 * ft1.torque).norm() < 1e-12 * ft2.torque.norm());
}

TEST_CASE("single-m fields push axially and spin nothing") {
  const auto air = wavefield::medium_preset("air");
  const auto map = geometry::make_mapping({0.002, 0.0, 0.0004});
  const double extent = geometry::max_radius(map);
  const int n_max = wavefield::default_truncation(kAir40kHz, extent);
  const TMatrix t =
      scatter::tmatrix_nullfield(map, BoundaryKind::SoundHard, kAir40kHz, n_max);
  // An m-pure incident field: revolution symmetry preserves m through the
  // scattering, so no momentum-flux component that mixes neighboring m
  // survives: F_x = F_y = 0 and every torque component vanishes.
  WaveExpansion inc =
      wavefield::make_expansion(WaveKind::Regular, n_max, kAir40kHz, Vec3::Zero());
  for (int n = 2; n <= n_max; ++n)
    inc.at(n, 2) = std::pow(0.6, n) * Complex(1.0, 0.4);
  const WaveExpansion sc = t.apply(inc);
  const double f = frequency_of(kAir40kHz, air);
  const ForceTorque ft = force_torque(inc, sc, air, f, 2.0 * extent);

  const double fscale = std::abs(ft.force.z());
  CHECK(fscale > 0.0);
  CHECK(std::abs(ft.force.x()) < 1e-10 * fscale);
  CHECK(std::abs(ft.force.y()) < 1e-10 * fscale);
  CHECK(std::abs(ft.torque.z()) < 1e-10 * fscale * extent);
  CHECK(ft.torque.norm() < 1e-10 * fscale * extent);
}

TEST_CASE("gorkov oracle matches the partial-wave force at ka = 0.05") {
  const auto air = wavefield::medium_preset("air");
  const double a = 0.002;
  const double k = 0.05 / a;
  const double f = frequency_of(k, air);
  const double z0 = (2.0 * kPi / k) / 8.0;  // lambda / 8
  const Vec3 pos(0.0, 0.0, z0);
  const Complex p0 = 1.0;

  // Partial-wave route: rigid sphere in the standing wave of two counter
  // propagating unit plane waves, expanded about the particle.
  const int n_max = wavefield::default_truncation(k, a);
  const WaveExpansion inc = add(plane_wave(k, n_max, Vec3::UnitZ(), pos, p0),
                                plane_wave(k, n_max, -Vec3::UnitZ(), pos, p0));
  const TMatrix t =
      scatter::tmatrix_nullfield(geometry::make_mapping({a}), BoundaryKind::SoundHard,
                                 k, n_max);
  const ForceTorque full = force_torque(inc, t.apply(inc), air, f, 2.0 * a);

  // Gor'kov route: the analytic standing-wave sampler differentiated
  // numerically.
  const auto sampler = [&](const Vec3& x) {
    wavefield::PressureVelocity pv;
    const Complex up = p0 * std::exp(Complex(0.0, k * x.z()));
    const Complex dn = p0 * std::exp(Complex(0.0, -k * x.z()));
    pv.p = up + dn;
    pv.v = CVec3(0.0, 0.0, (up - dn) / (air.rho0 * air.c0));
    return pv;
  };
  const Vec3 fg = gorkov_force(sampler, a, GorkovCoefficients{}, air, k, pos);

  // Closed form for the rigid sphere, f1 = f2 = 1:
  //   F_z = 2 pi a^3 k (|p0|^2 / (rho0 c0^2)) (2/3 + 1) sin(2 k z0).
  const double closed = 2.0 * kPi * a * a * a * k * std::norm(p0) /
                        (air.rho0 * air.c0 * air.c0) * (5.0 / 3.0) *
                        std::sin(2.0 * k * z0);
  CHECK(fg.z() == rel(closed, 1e-6));
  CHECK(std::abs(fg.x()) < 1e-12 * std::abs(closed));
  CHECK(std::abs(fg.y()) < 1e-12 * std::abs(closed));
  CHECK(std::abs(full.force.z() - fg.z()) < 0.02 * std::abs(fg.z()));
  CHECK(full.force.head<2>().norm() < 1e-8 * std::abs(full.force.z()));

  // Stationary points of the potential: antinode (z = 0) and node (lambda/4).
  const Vec3 anti(0.0, 0.0, 0.0);
  const Vec3 node(0.0, 0.0, kPi / k / 2.0);
  CHECK(std::abs(gorkov_force(sampler, a, GorkovCoefficients{}, air, k, anti).z()) <
        1e-9 * std::abs(closed));
  CHECK(std::abs(gorkov_force(sampler, a, GorkovCoefficients{}, air, k, node).z()) <
        1e-9 * std::abs(closed));

  // A traveling plane wave has constant |p| and |v|: the potential is flat
  // and the Gor'kov force is identically zero (it carries no scattering
  // force), as is the force in a uniform field.
  const auto traveling = [&](const Vec3& x) {
    wavefield::PressureVelocity pv;
    pv.p = p0 * std::exp(Complex(0.0, k * x.z()));
    pv.v = CVec3(0.0, 0.0, pv.p / (air.rho0 * air.c0));
    return pv;
  };
  CHECK(gorkov_force(traveling, a, GorkovCoefficients{}, air, k, pos).norm() <
        1e-12 * std::abs(closed));
  const auto uniform = [&](const Vec3&) {
    wavefield::PressureVelocity pv;
    pv.p = p0;
    pv.v = CVec3::Zero();
    return pv;
  };
  CHECK(gorkov_force(uniform, a, GorkovCoefficients{}, air, k, pos).norm() == 0.0);
}

TEST_CASE("force and torque converge in truncation order") {
  const auto air = wavefield::medium_preset("air");
  const auto map = geometry::make_mapping({0.002, 0.0, 0.0004});
  const double extent = geometry::max_radius(map);
  const double f = frequency_of(kAir40kHz, air);
  const auto o = transform::euler_to_rotation(Vec3(kPi / 6, 0.0, 0.0));

  ForceTorque ft[2];
  int idx = 0;
  for (int n_max : {wavefield::default_truncation(kAir40kHz, extent),
                    wavefield::default_truncation(kAir40kHz, extent) + 4}) {
    const TMatrix t =
        scatter::tmatrix_nullfield(map, BoundaryKind::SoundHard, kAir40kHz, n_max);
    const WaveExpansion inc = plane_wave(kAir40kHz, n_max, Vec3::UnitZ(), Vec3::Zero());
    ft[idx++] = force_torque(inc, scatter::scatter_lab_frame(t, inc, o), air, f,
                             2.0 * extent);
  }
  CHECK((ft[0].force - ft[1].force).norm() < 1e-3 * ft[1].force.norm());
  CHECK((ft[0].torque - ft[1].torque).norm() < 1e-3 * ft[1].torque.norm());
}

TEST_CASE("axis-parallel cone feels no transverse force or torque") {
  const auto air = wavefield::medium_preset("air");
  const auto map = geometry::make_mapping({0.002, 0.0, 0.0, 0.00025});
  const double extent = geometry::max_radius(map);
  const int n_max = wavefield::default_truncation(kAir40kHz, extent);
  const TMatrix t =
      scatter::tmatrix_nullfield(map, BoundaryKind::SoundHard, kAir40kHz, n_max);
  const WaveExpansion inc = plane_wave(kAir40kHz, n_max, Vec3::UnitZ(), Vec3::Zero());
  const double f = frequency_of(kAir40kHz, air);
  const ForceTorque ft = force_torque(inc, t.apply(inc), air, f, 2.0 * extent);

  CHECK(ft.force.z() != 0.0);
  CHECK(ft.force.head<2>().norm() < 1e-8 * std::abs(ft.force.z()));
  CHECK(ft.torque.norm() < 1e-8 * std::abs(ft.force.z()) * extent);
}

TEST_CASE("quadrature sphere guards") {
  CHECK_THROWS_AS(validate_quadrature_radius(0.002, 0.0024, {}), GeometryError);
  CHECK_THROWS_AS(validate_quadrature_radius(0.005, 0.0024, {0.004}), GeometryError);
  CHECK_NOTHROW(validate_quadrature_radius(0.0048, 0.0024, {0.016, 0.02}));

  const auto air = wavefield::medium_preset("air");
  const int n_max = 6;
  const WaveExpansion inc =
      plane_wave(kAir40kHz, n_max, Vec3::UnitZ(), Vec3::Zero());
  WaveExpansion sc =
      wavefield::make_expansion(WaveKind::Outgoing, n_max, kAir40kHz, Vec3::Zero());
  const double f = frequency_of(kAir40kHz, air);

  WaveExpansion shifted = sc;
  shifted.origin = Vec3(1e-3, 0.0, 0.0);
  CHECK_THROWS_AS(force_torque(inc, shifted, air, f, 0.004), DomainError);
  WaveExpansion detuned = sc;
  detuned.k = 1.5 * kAir40kHz;
  CHECK_THROWS_AS(force_torque(inc, detuned, air, f, 0.004), DomainError);
  CHECK_THROWS_AS(force_torque(inc, inc, air, f, 0.004), DomainError);
  CHECK_THROWS_AS(force_torque(inc, sc, air, f, 0.0), DomainError);
}
