// SPDX-FileCopyrightText: Copyright (c) 2026 axiphor contributors
// SPDX-License-Identifier: Apache-2.0
//
// Incident fields and partial-wave expansions. Complex fields use the
// e^{-i omega t} time convention, so outgoing waves carry e^{+ikr}.
// Expansion coefficients are stored with the linear index n(n+1)+m.

#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "axiphor/common.hpp"
#include "axiphor/specfun.hpp"

namespace axiphor::wavefield {

struct Medium {
  double rho0;  // kg/m^3
  double c0;    // m/s
  double mu;    // Pa s
  std::string name;
};

Medium medium_preset(const std::string& name);  // "air" or "water"

struct PlaneWave {
  Complex amplitude;  // Pa
  Vec3 direction;     // unit propagation direction
};

// Baffled circular pistons in the z = -interdistance plane. positions[] are
// the element coordinates as configured; the first element is the probe at
// the lateral origin. The stored element centers are shifted down by
// interdistance before evaluation.
struct TransducerArray {
  double element_radius;  // m
  double v0;              // surface velocity amplitude, m/s
  double interdistance;   // m, separation between array plane and z = 0
  std::vector<Vec3> positions;
  std::vector<double> phase_delay;      // rad
  std::vector<double> amplitude_ratio;  // relative, >= 0
};

void validate_array(const TransducerArray& array);

enum class WaveKind { Regular, Outgoing };

struct WaveExpansion {
  WaveKind kind;
  int n_max;
  double k;     // rad/m
  Vec3 origin;  // expansion center in lab coordinates
  std::vector<Complex> coeffs;

  Complex& at(int n, int m) { return coeffs[specfun::sh_index(n, m)]; }
  const Complex& at(int n, int m) const { return coeffs[specfun::sh_index(n, m)]; }
};

WaveExpansion make_expansion(WaveKind kind, int n_max, double k, const Vec3& origin);

// Truncation heuristic n(kr) = kr + 4 (kr)^{1/3} + 4, rounded up.
int default_truncation(double k, double r_max);

WaveExpansion plane_wave_coefficients(const PlaneWave& wave, double k, int n_max,
                                      const Vec3& origin);

// Far-field sum over array elements; throws DomainError if the point sits on
// an element center (the 1/r model breaks down there).
Complex piston_pressure(const TransducerArray& array, const Medium& medium, double f,
                        const Vec3& point);

using FieldSampler = std::function<Complex(const Vec3&)>;

// Orthogonality projection of a sampled field on two spheres. Per degree the
// better-conditioned radius (larger |j_n(kR)|) supplies the coefficients; a
// degree unusable on both radii raises ConditioningError. Outgoing content
// resolved between the two radii at O(1) of the field scale means a source
// sits inside the projection ball and raises GeometryError.
WaveExpansion project_incident(const FieldSampler& field, double k, int n_max,
                               const Vec3& center, const std::array<double, 2>& radii);

struct PressureVelocity {
  Complex p;  // Pa
  CVec3 v;    // m/s
};

PressureVelocity evaluate_expansion(const WaveExpansion& exp, const Medium& medium,
                                    double f, const Vec3& point);

}  // namespace axiphor::wavefield
