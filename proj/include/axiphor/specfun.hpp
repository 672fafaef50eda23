// SPDX-FileCopyrightText: Copyright (c) 2026 axiphor contributors
// SPDX-License-Identifier: Apache-2.0
//
// Special functions used by the spherical wave machinery: spherical Bessel /
// Hankel tables, orthonormal spherical harmonics (Condon-Shortley phase),
// Wigner-d rotation blocks and Gauss-Legendre rules. Everything returns whole
// tables up to a requested order; per-order recurrences are internal.

#pragma once

#include <vector>

#include <Eigen/Core>

#include "axiphor/common.hpp"

namespace axiphor::specfun {

// Linear index of the (n, m) coefficient slot, 0 <= n, -n <= m <= n.
inline int sh_index(int n, int m) { return n * (n + 1) + m; }
inline int sh_count(int n_max) { return (n_max + 1) * (n_max + 1); }

enum class RadialKind { Regular, Outgoing };

// values[n] and derivatives[n] of j_n (regular) or h1_n (outgoing) at the
// given argument, n = 0..order_max. Derivatives are with respect to the
// argument itself, not the radius.
struct RadialTable {
  RadialKind kind;
  int order_max;
  double argument;
  std::vector<Complex> values;
  std::vector<Complex> derivatives;
};

// Regular kind accepts x = 0; outgoing throws DomainError there. j_n uses
// downward (Miller) recurrence below the order and upward above it, y_n is
// upward throughout (stable), h1_n = j_n + i y_n.
RadialTable radial_table(RadialKind kind, int n_max, double x);

// Orthonormal Y_n^m(theta, phi) with Condon-Shortley phase, plus the two
// pole-safe angular ladders needed for velocity fields:
//   theta_derivatives = dY/dtheta,
//   m_over_sin        = (m / sin(theta)) * Y   (finite at the poles).
struct HarmonicTable {
  int order_max;
  double theta, phi;
  std::vector<Complex> values;
  std::vector<Complex> theta_derivatives;
  std::vector<Complex> m_over_sin;

  const Complex& at(int n, int m) const { return values[sh_index(n, m)]; }
  const Complex& dtheta(int n, int m) const { return theta_derivatives[sh_index(n, m)]; }
  const Complex& msin(int n, int m) const { return m_over_sin[sh_index(n, m)]; }
};

HarmonicTable harmonic_table(int n_max, double theta, double phi);

// Wigner small-d block for one degree: entries(mp + degree, m + degree) =
// d^n_{mp m}(beta), evaluated through Jacobi polynomials (no factorial
// overflow up to degree ~ 60).
struct WignerBlock {
  int degree;
  double beta;
  Eigen::MatrixXd entries;

  double d(int mp, int m) const { return entries(mp + degree, m + degree); }
};

std::vector<WignerBlock> wigner_d(int n_max, double beta);

struct QuadratureRule {
  std::vector<double> nodes;    // ascending in [-1, 1]
  std::vector<double> weights;  // sum to 2
};

QuadratureRule gauss_legendre(int points);

}  // namespace axiphor::specfun
