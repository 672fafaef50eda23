// SPDX-FileCopyrightText: Copyright (c) 2026 axiphor contributors
// SPDX-License-Identifier: Apache-2.0
//
// Scattering operators: analytic Mie series for spheres and a null-field
// (extended-boundary-condition) T-matrix for general axisymmetric shapes,
// plus the lab-frame pipeline incident -> body frame -> T -> lab frame.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "axiphor/common.hpp"
#include "axiphor/geometry.hpp"
#include "axiphor/transform.hpp"
#include "axiphor/wavefield.hpp"

namespace axiphor::scatter {

enum class BoundaryKind { SoundHard, SoundSoft };

// Scattering operator of an axisymmetric body, block-diagonal over the
// azimuthal order: s_n^m = sum_{n'} T^m(n, n') a_{n'}^m in the body frame.
// Revolution symmetry never couples different m.
class TMatrix {
 public:
  TMatrix(int n_max, double k);

  int n_max() const { return n_max_; }

  // Wavenumber the operator was assembled at; 0 marks a dimensionless operator
  // (Mie blocks depend on ka only) and disables the consistency check below.
  double k() const { return k_; }

  // Block for azimuthal order m, square of size n_max - |m| + 1; entry (i, j)
  // couples incident degree |m| + j to scattered degree |m| + i.
  const Eigen::MatrixXcd& block(int m) const;
  Eigen::MatrixXcd& block(int m);

  // Body-frame application. Requires a regular expansion of matching order
  // and, for k() > 0, matching wavenumber; the result is outgoing and shares
  // the incident origin and k.
  wavefield::WaveExpansion apply(const wavefield::WaveExpansion& incident) const;

 private:
  int n_max_;
  double k_;
  std::vector<Eigen::MatrixXcd> blocks_;  // index m + n_max
};

// Sphere operator, diagonal and independent of m:
//   sound-soft  s_n = -j_n(ka) / h1_n(ka)
//   sound-hard  s_n = -j_n'(ka) / h1_n'(ka)
TMatrix mie_coefficients(BoundaryKind bc, double ka, int n_max);

// Null-field T-matrix over the exact meridian of the mapped shape. Q and RgQ
// are assembled per m by Gauss-Legendre quadrature along gamma (the azimuthal
// integral is analytic) and T^m = -RgQ^m (Q^m)^{-1}. An ill-conditioned block
// (condition number above 1e12 after equilibration) raises ConditioningError;
// reduce n_max or the aspect ratio. Warns on k * max_radius > 10.
TMatrix tmatrix_nullfield(const geometry::MappingCoefficients& map, BoundaryKind bc,
                          double k, int n_max);

// Max-entry norm of T + T^dag + 2 T^dag T, zero for a lossless scatterer.
double unitarity_residual(const TMatrix& T);

// s_lab = D(o) T D(o)^{-1} a_lab: rotate the incident field into the body
// frame, scatter, rotate back. Output shares the incident origin and k.
wavefield::WaveExpansion scatter_lab_frame(const TMatrix& T,
                                           const wavefield::WaveExpansion& incident,
                                           const transform::Orientation& o);

}  // namespace axiphor::scatter
