// SPDX-FileCopyrightText: Copyright (c) 2026 axiphor contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "axiphor/common.hpp"
#include "axiphor/wavefield.hpp"

namespace axiphor::transform {

// Particle orientation. `angles` are the extrinsic rotation angles about the
// lab x, y, z axes applied in that order, so rotation = R_z * R_y * R_x.
struct Orientation {
  Vec3 angles = Vec3::Zero();
  Mat3 rotation = Mat3::Identity();
};

Orientation euler_to_rotation(const Vec3& angles);

// Builds an Orientation from a matrix, extracting x-y-z angles. Throws
// DomainError unless R is orthogonal with determinant +1 to 1e-10.
Orientation orientation_from_matrix(const Mat3& R);

Orientation inverse(const Orientation& o);

// Rotates the field about the expansion origin: evaluating the result at x
// equals evaluating the input at origin + R^-1 (x - origin). Coefficients mix
// within each degree through the Wigner-D matrix of o.rotation.
wavefield::WaveExpansion rotate_expansion(const wavefield::WaveExpansion& exp,
                                          const Orientation& o);

// Re-centers a regular expansion at origin + d ez. The input is treated as
// exact; the image is computed on a padded degree range and the part beyond
// n_max_out must be insignificant (relative norm <= 1e-6), otherwise a
// ConditioningError reports that the requested truncation cannot hold the
// translated field. Requires n_max_out >= exp.n_max.
wavefield::WaveExpansion translate_z_regular(const wavefield::WaveExpansion& exp, double d,
                                             int n_max_out);

// Arbitrary displacement by conjugating the axial translation with the
// rotation that carries ez onto d. Same contract as translate_z_regular.
wavefield::WaveExpansion translate_regular(const wavefield::WaveExpansion& exp, const Vec3& d,
                                           int n_max_out);

// Extrinsic x-y-z angles of R (the inverse of euler_to_rotation). At the
// gimbal singularity (|R31| = 1) the z angle is fixed to zero.
Vec3 euler_xyz_from_matrix(const Mat3& R);

// Angle report for trajectories: between the two (a, b, c) solutions and
// their 2 pi shifts, returns the one closest to `previous` so that a
// continuously rotating body yields continuous angle curves.
Vec3 euler_xyz_continuous(const Mat3& R, const Vec3& previous);

}  // namespace axiphor::transform
