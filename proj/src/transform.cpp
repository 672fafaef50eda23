// SPDX-FileCopyrightText: Copyright (c) 2026 axiphor contributors
// SPDX-License-Identifier: Apache-2.0

#include "axiphor/transform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Geometry>

#include "axiphor/specfun.hpp"

namespace axiphor::transform {

using specfun::sh_count;
using specfun::sh_index;
using wavefield::WaveExpansion;

namespace {

void check_rotation(const Mat3& R) {
  if (!R.allFinite() || (R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-10 ||
      R.determinant() < 0.0)
    throw DomainError("orientation: matrix is not a proper rotation");
}

// z-y-z factorization R = R_z(alpha) R_y(beta) R_z(gamma).
struct Zyz {
  double alpha, beta, gamma;
};

Zyz zyz_angles(const Mat3& R) {
  const double sb = std::hypot(R(0, 2), R(1, 2));
  if (sb > 1e-12)
    return {std::atan2(R(1, 2), R(0, 2)), std::atan2(sb, R(2, 2)),
            std::atan2(R(2, 1), -R(2, 0))};
  if (R(2, 2) > 0.0) return {std::atan2(R(1, 0), R(0, 0)), 0.0, 0.0};
  return {std::atan2(-R(1, 0), -R(0, 0)), kPi, 0.0};
}

Complex cis(double x) { return {std::cos(x), std::sin(x)}; }

}  // namespace

Orientation euler_to_rotation(const Vec3& angles) {
  if (!angles.allFinite()) throw DomainError("orientation: angles must be finite");
  const Mat3 R = (Eigen::AngleAxisd(angles.z(), Vec3::UnitZ()) *
                  Eigen::AngleAxisd(angles.y(), Vec3::UnitY()) *
                  Eigen::AngleAxisd(angles.x(), Vec3::UnitX()))
                     .toRotationMatrix();
  return {angles, R};
}

Orientation orientation_from_matrix(const Mat3& R) {
  check_rotation(R);
  return {euler_xyz_from_matrix(R), R};
}

Orientation inverse(const Orientation& o) { return orientation_from_matrix(o.rotation.transpose()); }

WaveExpansion rotate_expansion(const WaveExpansion& exp, const Orientation& o) {
  check_rotation(o.rotation);
  const auto [alpha, beta, gamma] = zyz_angles(o.rotation);
  const auto blocks = specfun::wigner_d(exp.n_max, beta);

  WaveExpansion out = exp;
  for (int n = 0; n <= exp.n_max; ++n) {
    const auto& d = blocks[n];
    for (int mp = -n; mp <= n; ++mp) {
      Complex acc = 0.0;
      for (int m = -n; m <= n; ++m) acc += d.d(mp, m) * cis(-m * gamma) * exp.at(n, m);
      out.at(n, mp) = cis(-mp * alpha) * acc;
    }
  }
  return out;
}

WaveExpansion translate_z_regular(const WaveExpansion& exp, double d, int n_max_out) {
  if (exp.kind != wavefield::WaveKind::Regular)
    throw DomainError("translate_z_regular: only regular expansions re-center");
  if (n_max_out < exp.n_max)
    throw DomainError("translate_z_regular: output truncation below the input degree");
  if (!std::isfinite(d)) throw DomainError("translate_z_regular: displacement must be finite");

  const int n_in = exp.n_max;
  const double t = exp.k * d;
  const int n_pad = n_max_out + std::max(8, static_cast<int>(std::ceil(std::abs(t))));

  // Gaunt-type overlaps need Legendre functions up to degree 2 n_pad and a
  // rule exact for polynomials of that degree product.
  const auto gl = specfun::gauss_legendre(2 * n_pad + 8);
  const int npts = static_cast<int>(gl.nodes.size());
  std::vector<std::vector<double>> leg(npts);
  for (int i = 0; i < npts; ++i) {
    const auto table = specfun::harmonic_table(2 * n_pad, std::acos(gl.nodes[i]), 0.0);
    leg[i].resize(sh_count(2 * n_pad));
    for (int idx = 0; idx < sh_count(2 * n_pad); ++idx) leg[i][idx] = table.values[idx].real();
  }

  const auto jq = specfun::radial_table(specfun::RadialKind::Regular, 2 * n_pad, std::abs(t));
  const double tsign = (t < 0.0) ? -1.0 : 1.0;

  WaveExpansion padded = wavefield::make_expansion(wavefield::WaveKind::Regular, n_pad, exp.k,
                                                   exp.origin + Vec3(0.0, 0.0, d));
  for (int m = 0; m <= n_in; ++m) {
    for (int np = m; np <= n_pad; ++np) {
      for (int n = m; n <= n_in; ++n) {
        double A = 0.0;
        for (int q = std::abs(np - n); q <= np + n; q += 2) {
          double G = 0.0;
          for (int i = 0; i < npts; ++i)
            G += gl.weights[i] * leg[i][sh_index(n, m)] * leg[i][sh_index(np, m)] *
                 leg[i][sh_index(q, 0)];
          G *= 2.0 * kPi;
          // i^(np - n + q) is real: q shares the parity of n + np.
          const double ipow = (((np - n + q) / 2) % 2 == 0) ? 1.0 : -1.0;
          const double sign = (tsign < 0.0 && q % 2 == 1) ? -1.0 : 1.0;
          A += ipow * sign * jq.values[q].real() * std::sqrt(4.0 * kPi * (2 * q + 1)) * G;
        }
        padded.at(np, m) += A * exp.at(n, m);
        if (m > 0) padded.at(np, -m) += A * exp.at(n, -m);
      }
    }
  }

  double total = 0.0, tail = 0.0;
  for (int n = 0; n <= n_pad; ++n)
    for (int m = -n; m <= n; ++m) {
      const double a2 = std::norm(padded.at(n, m));
      total += a2;
      if (n > n_max_out) tail += a2;
    }
  if (total > 0.0 && std::sqrt(tail) > 1e-6 * std::sqrt(total)) {
    std::ostringstream msg;
    msg << "translate_z_regular: degrees above " << n_max_out << " hold "
        << std::sqrt(tail / total) << " of the translated field; raise the output truncation";
    throw ConditioningError(msg.str());
  }

  WaveExpansion out = wavefield::make_expansion(wavefield::WaveKind::Regular, n_max_out, exp.k,
                                                padded.origin);
  for (int n = 0; n <= n_max_out; ++n)
    for (int m = -n; m <= n; ++m) out.at(n, m) = padded.at(n, m);
  return out;
}

WaveExpansion translate_regular(const WaveExpansion& exp, const Vec3& d, int n_max_out) {
  if (n_max_out < exp.n_max)
    throw DomainError("translate_regular: output truncation below the input degree");
  const double len = d.norm();
  if (len == 0.0) {
    WaveExpansion out = wavefield::make_expansion(wavefield::WaveKind::Regular, n_max_out,
                                                  exp.k, exp.origin);
    for (int n = 0; n <= exp.n_max; ++n)
      for (int m = -n; m <= n; ++m) out.at(n, m) = exp.at(n, m);
    return out;
  }
  const Vec3 axis = d / len;
  const Mat3 R = Eigen::Quaterniond::FromTwoVectors(Vec3::UnitZ(), axis).toRotationMatrix();
  const Orientation o = orientation_from_matrix(R);
  WaveExpansion body = rotate_expansion(exp, inverse(o));
  WaveExpansion shifted = translate_z_regular(body, len, n_max_out);
  WaveExpansion out = rotate_expansion(shifted, o);
  out.origin = exp.origin + d;
  return out;
}

Vec3 euler_xyz_from_matrix(const Mat3& R) {
  check_rotation(R);
  const double sy = -R(2, 0);
  if (std::abs(sy) < 1.0 - 1e-12)
    return {std::atan2(R(2, 1), R(2, 2)), std::asin(sy), std::atan2(R(1, 0), R(0, 0))};
  // Gimbal lock: only the combination of the x and z angles is determined.
  if (sy > 0.0) return {std::atan2(R(0, 1), R(1, 1)), kPi / 2.0, 0.0};
  return {std::atan2(-R(0, 1), R(1, 1)), -kPi / 2.0, 0.0};
}

Vec3 euler_xyz_continuous(const Mat3& R, const Vec3& previous) {
  const Vec3 primary = euler_xyz_from_matrix(R);
  // The second solution of the x-y-z extraction mirrors the y angle.
  const Vec3 alternate(primary.x() + kPi, kPi - primary.y(), primary.z() + kPi);

  const auto unwrap = [&](Vec3 v) {
    for (int i = 0; i < 3; ++i)
      v[i] -= 2.0 * kPi * std::round((v[i] - previous[i]) / (2.0 * kPi));
    return v;
  };
  const Vec3 a = unwrap(primary), b = unwrap(alternate);
  return ((a - previous).cwiseAbs().maxCoeff() <= (b - previous).cwiseAbs().maxCoeff()) ? a : b;
}

}  // namespace axiphor::transform
