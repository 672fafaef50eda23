// SPDX-FileCopyrightText: Copyright (c) 2026 axiphor contributors
// SPDX-License-Identifier: Apache-2.0

#include "axiphor/specfun.hpp"

#include <cmath>
#include <limits>

namespace axiphor::specfun {

namespace {

// j_n for n = 0..n_max. Upward recurrence is stable only for x >= n, so the
// table is filled by Miller's downward recurrence when x < n_max and rescaled
// against the closed forms of j_0 / j_1 (whichever is farther from a zero).
std::vector<double> bessel_j_table(int n_max, double x) {
  std::vector<double> j(n_max + 1, 0.0);
  if (x == 0.0) {
    j[0] = 1.0;
    return j;
  }
  const double j0 = std::sin(x) / x;
  if (n_max == 0) {
    j[0] = j0;
    return j;
  }
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  if (x >= static_cast<double>(n_max)) {
    j[0] = j0;
    j[1] = j1;
    for (int n = 2; n <= n_max; ++n)
      j[n] = (2.0 * n - 1.0) / x * j[n - 1] - j[n - 2];
    return j;
  }
  const int start = n_max + std::max(16, static_cast<int>(std::ceil(std::sqrt(40.0 * n_max))));
  double up = 0.0;           // j_{n+1} surrogate
  double cur = 1.0e-155;     // j_n surrogate seed
  for (int n = start; n >= 1; --n) {
    const double down = (2.0 * n + 1.0) / x * cur - up;
    up = cur;
    cur = down;
    if (n - 1 <= n_max) j[n - 1] = cur;
    if (std::abs(cur) > 1.0e250) {
      up *= 1.0e-250;
      cur *= 1.0e-250;
      for (int i = n - 1; i <= n_max; ++i) j[i] *= 1.0e-250;
    }
  }
  const double scale = (std::abs(j0) >= std::abs(j1)) ? j0 / j[0] : j1 / j[1];
  for (double& v : j) v *= scale;
  return j;
}

std::vector<double> bessel_y_table(int n_max, double x) {
  std::vector<double> y(n_max + 1, 0.0);
  y[0] = -std::cos(x) / x;
  if (n_max >= 1) y[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int n = 2; n <= n_max; ++n)
    y[n] = (2.0 * n - 1.0) / x * y[n - 1] - y[n - 2];
  return y;
}

}  // namespace

RadialTable radial_table(RadialKind kind, int n_max, double x) {
  if (n_max < 0) throw DomainError("radial_table: order must be non-negative");
  if (!std::isfinite(x) || x < 0.0)
    throw DomainError("radial_table: argument must be finite and non-negative");
  if (kind == RadialKind::Outgoing && x == 0.0)
    throw DomainError("radial_table: outgoing waves are singular at zero argument");

  RadialTable t;
  t.kind = kind;
  t.order_max = n_max;
  t.argument = x;
  t.values.resize(n_max + 1);
  t.derivatives.resize(n_max + 1);

  if (x == 0.0) {  // regular kind only; j_0 = 1, j_1'(0) = 1/3, rest vanish
    for (int n = 0; n <= n_max; ++n) {
      t.values[n] = (n == 0) ? 1.0 : 0.0;
      t.derivatives[n] = (n == 1) ? 1.0 / 3.0 : 0.0;
    }
    return t;
  }

  const std::vector<double> j = bessel_j_table(n_max, x);
  if (kind == RadialKind::Regular) {
    for (int n = 0; n <= n_max; ++n) t.values[n] = j[n];
  } else {
    const std::vector<double> y = bessel_y_table(n_max, x);
    for (int n = 0; n <= n_max; ++n) t.values[n] = Complex(j[n], y[n]);
  }
  // f'_n = f_{n-1} - (n+1)/x f_n, f'_0 = -f_1.
  if (n_max == 0) {
    const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
    t.derivatives[0] = (kind == RadialKind::Regular)
                           ? Complex(-j1)
                           : -Complex(j1, -std::cos(x) / (x * x) - std::sin(x) / x);
  } else {
    t.derivatives[0] = -t.values[1];
    for (int n = 1; n <= n_max; ++n)
      t.derivatives[n] = t.values[n - 1] - (n + 1.0) / x * t.values[n];
  }
  return t;
}

HarmonicTable harmonic_table(int n_max, double theta, double phi) {
  if (n_max < 0) throw DomainError("harmonic_table: order must be non-negative");
  if (!(theta >= 0.0 && theta <= kPi))
    throw DomainError("harmonic_table: theta outside [0, pi]");
  if (!std::isfinite(phi)) throw DomainError("harmonic_table: phi must be finite");

  HarmonicTable t;
  t.order_max = n_max;
  t.theta = theta;
  t.phi = phi;
  const int count = sh_count(n_max);
  t.values.assign(count, Complex(0.0));
  t.theta_derivatives.assign(count, Complex(0.0));
  t.m_over_sin.assign(count, Complex(0.0));

  const double ct = std::cos(theta), st = std::sin(theta);

  // Normalized associated Legendre values pbar(n, m) = Y_n^m(theta, 0), m >= 0.
  std::vector<double> pbar(count, 0.0);
  auto P = [&](int n, int m) -> double& { return pbar[sh_index(n, m)]; };
  P(0, 0) = 1.0 / std::sqrt(4.0 * kPi);
  for (int m = 1; m <= n_max; ++m)
    P(m, m) = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * st * P(m - 1, m - 1);
  for (int m = 0; m < n_max; ++m)
    P(m + 1, m) = std::sqrt(2.0 * m + 3.0) * ct * P(m, m);
  for (int m = 0; m <= n_max; ++m)
    for (int n = m + 2; n <= n_max; ++n) {
      const double a = std::sqrt((4.0 * n * n - 1.0) / (static_cast<double>(n) * n - static_cast<double>(m) * m));
      const double b = std::sqrt((static_cast<double>(n - 1) * (n - 1) - static_cast<double>(m) * m) /
                                 (4.0 * static_cast<double>(n - 1) * (n - 1) - 1.0));
      P(n, m) = a * (ct * P(n - 1, m) - b * P(n - 2, m));
    }

  const Complex eip(std::cos(phi), std::sin(phi));
  std::vector<Complex> eimp(n_max + 1);
  eimp[0] = 1.0;
  for (int m = 1; m <= n_max; ++m) eimp[m] = eimp[m - 1] * eip;

  for (int n = 0; n <= n_max; ++n)
    for (int m = 0; m <= n; ++m) {
      const Complex v = P(n, m) * eimp[m];
      t.values[sh_index(n, m)] = v;
      if (m > 0)  // Y_n^{-m} = (-1)^m conj(Y_n^m)
        t.values[sh_index(n, -m)] = ((m % 2) ? -1.0 : 1.0) * std::conj(v);
    }

  auto val = [&](int n, int m) -> Complex {
    return (std::abs(m) <= n) ? t.values[sh_index(n, m)] : Complex(0.0);
  };
  const Complex eimn = std::conj(eip);

  // dY/dtheta and (m/sin)Y through same-table ladders; both stay finite at
  // the poles because the only surviving neighbours carry sin(theta) powers.
  for (int n = 0; n <= n_max; ++n)
    for (int m = -n; m <= n; ++m) {
      Complex d(0.0);
      if (m + 1 <= n)
        d += 0.5 * std::sqrt(static_cast<double>(n - m) * (n + m + 1)) * val(n, m + 1) * eimn;
      if (m - 1 >= -n)
        d -= 0.5 * std::sqrt(static_cast<double>(n + m) * (n - m + 1)) * val(n, m - 1) * eip;
      t.theta_derivatives[sh_index(n, m)] = d;

      Complex s(0.0);
      if (n >= 1) {
        const double f = -0.5 * std::sqrt((2.0 * n + 1.0) / (2.0 * n - 1.0));
        Complex acc(0.0);
        if (std::abs(m - 1) <= n - 1)
          acc += std::sqrt(static_cast<double>(n + m) * (n + m - 1)) * val(n - 1, m - 1) * eip;
        if (std::abs(m + 1) <= n - 1)
          acc += std::sqrt(static_cast<double>(n - m) * (n - m - 1)) * val(n - 1, m + 1) * eimn;
        s = f * acc;
      }
      t.m_over_sin[sh_index(n, m)] = (m == 0) ? Complex(0.0) : s;
    }

  return t;
}

namespace {

// Jacobi polynomial P_s^{(a,b)}(x) by the three-term recurrence.
double jacobi_poly(int s, int a, int b, double x) {
  if (s == 0) return 1.0;
  double pm1 = 1.0;
  double p = 0.5 * ((a - b) + (a + b + 2.0) * x);
  for (int k = 2; k <= s; ++k) {
    const double c = 2.0 * k + a + b;
    const double a1 = 2.0 * k * (k + a + b) * (c - 2.0);
    const double a2 = (c - 1.0) * (c * (c - 2.0) * x + static_cast<double>(a) * a - static_cast<double>(b) * b);
    const double a3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
    const double next = (a2 * p - a3 * pm1) / a1;
    pm1 = p;
    p = next;
  }
  return p;
}

}  // namespace

std::vector<WignerBlock> wigner_d(int n_max, double beta) {
  if (n_max < 0) throw DomainError("wigner_d: order must be non-negative");
  if (!std::isfinite(beta)) throw DomainError("wigner_d: beta must be finite");

  const double sh = std::sin(0.5 * beta);
  const double ch = std::cos(0.5 * beta);
  const double cb = std::cos(beta);

  std::vector<WignerBlock> blocks;
  blocks.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    WignerBlock blk;
    blk.degree = n;
    blk.beta = beta;
    blk.entries.resize(2 * n + 1, 2 * n + 1);
    for (int r = -n; r <= n; ++r)
      for (int c = -n; c <= n; ++c) {
        const int mu = std::abs(r - c);
        const int nu = std::abs(r + c);
        const int s = n - (mu + nu) / 2;
        double norm = 1.0;  // sqrt(s!(s+mu+nu)! / ((s+mu)!(s+nu)!))
        for (int i = 1; i <= mu; ++i)
          norm *= (s + nu + i) / static_cast<double>(s + i);
        norm = std::sqrt(norm);
        const double xi = (c >= r) ? 1.0 : (((r - c) % 2) ? -1.0 : 1.0);
        blk.entries(r + n, c + n) = xi * norm * std::pow(sh, mu) * std::pow(ch, nu) *
                                    jacobi_poly(s, mu, nu, cb);
      }
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

QuadratureRule gauss_legendre(int points) {
  if (points < 1) throw DomainError("gauss_legendre: need at least one point");
  QuadratureRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const int half = (points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      if (points == 1) { p1 = x; }
      for (int k = 2; k <= points; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = (points == 1) ? x : p1;
      const double pnm1 = (points == 1) ? 1.0 : p0;
      dp = points * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1.0e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[points - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[points - 1 - i] = w;
  }
  return rule;
}

}  // namespace axiphor::specfun
