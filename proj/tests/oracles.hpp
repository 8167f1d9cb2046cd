#pragma once

// Brute-force reference computations. Nothing here calls into the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double inf = std::numeric_limits<double>::infinity();

inline double pnorm(const Vec& v, double p) {
  if (std::isinf(p)) return v.cwiseAbs().maxCoeff();
  double s = 0.0;
  for (int i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]), p);
  return std::pow(s, 1.0 / p);
}

inline double pnorm(const RVec& v, double p) { return pnorm(Vec(v.cast<cplx>()), p); }

inline double conj_exp(double p) {
  if (p == 1.0) return inf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

// all 2^n sign vectors, calling f on each
template <class F>
void each_sign(int n, F&& f) {
  RVec s(n);
  for (std::uint64_t code = 0; code < (std::uint64_t(1) << n); ++code) {
    for (int i = 0; i < n; ++i) s[i] = (code >> i) & 1 ? -1.0 : 1.0;
    f(s);
  }
}

// gradient ascent of log |Ax|_q - log |x|_p for 1 < p, q < inf, real data
inline double smooth_norm_search(const RMat& a, double p, double q, int starts, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  auto value = [&](const RVec& x) { return std::log(pnorm(RVec(a * x), q)) - std::log(pnorm(x, p)); };
  auto grad = [&](const RVec& x) {
    RVec y = a * x;
    double ny = pnorm(y, q), nx = pnorm(x, p);
    RVec gy(y.size()), gx(x.size());
    for (int i = 0; i < y.size(); ++i)
      gy[i] = (y[i] < 0 ? -1.0 : 1.0) * std::pow(std::abs(y[i]) / ny, q - 1.0) / ny;
    for (int i = 0; i < x.size(); ++i)
      gx[i] = (x[i] < 0 ? -1.0 : 1.0) * std::pow(std::abs(x[i]) / nx, p - 1.0) / nx;
    return RVec(a.transpose() * gy - gx);
  };
  double best = 0.0;
  for (int s = 0; s < starts; ++s) {
    RVec x(a.cols());
    for (int i = 0; i < x.size(); ++i) x[i] = g(rng);
    x /= pnorm(x, p);
    double v = value(x);
    double step = 0.5;
    for (int it = 0; it < 20000 && step > 1e-15; ++it) {
      RVec d = grad(x);
      RVec xn = x + step * d;
      xn /= pnorm(xn, p);
      double vn = value(xn);
      if (vn > v) {
        x = xn;
        v = vn;
        step *= 1.5;
      } else {
        step *= 0.5;
      }
    }
    best = std::max(best, std::exp(v));
  }
  return best;
}

// |A : ell_p -> ell_q| for real A
inline double real_norm(const RMat& a, double p, double q, std::uint64_t seed = 1) {
  const int n = int(a.cols()), m = int(a.rows());
  double best = 0.0;
  if (p == 1.0) {
    // extreme points of the ell_1 ball
    for (int j = 0; j < n; ++j) best = std::max(best, pnorm(RVec(a.col(j)), q));
    return best;
  }
  if (std::isinf(p)) {
    each_sign(n, [&](const RVec& s) { best = std::max(best, pnorm(RVec(a * s), q)); });
    return best;
  }
  const double pp = conj_exp(p);
  if (std::isinf(q)) {
    for (int i = 0; i < m; ++i) best = std::max(best, pnorm(RVec(a.row(i).transpose()), pp));
    return best;
  }
  if (q == 1.0) {
    each_sign(m, [&](const RVec& s) { best = std::max(best, pnorm(RVec(a.transpose() * s), pp)); });
    return best;
  }
  if (p == 2.0 && q == 2.0) {
    Eigen::SelfAdjointEigenSolver<RMat> es(a.transpose() * a);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  }
  return smooth_norm_search(a, p, q, 64, seed);
}

// numerical radius on real ell_1: x at a vertex +-e_j, states x* with x*_j = +-1
inline double real_nu_l1(const RMat& a) {
  const int n = int(a.rows());
  double best = 0.0;
  for (int j = 0; j < n; ++j) {
    each_sign(n, [&](const RVec& s) {
      if (s[j] < 0) return;
      best = std::max(best, std::abs(s.dot(a.col(j))));
    });
  }
  return best;
}

// real ell_inf: the transpose on ell_1
inline double real_nu_linf(const RMat& a) { return real_nu_l1(RMat(a.transpose())); }

// real ell_2: multistart ascent of |x^T A x| on the sphere
inline double real_nu_l2(const RMat& a, int starts = 64, std::uint64_t seed = 7) {
  RMat h = (a + a.transpose()) / 2.0;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  double best = 0.0;
  for (int s = 0; s < starts; ++s) {
    for (double sign : {1.0, -1.0}) {
      RVec x(a.rows());
      for (int i = 0; i < x.size(); ++i) x[i] = g(rng);
      x.normalize();
      double v = sign * x.dot(h * x);
      double step = 0.5;
      for (int it = 0; it < 20000 && step > 1e-15; ++it) {
        RVec xn = x + step * sign * 2.0 * (h * x);
        xn.normalize();
        double vn = sign * xn.dot(h * xn);
        if (vn > v) {
          x = xn;
          v = vn;
          step *= 1.5;
        } else {
          step *= 0.5;
        }
      }
      best = std::max(best, std::abs(v));
    }
  }
  return best;
}

// largest eigenvalue of Re(e^{it} A) on complex ell_2
inline double hermitian_top(const Mat& a, double t) {
  Mat h = (std::polar(1.0, t) * a + std::polar(1.0, -t) * a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

// nu(A) = max_t lambda_max(Re(e^{it} A)) on a theta grid, then golden-section refinement
inline double theta_grid_nu(const Mat& a, int grid = 4096) {
  const double two_pi = 2.0 * std::numbers::pi;
  int bi = 0;
  double bv = -inf;
  for (int k = 0; k < grid; ++k) {
    double v = hermitian_top(a, two_pi * k / grid);
    if (v > bv) {
      bv = v;
      bi = k;
    }
  }
  double lo = two_pi * (bi - 1) / grid, hi = two_pi * (bi + 1) / grid;
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - r * (hi - lo), d = lo + r * (hi - lo);
  double fc = hermitian_top(a, c), fd = hermitian_top(a, d);
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - r * (hi - lo);
      fc = hermitian_top(a, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + r * (hi - lo);
      fd = hermitian_top(a, d);
    }
  }
  return std::max({bv, fc, fd});
}

// |A| on complex ell_2 by power iteration on A*A from several starts
inline double hilbert_norm(const Mat& a, int starts = 16, std::uint64_t seed = 3) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Mat b = a.adjoint() * a;
  double best = 0.0;
  for (int s = 0; s < starts; ++s) {
    Vec x(a.cols());
    for (int i = 0; i < x.size(); ++i) x[i] = cplx(g(rng), g(rng));
    x.normalize();
    for (int it = 0; it < 5000; ++it) {
      Vec y = b * x;
      if (y.norm() == 0.0) break;
      x = y / y.norm();
    }
    best = std::max(best, (a * x).norm());
  }
  return best;
}

// delta(eps) for real 2-dim ell_p by a grid over unit pairs, refined around the best cell
inline double modulus_2d(double p, double eps, int grid = 2000) {
  auto unit = [&](double t) {
    RVec v(2);
    v << std::cos(t), std::sin(t);
    return RVec(v / pnorm(v, p));
  };
  const double two_pi = 2.0 * std::numbers::pi;
  double best = inf;
  // fix u on a quarter arc by symmetry, scan v over the circle and bisect |u - v| = eps along each ray
  for (int i = 0; i <= grid / 4; ++i) {
    RVec u = unit(two_pi * i / grid);
    for (int dir : {1, -1}) {
      double lo = 0.0, hi = std::numbers::pi;
      for (int it = 0; it < 60; ++it) {
        double mid = (lo + hi) / 2.0;
        RVec v = unit(two_pi * i / grid + dir * mid);
        if (pnorm(RVec(u - v), p) < eps) lo = mid;
        else hi = mid;
      }
      RVec v = unit(two_pi * i / grid + dir * hi);
      if (pnorm(RVec(u - v), p) + 1e-12 >= eps) best = std::min(best, 1.0 - pnorm(RVec((u + v) / 2.0), p));
    }
  }
  return best;
}

}  // namespace oracle
