#include "search.hpp"

#include <cmath>
#include <numbers>

namespace bl::detail {

Point climb(Vec x, Vec u, const Evaluator& f, Field field, int iterations, std::mt19937_64& rng) {
  Point best = f(x, u);
  if (!best.feasible) return best;
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const bool cx = field == Field::complex;
  const int nx = int(x.size()), nu = int(u.size());
  double sigma = 0.25;
  auto noise = [&]() { return cplx(g(rng), cx ? g(rng) : 0.0); };
  for (int it = 0; it < iterations; ++it) {
    Vec x2 = x, u2 = u;
    bool dual_move = nu > 0 && unif(rng) < 0.5;
    Vec& target = dual_move ? u2 : x2;
    int len = dual_move ? nu : nx;
    double scale = dual_move ? std::max(1.0, target.cwiseAbs().maxCoeff()) : 1.0;
    if (unif(rng) < 0.5) {
      int j = int(unif(rng) * len) % len;
      target[j] += sigma * scale * noise();
    } else {
      for (int j = 0; j < len; ++j) target[j] += sigma * scale * noise() / std::sqrt(double(len));
    }
    Point cand = f(x2, u2);
    if (cand.feasible && cand.value >= best.value) {
      bool improved = cand.value > best.value;
      best = cand;
      x = best.x;
      u = u2;
      sigma = improved ? std::min(1.0, sigma * 1.6) : sigma;
    } else {
      sigma *= 0.92;
    }
    if (sigma < 1e-15) sigma = 0.05;
  }
  return best;
}

Interval circle_min(const std::function<double(cplx)>& f, double lip) {
  const int G = 4096;
  int best = 0;
  double bv = kInf;
  for (int g = 0; g < G; ++g) {
    double v = f(std::polar(1.0, 2.0 * std::numbers::pi * g / G));
    if (v < bv) {
      bv = v;
      best = g;
    }
  }
  double h = 2.0 * std::numbers::pi / G;
  double a = (best - 1) * h, b = (best + 1) * h;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(std::polar(1.0, x1)), f2 = f(std::polar(1.0, x2));
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(std::polar(1.0, x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(std::polar(1.0, x2));
    }
  }
  double up = std::min({bv, f1, f2});
  double lo = std::max(0.0, bv - lip * (h / 2.0));
  return {std::min(lo, up), up};
}


}  // namespace bl::detail
