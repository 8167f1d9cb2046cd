#pragma once

#include <functional>
#include <random>

#include "bollobas/norm_attainment.hpp"
#include "bollobas/spaces.hpp"

namespace bl::detail {

struct Point {
  Vec x, xs;  // xs empty in norm mode
  double value = -kInf;
  double distance = kInf;
  bool feasible = false;
};

// maps raw search coordinates (x, u) to an evaluated point
using Evaluator = std::function<Point(const Vec& x, const Vec& u)>;

// (1+1)-ES with step adaptation. Moves that leave the feasible set are rejected.
// u has length zero when there is no dual search direction.
Point climb(Vec x, Vec u, const Evaluator& f, Field field, int iterations, std::mt19937_64& rng);

// min of f over the unit circle. lip bounds the Lipschitz constant in the angle.
Interval circle_min(const std::function<double(cplx)>& f, double lip);

}  // namespace bl::detail
