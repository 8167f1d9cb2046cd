#include "bollobas/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bl {

Space Space::lp(double p, int dim, Field field) {
  if (!(p >= 1.0)) throw Error(ErrorCode::invalid_input, "p must lie in [1, inf]");
  if (dim < 1) throw Error(ErrorCode::invalid_input, "dimension must be positive");
  Space s;
  s.p_ = p;
  s.dim_ = dim;
  s.field_ = field;
  return s;
}

Space Space::sum(const Space& a, const Space& b, double outer_p) {
  if (!(outer_p >= 1.0)) throw Error(ErrorCode::invalid_input, "outer p must lie in [1, inf]");
  if (a.field_ != b.field_) throw Error(ErrorCode::invalid_input, "direct sum of spaces over different fields");
  if (a.is_leaf() && b.is_leaf() && a.p_ == outer_p && b.p_ == outer_p)
    return lp(outer_p, a.dim_ + b.dim_, a.field_);
  Space s;
  s.p_ = outer_p;
  s.dim_ = a.dim_ + b.dim_;
  s.field_ = a.field_;
  s.parts_ = std::make_shared<const std::pair<Space, Space>>(a, b);
  return s;
}

const Space& Space::first() const {
  if (!parts_) throw Error(ErrorCode::invalid_input, "not a direct sum");
  return parts_->first;
}

const Space& Space::second() const {
  if (!parts_) throw Error(ErrorCode::invalid_input, "not a direct sum");
  return parts_->second;
}

static std::string p_str(double p) {
  if (std::isinf(p)) return "inf";
  std::ostringstream os;
  os << p;
  return os.str();
}

std::string Space::str() const {
  std::string f = is_complex() ? "C" : "R";
  if (is_leaf()) return "l" + p_str(p_) + "^" + std::to_string(dim_) + "(" + f + ")";
  return "(" + first().str() + " +" + p_str(p_) + " " + second().str() + ")";
}

bool operator==(const Space& a, const Space& b) {
  if (a.p_ != b.p_ || a.dim_ != b.dim_ || a.field_ != b.field_ || a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return true;
  return a.first() == b.first() && a.second() == b.second();
}

double conjugate_exponent(double p) {
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

Space dual(const Space& s) {
  if (s.is_leaf()) return Space::lp(conjugate_exponent(s.p()), s.dim(), s.field());
  return Space::sum(dual(s.first()), dual(s.second()), conjugate_exponent(s.p()));
}

double lp_norm(const Vec& v, double p) {
  if (v.size() == 0) return 0.0;
  if (std::isinf(p)) return v.cwiseAbs().maxCoeff();
  if (p == 1.0) return v.cwiseAbs().sum();
  if (p == 2.0) return v.norm();
  double m = v.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]) / m, p);
  return m * std::pow(acc, 1.0 / p);
}

static double outer_norm(double a, double b, double p) {
  if (std::isinf(p)) return std::max(a, b);
  if (p == 1.0) return a + b;
  double m = std::max(a, b);
  if (m == 0.0) return 0.0;
  return m * std::pow(std::pow(a / m, p) + std::pow(b / m, p), 1.0 / p);
}

double norm(const Vec& v, const Space& s) {
  if (v.size() != s.dim())
    throw Error(ErrorCode::dimension, "vector of length " + std::to_string(v.size()) + " in " + s.str());
  if (s.is_leaf()) return lp_norm(v, s.p());
  int n1 = s.first().dim();
  double a = norm(v.head(n1), s.first());
  double b = norm(v.tail(s.dim() - n1), s.second());
  return outer_norm(a, b, s.p());
}

double dual_norm(const Vec& v, const Space& s) { return norm(v, dual(s)); }

cplx pair(const Vec& xstar, const Vec& x) {
  if (xstar.size() != x.size()) throw Error(ErrorCode::dimension, "pairing vectors of different lengths");
  return (xstar.array() * x.array()).sum();
}

Vec normalized(const Vec& v, const Space& s) {
  double n = norm(v, s);
  if (n == 0.0) throw Error(ErrorCode::invalid_input, "cannot normalize the zero vector");
  return v / n;
}

Vec random_vector(int dim, Field f, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) {
    double re = g(rng);
    double im = f == Field::complex ? g(rng) : 0.0;
    v[i] = cplx(re, im);
  }
  return v;
}

Vec random_unit(const Space& s, std::mt19937_64& rng) {
  for (;;) {
    Vec v = random_vector(s.dim(), s.field(), rng);
    double n = norm(v, s);
    if (n > 1e-300) return v / n;
  }
}

namespace {

std::shared_ptr<const SupportSet> share(SupportSet s) { return std::make_shared<const SupportSet>(std::move(s)); }

SupportSet sphere_set(const Space& dual_space) {
  SupportSet out;
  out.kind = SupportSet::Kind::sphere;
  out.dual_space = dual_space;
  return out;
}

cplx clamp_disc(cplx z, bool real) {
  if (real) z = cplx(z.real(), 0.0);
  double a = std::abs(z);
  return a > 1.0 ? z / a : z;
}

}  // namespace

SupportSet support_states(const Vec& x, const Space& s, double face_tol) {
  double nx = norm(x, s);
  if (std::abs(nx - 1.0) > kStateTol)
    throw Error(ErrorCode::invalid_input, "support_states needs a unit vector, got norm " + std::to_string(nx));
  SupportSet out;
  out.dual_space = dual(s);
  const int n = s.dim();
  if (s.is_leaf()) {
    double p = s.p();
    if (p == 1.0) {
      out.kind = SupportSet::Kind::l1_face;
      out.fixed = Vec::Zero(n);
      for (int j = 0; j < n; ++j) {
        if (std::abs(x[j]) > face_tol)
          out.fixed[j] = std::conj(phase(x[j]));
        else
          out.free.push_back(j);
      }
    } else if (std::isinf(p)) {
      out.kind = SupportSet::Kind::linf_face;
      out.fixed = Vec::Zero(n);
      double m = x.cwiseAbs().maxCoeff();
      for (int j = 0; j < n; ++j) {
        if (std::abs(x[j]) >= m - face_tol) {
          out.fixed[j] = std::conj(phase(x[j]));
          out.free.push_back(j);
        }
      }
    } else {
      out.kind = SupportSet::Kind::unique;
      out.fixed = Vec::Zero(n);
      for (int j = 0; j < n; ++j) {
        double a = std::abs(x[j]);
        if (a > 0) out.fixed[j] = std::conj(x[j]) * std::pow(a, p - 2.0);
      }
      out.fixed /= std::pow(nx, p - 1.0);
    }
    return out;
  }
  out.kind = SupportSet::Kind::sum;
  const Space& s1 = s.first();
  const Space& s2 = s.second();
  int n1 = s1.dim();
  Vec x1 = x.head(n1), x2 = x.tail(n - n1);
  double a = norm(x1, s1), b = norm(x2, s2);
  double total = outer_norm(a, b, s.p());
  Vec ab(2);
  ab << a / total, b / total;
  out.coeff = share(support_states(ab, Space::lp(s.p(), 2), face_tol));
  out.first_zero = a <= face_tol;
  out.second_zero = b <= face_tol;
  out.first = share(out.first_zero ? sphere_set(dual(s1)) : support_states(x1 / a, s1, face_tol));
  out.second = share(out.second_zero ? sphere_set(dual(s2)) : support_states(x2 / b, s2, face_tol));
  return out;
}

Vec SupportSet::pick(const Vec& hint) const {
  const bool real = !dual_space.is_complex();
  switch (kind) {
    case Kind::unique:
      return fixed;
    case Kind::l1_face: {
      Vec out = fixed;
      for (int j : free) out[j] = hint.size() ? clamp_disc(hint[j], real) : cplx(0.0);
      return out;
    }
    case Kind::linf_face: {
      Vec out = Vec::Zero(fixed.size());
      std::vector<double> t(free.size(), 0.0);
      double tot = 0.0;
      for (size_t k = 0; k < free.size(); ++k) {
        int j = free[k];
        t[k] = hint.size() ? std::max(0.0, (hint[j] * std::conj(fixed[j])).real()) : 0.0;
        tot += t[k];
      }
      for (size_t k = 0; k < free.size(); ++k) {
        double w = tot > 0 ? t[k] / tot : 1.0 / double(free.size());
        out[free[k]] = w * fixed[free[k]];
      }
      return out;
    }
    case Kind::sphere: {
      Vec h = hint.size() ? hint : Vec::Zero(dual_space.dim());
      if (real) h = h.real().cast<cplx>();
      double nh = norm(h, dual_space);
      if (nh > 1e-300) return h / nh;
      Vec e = Vec::Zero(dual_space.dim());
      e[0] = 1.0;
      return normalized(e, dual_space);
    }
    case Kind::sum: {
      int n1 = first->dual_space.dim();
      int n = dual_space.dim();
      Vec h1, h2, hc;
      if (hint.size()) {
        h1 = hint.head(n1);
        h2 = hint.tail(n - n1);
        hc.resize(2);
        hc << norm(h1, first->dual_space), norm(h2, second->dual_space);
      }
      Vec c = coeff->pick(hc);
      Vec out(n);
      out.head(n1) = c[0].real() * first->pick(h1);
      out.tail(n - n1) = c[1].real() * second->pick(h2);
      return out;
    }
  }
  return fixed;
}

Vec SupportSet::sample(std::mt19937_64& rng) const {
  const bool real = !dual_space.is_complex();
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (kind) {
    case Kind::unique:
      return fixed;
    case Kind::l1_face: {
      Vec out = fixed;
      for (int j : free) {
        double r = real ? 2.0 * u(rng) - 1.0 : std::sqrt(u(rng));
        double th = real ? 0.0 : 2.0 * std::numbers::pi * u(rng);
        out[j] = real ? cplx(r, 0.0) : std::polar(r, th);
      }
      return out;
    }
    case Kind::linf_face: {
      Vec out = Vec::Zero(fixed.size());
      std::exponential_distribution<double> e(1.0);
      std::vector<double> t(free.size());
      double tot = 0.0;
      for (auto& w : t) tot += (w = e(rng));
      for (size_t k = 0; k < free.size(); ++k) out[free[k]] = (t[k] / tot) * fixed[free[k]];
      return out;
    }
    case Kind::sphere:
      return random_unit(dual_space, rng);
    case Kind::sum: {
      int n1 = first->dual_space.dim();
      int n = dual_space.dim();
      Vec c = coeff->sample(rng);
      Vec out(n);
      out.head(n1) = c[0].real() * first->sample(rng);
      out.tail(n - n1) = c[1].real() * second->sample(rng);
      return out;
    }
  }
  return fixed;
}

Vec duality_map(const Vec& x, const Space& s) { return support_states(x, s).pick(Vec()); }

bool is_state_pair(const Vec& x, const Vec& xstar, const Space& s, double tol) {
  if (x.size() != s.dim() || xstar.size() != s.dim()) return false;
  if (!x.allFinite() || !xstar.allFinite()) return false;
  if (std::abs(norm(x, s) - 1.0) > tol) return false;
  if (std::abs(dual_norm(xstar, s) - 1.0) > tol) return false;
  return std::abs(pair(xstar, x) - 1.0) <= tol;
}

static Vec snap_rec(const Vec& x, const Space& s, double tol) {
  Vec y = x;
  if (s.is_leaf()) {
    if (s.p() == 1.0) {
      for (Eigen::Index j = 0; j < y.size(); ++j)
        if (std::abs(y[j]) <= tol) y[j] = 0.0;
    } else if (std::isinf(s.p())) {
      double m = y.cwiseAbs().maxCoeff();
      for (Eigen::Index j = 0; j < y.size(); ++j)
        if (std::abs(y[j]) >= m - tol) y[j] = m * phase(y[j]);
    }
    return y;
  }
  int n1 = s.first().dim();
  int n = s.dim();
  Vec y1 = snap_rec(x.head(n1), s.first(), tol);
  Vec y2 = snap_rec(x.tail(n - n1), s.second(), tol);
  double a = norm(y1, s.first()), b = norm(y2, s.second());
  if (s.p() == 1.0) {
    if (a <= tol) y1.setZero();
    if (b <= tol) y2.setZero();
  } else if (std::isinf(s.p())) {
    double m = std::max(a, b);
    if (a >= m - tol && a > 0) y1 *= m / a;
    if (b >= m - tol && b > 0) y2 *= m / b;
  }
  y.head(n1) = y1;
  y.tail(n - n1) = y2;
  return y;
}

Vec snap_to_faces(const Vec& x, const Space& s, double face_tol) {
  Vec y = snap_rec(x, s, face_tol);
  return normalized(y, s);
}

namespace {

// 2-d real ell_p: unit vector at angle t
RVec circle_point(double t, double p) {
  RVec v(2);
  v << std::cos(t), std::sin(t);
  double n = std::pow(std::pow(std::abs(v[0]), p) + std::pow(std::abs(v[1]), p), 1.0 / p);
  return v / n;
}

double pnorm2(const RVec& v, double p) {
  return std::pow(std::pow(std::abs(v[0]), p) + std::pow(std::abs(v[1]), p), 1.0 / p);
}

// 1 - |(u+v)/2| for the partner v of u at distance eps
double midpoint_defect(double t, double eps, double p) {
  RVec u = circle_point(t, p);
  double lo = t, hi = t + std::numbers::pi;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    if (pnorm2(u - circle_point(mid, p), p) < eps)
      lo = mid;
    else
      hi = mid;
  }
  RVec v = circle_point(hi, p);
  return 1.0 - pnorm2(0.5 * (u + v), p);
}

}  // namespace

double modulus_convexity(const Space& s, double eps) {
  if (!(eps > 0.0 && eps <= 2.0)) throw Error(ErrorCode::invalid_input, "epsilon must lie in (0, 2]");
  if (!s.is_leaf() || s.p() == 1.0 || std::isinf(s.p()))
    throw Error(ErrorCode::geometry, s.str() + " is not uniformly convex");
  double p = s.p();
  if (p == 2.0) return 1.0 - std::sqrt(std::max(0.0, 1.0 - eps * eps / 4.0));
  if (s.dim() == 1) throw Error(ErrorCode::geometry, "one-dimensional space has no pair at distance eps");
  if (eps >= 2.0) return 1.0;
  const int grid = 720;
  const double span = std::numbers::pi / 2.0;
  int best = 0;
  double best_val = kInf;
  for (int i = 0; i <= grid; ++i) {
    double val = midpoint_defect(span * i / grid, eps, p);
    if (val < best_val) {
      best_val = val;
      best = i;
    }
  }
  double a = span * std::max(0, best - 1) / grid;
  double b = span * std::min(grid, best + 1) / grid;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = midpoint_defect(c, eps, p), fd = midpoint_defect(d, eps, p);
  while (b - a > 1e-12) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = midpoint_defect(c, eps, p);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = midpoint_defect(d, eps, p);
    }
  }
  return std::max(0.0, std::min({best_val, fc, fd}));
}

}  // namespace bl
