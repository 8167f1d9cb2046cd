#include "bollobas/norm_attainment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>

#include "bollobas/parallel.hpp"
#include "search.hpp"

namespace bl {

std::string to_string(Certainty c) {
  switch (c) {
    case Certainty::exact: return "exact";
    case Certainty::enumerated: return "enumerated";
    case Certainty::grid_refined: return "grid_refined";
    case Certainty::heuristic: return "heuristic";
  }
  return "heuristic";
}

std::string to_string(NormingSet::Kind k) {
  switch (k) {
    case NormingSet::Kind::support_constrained: return "support_constrained";
    case NormingSet::Kind::coordinate_unimodular: return "coordinate_unimodular";
    case NormingSet::Kind::phase_orbit: return "phase_orbit";
    case NormingSet::Kind::l1_face: return "l1_face";
    case NormingSet::Kind::linf_face: return "linf_face";
    case NormingSet::Kind::subspace: return "subspace";
    case NormingSet::Kind::explicit_list: return "explicit_list";
    case NormingSet::Kind::all: return "all";
    case NormingSet::Kind::empty: return "empty";
  }
  return "empty";
}

static Certainty weakest(Certainty a, Certainty b) { return int(a) > int(b) ? a : b; }

Operator canonical(const Operator& t) {
  const OpNode& n = t.node();
  switch (t.kind()) {
    case OpKind::adjoint: {
      Operator c = canonical(n.children[0]);
      const OpNode& cn = c.node();
      switch (c.kind()) {
        case OpKind::adjoint:
          return cn.children[0];
        case OpKind::diagonal:
          return diagonal(cn.spec, dual(c.to()), dual(c.from()));
        case OpKind::rank_one:
          return rank_one(cn.f, cn.y, dual(c.to()), dual(c.from()));
        case OpKind::scale:
          return scale(cn.factor, canonical(adjoint(cn.children[0])));
        case OpKind::dense:
          return dense(cn.dense.transpose(), dual(c.to()), dual(c.from()));
        default:
          return adjoint(c);
      }
    }
    case OpKind::scale: {
      Operator c = canonical(n.children[0]);
      if (n.factor == cplx(1.0)) return c;
      if (c.kind() == OpKind::scale) return scale(n.factor * c.node().factor, c.node().children[0]);
      return scale(n.factor, c);
    }
    case OpKind::lift:
      return lift(canonical(n.children[0]), n.outer_p);
    case OpKind::delift: {
      const Operator& s = n.children[0];
      if (s.kind() == OpKind::lift && s.node().children[0].from() == t.from() && s.node().children[0].to() == t.to())
        return canonical(s.node().children[0]);
      return t;
    }
    case OpKind::direct_sum:
      return direct_sum(canonical(n.children[0]), canonical(n.children[1]), n.outer_p);
    default:
      return t;
  }
}

double mixed_diagonal_norm(const std::vector<cplx>& alpha, double p, double q) {
  double m = 0.0;
  for (auto a : alpha) m = std::max(m, std::abs(a));
  if (p <= q) return m;
  double r = std::isinf(p) ? q : 1.0 / (1.0 / q - 1.0 / p);
  Vec v(alpha.size());
  for (size_t i = 0; i < alpha.size(); ++i) v[i] = alpha[i];
  return lp_norm(v, r);
}

namespace {

Vec basis(int n, int j) {
  Vec e = Vec::Zero(n);
  e[j] = 1.0;
  return e;
}

NormResult diagonal_norm(const Operator& c) {
  const OpNode& n = c.node();
  double p = c.from().p(), q = c.to().p();
  NormResult r;
  r.certainty = Certainty::exact;
  r.method = "diagonal";
  if (!n.spec.materializable()) {
    if (p > q) throw Error(ErrorCode::not_realizable, "symbolic diagonal between these spaces has no closed form");
    r.value = n.spec.analyze().sup_modulus;
    return r;
  }
  auto a = n.spec.materialize(c.from().dim());
  int dim = c.from().dim();
  if (p <= q) {
    int best = 0;
    for (int i = 1; i < dim; ++i)
      if (std::abs(a[i]) > std::abs(a[best])) best = i;
    r.value = std::abs(a[best]);
    r.witness = basis(dim, best);
    return r;
  }
  r.value = mixed_diagonal_norm(a, p, q);
  double rr = std::isinf(p) ? q : 1.0 / (1.0 / q - 1.0 / p);
  Vec x(dim);
  for (int i = 0; i < dim; ++i) {
    double m = std::abs(a[i]);
    x[i] = std::isinf(p) ? std::conj(phase(a[i])) : std::conj(phase(a[i])) * std::pow(m, rr / p);
  }
  if (norm(x, c.from()) > 0) r.witness = normalized(x, c.from());
  return r;
}

NormResult boyd(const Mat& m, const Space& from, const Space& to, const SearchOptions& opt) {
  const int R = std::max(1, opt.restarts);
  std::vector<NormResult> res(R);
  Space dfrom = dual(from);
  Mat mt = m.transpose();
  parallel_for(R, [&](int r) {
    auto rng = item_rng(opt.seed, std::uint64_t(r));
    Vec x = random_unit(from, rng);
    double val = norm(m * x, to);
    for (int it = 0; it < opt.iterations; ++it) {
      Vec y = m * x;
      double ny = norm(y, to);
      if (ny == 0.0) break;
      Vec ys = duality_map(y / ny, to);
      Vec g = mt * ys;
      double ng = norm(g, dfrom);
      if (ng == 0.0) break;
      Vec xn = duality_map(g / ng, dfrom);
      xn = normalized(xn, from);
      double vn = norm(m * xn, to);
      if (!(vn > val)) break;
      bool small = vn - val <= 1e-12 * vn;
      x = xn;
      val = vn;
      if (small) break;
    }
    res[r].value = val;
    res[r].witness = x;
  });
  int best = 0;
  for (int r = 1; r < R; ++r)
    if (res[r].value > res[best].value) best = r;
  NormResult out = res[best];
  out.certainty = Certainty::heuristic;
  out.method = "power_iteration";
  return out;
}

NormResult dense_norm(const Mat& m, const Space& from, const Space& to, const SearchOptions& opt) {
  NormResult r;
  const int n = from.dim();
  if (m.cwiseAbs().maxCoeff() == 0.0) {
    r.value = 0.0;
    r.certainty = Certainty::exact;
    r.witness = normalized(basis(n, 0), from);
    r.method = "zero";
    return r;
  }
  if (from.is_leaf() && from.p() == 1.0) {
    int best = 0;
    double bv = -1.0;
    for (int j = 0; j < n; ++j) {
      double v = norm(m.col(j), to);
      if (v > bv) {
        bv = v;
        best = j;
      }
    }
    r.value = bv;
    r.witness = basis(n, best);
    r.certainty = Certainty::exact;
    r.method = "column_max";
    return r;
  }
  if (from.hilbert() && to.hilbert()) {
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
    r.value = svd.singularValues()[0];
    Vec v = svd.matrixV().col(0);
    r.witness = v;
    r.certainty = Certainty::exact;
    r.method = "svd";
    return r;
  }
  if (from.is_leaf() && std::isinf(from.p()) && !from.is_complex() && n <= opt.enum_cap) {
    Vec x = Vec::Ones(n);
    Vec y = m * x;
    double bv = norm(y, to);
    Vec bx = x;
    // Gray code over the first n-1 signs; the last stays +1 by symmetry
    const std::uint64_t total = n > 1 ? (std::uint64_t(1) << (n - 1)) : 1;
    for (std::uint64_t k = 1; k < total; ++k) {
      int j = std::countr_zero(k);
      y -= 2.0 * x[j] * m.col(j);
      x[j] = -x[j];
      double v = norm(y, to);
      if (v > bv) {
        bv = v;
        bx = x;
      }
    }
    r.value = bv;
    r.witness = bx;
    r.certainty = Certainty::enumerated;
    r.method = "sign_enumeration";
    return r;
  }
  if (from.is_leaf() && std::isinf(from.p()) && from.is_complex() && n <= opt.complex_grid_cap) {
    const int G = opt.phase_grid;
    std::vector<cplx> roots(G);
    for (int g = 0; g < G; ++g) roots[g] = std::polar(1.0, 2.0 * std::numbers::pi * g / G);
    std::uint64_t total = 1;
    for (int j = 1; j < n; ++j) total *= std::uint64_t(G);
    Vec x = Vec::Ones(n);
    double bv = -1.0;
    Vec bx = x;
    for (std::uint64_t k = 0; k < total; ++k) {
      std::uint64_t code = k;
      for (int j = 1; j < n; ++j) {
        x[j] = roots[code % G];
        code /= G;
      }
      double v = norm(m * x, to);
      if (v > bv) {
        bv = v;
        bx = x;
      }
    }
    SearchOptions o = opt;
    NormResult pb = boyd(m, from, to, o);
    r.value = bv;
    r.witness = bx;
    if (pb.value > bv) r = pb;
    r.certainty = Certainty::heuristic;
    r.method = "phase_grid";
    return r;
  }
  if (!from.is_leaf() && from.p() == 1.0) {
    int n1 = from.first().dim();
    NormResult a = dense_norm(m.leftCols(n1), from.first(), to, opt);
    NormResult b = dense_norm(m.rightCols(n - n1), from.second(), to, opt);
    r.certainty = weakest(a.certainty, b.certainty);
    r.method = "l1_sum_split";
    Vec w = Vec::Zero(n);
    if (a.value >= b.value) {
      r.value = a.value;
      if (a.witness) w.head(n1) = *a.witness;
    } else {
      r.value = b.value;
      if (b.witness) w.tail(n - n1) = *b.witness;
    }
    r.witness = w;
    return r;
  }
  return boyd(m, from, to, opt);
}

}  // namespace

NormResult operator_norm(const Operator& t, const SearchOptions& opt) {
  Operator c = canonical(t);
  const OpNode& n = c.node();
  switch (c.kind()) {
    case OpKind::diagonal:
      if (c.from().is_leaf() && c.to().is_leaf()) return diagonal_norm(c);
      break;
    case OpKind::rank_one: {
      NormResult r;
      double ny = norm(n.y, c.to());
      double nf = dual_norm(n.f, c.from());
      r.value = ny * nf;
      r.certainty = Certainty::exact;
      r.method = "rank_one";
      if (nf > 0)
        r.witness = normalized(duality_map(n.f / nf, dual(c.from())), c.from());
      else
        r.witness = normalized(basis(c.from().dim(), 0), c.from());
      return r;
    }
    case OpKind::scale: {
      NormResult r = operator_norm(n.children[0], opt);
      r.value *= std::abs(n.factor);
      return r;
    }
    case OpKind::lift: {
      NormResult r = operator_norm(n.children[0], opt);
      if (r.witness) {
        Vec w = Vec::Zero(c.from().dim());
        w.head(r.witness->size()) = *r.witness;
        r.witness = w;
      }
      r.method = "lift";
      return r;
    }
    case OpKind::direct_sum: {
      NormResult a = operator_norm(n.children[0], opt);
      NormResult b = operator_norm(n.children[1], opt);
      NormResult r;
      r.certainty = weakest(a.certainty, b.certainty);
      r.method = "direct_sum";
      int n1 = n.children[0].from().dim();
      Vec w = Vec::Zero(c.from().dim());
      bool first = a.value >= b.value;
      r.value = first ? a.value : b.value;
      const auto& wit = first ? a.witness : b.witness;
      if (wit) {
        if (first)
          w.head(n1) = *wit;
        else
          w.tail(c.from().dim() - n1) = *wit;
        r.witness = w;
      }
      return r;
    }
    case OpKind::adjoint: {
      NormResult inner = operator_norm(n.children[0], opt);
      NormResult direct = dense_norm(c.matrix(), c.from(), c.to(), opt);
      if (inner.certainty != Certainty::heuristic && int(inner.certainty) < int(direct.certainty)) {
        NormResult r = inner;
        r.method = "adjoint";
        r.witness.reset();
        if (inner.witness) {
          const Operator& ch = n.children[0];
          Vec y = ch.apply(*inner.witness);
          double ny = norm(y, ch.to());
          if (ny > 0) r.witness = normalized(duality_map(y / ny, ch.to()), c.from());
        }
        return r;
      }
      return direct;
    }
    default:
      break;
  }
  return dense_norm(c.matrix(), c.from(), c.to(), opt);
}

namespace {

NormingSet functional_face(const Vec& f, const Space& from) {
  NormingSet ns;
  ns.space = from;
  double nf = dual_norm(f, from);
  if (nf == 0.0) {
    ns.kind = NormingSet::Kind::all;
    return ns;
  }
  if (from.is_leaf() && from.p() == 1.0) {
    ns.kind = NormingSet::Kind::l1_face;
    ns.sigma = Vec::Zero(from.dim());
    for (int j = 0; j < from.dim(); ++j) {
      if (std::abs(f[j]) >= nf * (1.0 - 1e-12)) {
        ns.J.push_back(j);
        ns.sigma[j] = std::conj(phase(f[j]));
      }
    }
    return ns;
  }
  if (from.is_leaf() && std::isinf(from.p())) {
    ns.kind = NormingSet::Kind::linf_face;
    ns.sigma = Vec::Zero(from.dim());
    for (int j = 0; j < from.dim(); ++j) {
      if (f[j] != cplx(0.0)) {
        ns.J.push_back(j);
        ns.sigma[j] = std::conj(phase(f[j]));
      }
    }
    return ns;
  }
  if (from.is_leaf()) {
    ns.kind = NormingSet::Kind::phase_orbit;
    ns.sigma = normalized(duality_map(f / nf, dual(from)), from);
    return ns;
  }
  ns.kind = NormingSet::Kind::explicit_list;
  ns.complete = false;
  ns.points.push_back(normalized(duality_map(f / nf, dual(from)), from));
  return ns;
}

}  // namespace

NormingSet norming_set(const Operator& t, const SearchOptions& opt) {
  Operator c = canonical(t);
  const OpNode& n = c.node();
  NormingSet ns;
  ns.space = c.from();
  switch (c.kind()) {
    case OpKind::scale:
      if (n.factor == cplx(0.0)) {
        ns.kind = NormingSet::Kind::all;
        return ns;
      }
      return norming_set(n.children[0], opt);
    case OpKind::rank_one:
      if (norm(n.y, c.to()) == 0.0) {
        ns.kind = NormingSet::Kind::all;
        return ns;
      }
      return functional_face(n.f, c.from());
    case OpKind::diagonal:
      if (c.from() == c.to() && c.from().is_leaf() && n.spec.materializable()) {
        auto a = n.spec.materialize(c.from().dim());
        double m = 0.0;
        for (auto v : a) m = std::max(m, std::abs(v));
        for (int i = 0; i < c.from().dim(); ++i)
          if (std::abs(a[i]) >= m * (1.0 - 1e-12)) ns.J.push_back(i);
        if (m == 0.0 || int(ns.J.size()) == c.from().dim()) {
          ns.kind = NormingSet::Kind::all;
          return ns;
        }
        ns.kind = std::isinf(c.from().p()) ? NormingSet::Kind::coordinate_unimodular
                                           : NormingSet::Kind::support_constrained;
        return ns;
      }
      break;
    default:
      break;
  }
  if (c.from().hilbert() && c.to().hilbert()) {
    const Mat& m = c.matrix();
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
    double s1 = svd.singularValues()[0];
    if (s1 == 0.0) {
      ns.kind = NormingSet::Kind::all;
      return ns;
    }
    int k = 0;
    while (k < svd.singularValues().size() && svd.singularValues()[k] >= s1 * (1.0 - 1e-10)) ++k;
    if (k == c.from().dim()) {
      ns.kind = NormingSet::Kind::all;
      return ns;
    }
    ns.kind = NormingSet::Kind::subspace;
    ns.basis = svd.matrixV().leftCols(k);
    return ns;
  }
  NormResult r = operator_norm(c, opt);
  if (r.certainty == Certainty::heuristic)
    throw Error(ErrorCode::refused, "norming set refused: the operator norm is only a heuristic lower bound");
  ns.kind = NormingSet::Kind::explicit_list;
  ns.complete = false;
  if (r.witness) ns.points.push_back(*r.witness);
  return ns;
}

Interval distance_to_norming_set(const Vec& x, const NormingSet& ns) {
  const Space& s = ns.space;
  const int n = s.dim();
  if (x.size() != n) throw Error(ErrorCode::dimension, "vector does not match the norming set's space");
  const bool real = !s.is_complex();
  switch (ns.kind) {
    case NormingSet::Kind::all:
      return {0.0, 0.0};
    case NormingSet::Kind::empty:
      return {kInf, kInf};
    case NormingSet::Kind::support_constrained: {
      std::vector<char> in(n, 0);
      for (int j : ns.J) in[j] = 1;
      Vec xj = Vec::Zero(n), xo = Vec::Zero(n);
      for (int j = 0; j < n; ++j) (in[j] ? xj : xo)[j] = x[j];
      double p = s.p();
      double A = lp_norm(xj, p), off = lp_norm(xo, p);
      double d;
      if (p == 1.0)
        d = std::abs(1.0 - A) + off;
      else
        d = std::pow(std::pow(std::abs(1.0 - A), p) + std::pow(off, p), 1.0 / p);
      return {d, d};
    }
    case NormingSet::Kind::coordinate_unimodular: {
      double d = kInf;
      for (int j : ns.J) d = std::min(d, std::max(0.0, 1.0 - std::abs(x[j])));
      return {d, d};
    }
    case NormingSet::Kind::phase_orbit: {
      const Vec& u = ns.sigma;
      if (real) {
        double d = std::min(norm(x - u, s), norm(x + u, s));
        return {d, d};
      }
      if (s.hilbert()) {
        double d = std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(u.dot(x))));
        return {d, d};
      }
      return detail::circle_min([&](cplx c) { return norm(x - c * u, s); }, norm(u, s));
    }
    case NormingSet::Kind::l1_face: {
      std::vector<char> in(n, 0);
      for (int j : ns.J) in[j] = 1;
      double off = 0.0, A = 0.0;
      for (int j = 0; j < n; ++j) (in[j] ? A : off) += std::abs(x[j]);
      auto cost = [&](cplx c) {
        double neg = 0.0, pos = 0.0;
        for (int j : ns.J) {
          double u = (x[j] * std::conj(c * ns.sigma[j])).real();
          if (u > 0)
            pos += u;
          else
            neg -= u;
        }
        return off + neg + std::abs(1.0 - pos);
      };
      if (real) {
        double d = std::min(cost(1.0), cost(-1.0));
        return {d, d};
      }
      if (ns.J.size() == 1) {
        double d = off + std::max(0.0, 1.0 - std::abs(x[ns.J[0]]));
        return {d, d};
      }
      // the imaginary residue is dropped by cost(), so it only bounds from above after adding it back
      double up = kInf;
      for (int g = 0; g < 4096; ++g) {
        cplx c = std::polar(1.0, 2.0 * std::numbers::pi * g / 4096);
        double im = 0.0;
        for (int j : ns.J) im += std::abs((x[j] * std::conj(c * ns.sigma[j])).imag());
        up = std::min(up, cost(c) + im);
      }
      double lo = std::max(0.0, 2.0 * (1.0 - A));
      return {std::min(lo, up), up};
    }
    case NormingSet::Kind::linf_face: {
      auto cost = [&](cplx c) {
        double m = 0.0;
        for (int j : ns.J) m = std::max(m, std::abs(x[j] - c * ns.sigma[j]));
        return m;
      };
      if (real) {
        double d = std::min(cost(1.0), cost(-1.0));
        return {d, d};
      }
      return detail::circle_min(cost, 1.0);
    }
    case NormingSet::Kind::subspace: {
      Vec px = ns.basis * (ns.basis.adjoint() * x);
      double a = px.norm();
      double d = std::sqrt((1.0 - a) * (1.0 - a) + (x - px).squaredNorm());
      return {d, d};
    }
    case NormingSet::Kind::explicit_list: {
      double d = kInf;
      for (const auto& p : ns.points) {
        d = std::min(d, norm(x - p, s));
        d = std::min(d, norm(x + p, s));
      }
      return {ns.complete ? d : 0.0, d};
    }
  }
  return {kInf, kInf};
}

Interval distance_to_norming_set(const Vec& x, const Operator& t) { return distance_to_norming_set(x, norming_set(t)); }

}  // namespace bl
