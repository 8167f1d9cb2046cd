#include "bollobas/numerical_radius.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "bollobas/parallel.hpp"
#include "search.hpp"

namespace bl {

std::string to_string(NuAttaining::Kind k) {
  switch (k) {
    case NuAttaining::Kind::all: return "all";
    case NuAttaining::Kind::empty: return "empty";
    case NuAttaining::Kind::diag_classes: return "diag_classes";
    case NuAttaining::Kind::hilbert_real: return "hilbert_real";
    case NuAttaining::Kind::hilbert_complex: return "hilbert_complex";
    case NuAttaining::Kind::l1_vertex: return "l1_vertex";
    case NuAttaining::Kind::lift_states: return "lift_states";
    case NuAttaining::Kind::lift_rank_one: return "lift_rank_one";
    case NuAttaining::Kind::corner: return "corner";
    case NuAttaining::Kind::sampled: return "sampled";
  }
  return "empty";
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec basis(int n, int j) {
  Vec e = Vec::Zero(n);
  e[j] = 1.0;
  return e;
}

Certainty weakest(Certainty a, Certainty b) { return int(a) > int(b) ? a : b; }

StatePair basis_state(const Space& s, int j) {
  Vec x = normalized(basis(s.dim(), j), s);
  return {x, duality_map(x, s)};
}

struct ThetaEval {
  double theta = 0.0;
  double lam = 0.0;
  Vec v;
};

// top eigenpair of the Hermitian part of e^{it} M
ThetaEval eval_theta(const Mat& m, double t) {
  cplx e = std::polar(1.0, t);
  Mat h = (e * m + std::conj(e) * m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  int n = int(m.rows());
  return {t, es.eigenvalues()[n - 1], es.eigenvectors().col(n - 1)};
}

// |z| for the intersection of Re(e^{ia} z) = la and Re(e^{ib} z) = lb
double vertex_modulus(const ThetaEval& a, const ThetaEval& b) {
  double det = std::sin(a.theta - b.theta);
  if (std::abs(det) < 1e-300) return std::max(a.lam, b.lam);
  double x = (-a.lam * std::sin(b.theta) + b.lam * std::sin(a.theta)) / det;
  double y = (std::cos(a.theta) * b.lam - std::cos(b.theta) * a.lam) / det;
  return std::max({std::hypot(x, y), a.lam, b.lam});
}

NuResult complex_hilbert_nu(const Mat& m) {
  const int G = 256;
  const double gap_tol = 1e-10;
  const int max_evals = 1 << 16;
  struct Arc {
    ThetaEval a, b;
    double up;
    bool operator<(const Arc& o) const { return up < o.up || (up == o.up && a.theta > o.a.theta); }
  };
  std::vector<ThetaEval> grid(G);
  for (int k = 0; k < G; ++k) grid[k] = eval_theta(m, kTwoPi * k / G);
  ThetaEval best = grid[0];
  for (const auto& g : grid)
    if (g.lam > best.lam) best = g;
  std::priority_queue<Arc> heap;
  for (int k = 0; k < G; ++k) {
    ThetaEval a = grid[k], b = grid[(k + 1) % G];
    if (k + 1 == G) b.theta += kTwoPi;
    heap.push({a, b, vertex_modulus(a, b)});
  }
  int evals = G;
  while (heap.top().up - best.lam > gap_tol && evals < max_evals) {
    Arc arc = heap.top();
    heap.pop();
    ThetaEval mid = eval_theta(m, 0.5 * (arc.a.theta + arc.b.theta));
    ++evals;
    if (mid.lam > best.lam) best = mid;
    heap.push({arc.a, mid, vertex_modulus(arc.a, mid)});
    heap.push({mid, arc.b, vertex_modulus(mid, arc.b)});
  }
  NuResult r;
  r.value = std::max(0.0, best.lam);
  r.upper = std::max(r.value, heap.top().up);
  r.certainty = Certainty::grid_refined;
  r.method = "theta_polygon";
  r.witness = StatePair{best.v, best.v.conjugate()};
  return r;
}

NuResult real_hilbert_nu(const Mat& m) {
  RMat h = (m.real() + m.real().transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<RMat> es(h);
  int n = int(h.rows());
  double lo = es.eigenvalues()[0], hi = es.eigenvalues()[n - 1];
  RVec v = std::abs(lo) > hi ? RVec(es.eigenvectors().col(0)) : RVec(es.eigenvectors().col(n - 1));
  NuResult r;
  r.value = std::max(std::abs(lo), std::abs(hi));
  r.upper = r.value;
  r.certainty = Certainty::exact;
  r.method = "symmetric_part";
  Vec x = v.cast<cplx>();
  r.witness = StatePair{x, x};
  return r;
}

NuResult l1_nu(const Mat& m) {
  const int n = int(m.rows());
  int best = 0;
  double bv = -1.0;
  for (int j = 0; j < n; ++j) {
    double s = m.col(j).cwiseAbs().sum();
    if (s > bv) {
      bv = s;
      best = j;
    }
  }
  Vec xs(n);
  cplx w = phase(m(best, best));
  for (int i = 0; i < n; ++i) xs[i] = i == best ? cplx(1.0) : std::conj(phase(m(i, best))) * w;
  NuResult r;
  r.value = r.upper = bv;
  r.certainty = Certainty::exact;
  r.method = "l1_columns";
  r.witness = StatePair{basis(n, best), xs};
  return r;
}

NuResult linf_nu(const Mat& m) {
  const int n = int(m.rows());
  int best = 0;
  double bv = -1.0;
  for (int i = 0; i < n; ++i) {
    double s = m.row(i).cwiseAbs().sum();
    if (s > bv) {
      bv = s;
      best = i;
    }
  }
  Vec x(n);
  cplx w = phase(m(best, best));
  for (int j = 0; j < n; ++j) x[j] = j == best ? cplx(1.0) : std::conj(phase(m(best, j))) * w;
  NuResult r;
  r.value = r.upper = bv;
  r.certainty = Certainty::exact;
  r.method = "linf_rows";
  r.witness = StatePair{x, basis(n, best)};
  return r;
}

// the state for x maximizing |<x*, y>| when the support set is a leaf face
Vec best_state(const SupportSet& s, const Vec& y, const Vec& hint) {
  switch (s.kind) {
    case SupportSet::Kind::unique:
      return s.fixed;
    case SupportSet::Kind::l1_face: {
      Vec xs = s.fixed;
      cplx w = phase(pair(s.fixed, y));
      for (int j : s.free) xs[j] = std::conj(phase(y[j])) * w;
      return xs;
    }
    case SupportSet::Kind::linf_face: {
      int best = s.free.front();
      for (int j : s.free)
        if (std::abs(y[j]) > std::abs(y[best])) best = j;
      Vec xs = Vec::Zero(s.fixed.size());
      xs[best] = s.fixed[best];
      return xs;
    }
    default: {
      Vec a = s.pick(hint);
      Vec b = s.pick(y.conjugate());
      return std::abs(pair(a, y)) >= std::abs(pair(b, y)) ? a : b;
    }
  }
}

NuResult search_nu(const Mat& m, const Space& s, const SearchOptions& opt) {
  const int R = std::max(1, opt.restarts);
  const int n = s.dim();
  std::vector<detail::Point> res(R);
  detail::Evaluator f = [&](const Vec& x, const Vec& u) {
    detail::Point p;
    if (norm(x, s) == 0.0) return p;
    Vec xh = snap_to_faces(normalized(x, s), s, 1e-9);
    Vec y = m * xh;
    SupportSet st = support_states(xh, s, 1e-9);
    p.x = xh;
    p.xs = best_state(st, y, u);
    p.value = std::abs(pair(p.xs, y));
    p.feasible = true;
    return p;
  };
  parallel_for(R, [&](int r) {
    auto rng = item_rng(opt.seed, std::uint64_t(r));
    Vec x = r < n ? basis(n, r) : random_unit(s, rng);
    Vec u = random_vector(n, s.field(), rng);
    res[r] = detail::climb(x, u, f, s.field(), opt.iterations, rng);
  });
  int best = 0;
  for (int r = 1; r < R; ++r)
    if (res[r].value > res[best].value) best = r;
  NuResult out;
  out.value = std::max(0.0, res[best].value);
  out.certainty = Certainty::heuristic;
  out.method = "state_search";
  if (res[best].feasible) out.witness = StatePair{res[best].x, res[best].xs};
  return out;
}

// the norm is an upper bound; a witness reaching it closes the gap
void sandwich(NuResult& r, const Operator& c, const SearchOptions& opt) {
  NormResult nr = operator_norm(c, opt);
  if (nr.certainty == Certainty::heuristic) return;
  r.upper = std::min(r.upper, nr.value);
  if (r.value >= nr.value * (1.0 - 1e-12)) {
    r.value = nr.value;
    r.certainty = Certainty::exact;
    r.method += "+norm_bound";
  }
}

}  // namespace

NuResult numerical_radius(const Operator& t, const SearchOptions& opt) {
  Operator c = canonical(t);
  if (!c.square()) throw Error(ErrorCode::invalid_input, "numerical radius needs an operator from a space to itself");
  const OpNode& nd = c.node();
  const Space& s = c.from();
  switch (c.kind()) {
    case OpKind::diagonal: {
      if (!s.is_leaf()) break;
      NuResult r;
      r.certainty = Certainty::exact;
      r.method = "diagonal";
      if (!nd.spec.materializable()) {
        r.value = r.upper = nd.spec.analyze().sup_modulus;
        return r;
      }
      auto a = nd.spec.materialize(s.dim());
      int best = 0;
      for (int i = 1; i < s.dim(); ++i)
        if (std::abs(a[i]) > std::abs(a[best])) best = i;
      r.value = r.upper = std::abs(a[best]);
      r.witness = basis_state(s, best);
      return r;
    }
    case OpKind::scale: {
      NuResult r = numerical_radius(nd.children[0], opt);
      double k = std::abs(nd.factor);
      r.value *= k;
      r.upper *= k;
      return r;
    }
    case OpKind::lift: {
      const Operator& ch = nd.children[0];
      NormResult nr = operator_norm(ch, opt);
      double p = nd.outer_p;
      double k = 1.0;
      if (!std::isinf(p) && p != 1.0) {
        double q = conjugate_exponent(p);
        k = std::pow(p, -1.0 / p) * std::pow(q, -1.0 / q);
      }
      NuResult r;
      r.value = k * nr.value;
      r.upper = nr.certainty == Certainty::heuristic ? kInf : r.value;
      r.certainty = nr.certainty;
      r.method = "lift";
      const int nw = ch.from().dim(), nz = ch.to().dim();
      if (nr.value == 0.0 || !nr.witness) {
        if (nr.value == 0.0) r.witness = basis_state(s, 0);
        return r;
      }
      Vec w = *nr.witness;
      Vec tw = ch.apply(w);
      Vec v = tw / norm(tw, ch.to());
      Vec x = Vec::Zero(nw + nz);
      if (p == 1.0) {
        x.head(nw) = w;
      } else if (std::isinf(p)) {
        x.head(nw) = w;
        x.tail(nz) = v;
      } else {
        double q = conjugate_exponent(p);
        x.head(nw) = std::pow(p, -1.0 / p) * w;
        x.tail(nz) = std::pow(q, -1.0 / p) * v;
      }
      Vec xs = Vec::Zero(nw + nz);
      if (p == 1.0) {
        xs.head(nw) = duality_map(w, ch.from());
        xs.tail(nz) = duality_map(v, ch.to());
      } else if (std::isinf(p)) {
        xs.tail(nz) = duality_map(v, ch.to());
      } else {
        xs = duality_map(x, s);
      }
      r.witness = StatePair{x, xs};
      return r;
    }
    case OpKind::direct_sum: {
      NuResult a = numerical_radius(nd.children[0], opt);
      NuResult b = numerical_radius(nd.children[1], opt);
      NuResult r;
      r.certainty = weakest(a.certainty, b.certainty);
      r.method = "direct_sum";
      r.upper = std::max(a.upper, b.upper);
      bool first = a.value >= b.value;
      const NuResult& w = first ? a : b;
      r.value = w.value;
      const int n1 = nd.children[0].from().dim(), n = s.dim();
      if (w.witness) {
        Vec x = Vec::Zero(n), xs = Vec::Zero(n);
        if (first) {
          x.head(n1) = w.witness->x;
          xs.head(n1) = w.witness->xstar;
        } else {
          x.tail(n - n1) = w.witness->x;
          xs.tail(n - n1) = w.witness->xstar;
        }
        r.witness = StatePair{x, xs};
      }
      return r;
    }
    default:
      break;
  }
  const Mat& m = c.matrix();
  if (m.cwiseAbs().maxCoeff() == 0.0) {
    NuResult r;
    r.value = r.upper = 0.0;
    r.certainty = Certainty::exact;
    r.method = "zero";
    r.witness = basis_state(s, 0);
    return r;
  }
  if (s.is_leaf() && s.p() == 1.0) return l1_nu(m);
  if (s.is_leaf() && std::isinf(s.p())) return linf_nu(m);
  if (s.hilbert()) return s.is_complex() ? complex_hilbert_nu(m) : real_hilbert_nu(m);
  NuResult r = search_nu(m, s, opt);
  sandwich(r, c, opt);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

NuAttaining all_states(const Space& s, double nu) {
  NuAttaining a;
  a.kind = NuAttaining::Kind::all;
  a.space = s;
  a.nu = nu;
  return a;
}

NuAttaining sampled(const Space& s, const NuResult& r) {
  NuAttaining a;
  a.kind = NuAttaining::Kind::sampled;
  a.space = s;
  a.nu = r.value;
  a.complete = false;
  if (r.witness) a.samples.push_back(*r.witness);
  return a;
}

NuAttaining diag_states(const Space& s, const std::vector<cplx>& alpha) {
  double nu = 0.0;
  for (auto v : alpha) nu = std::max(nu, std::abs(v));
  if (nu == 0.0) return all_states(s, 0.0);
  NuAttaining a;
  a.kind = NuAttaining::Kind::diag_classes;
  a.space = s;
  a.nu = nu;
  std::vector<cplx> reps;
  int total = 0;
  for (int i = 0; i < int(alpha.size()); ++i) {
    if (std::abs(alpha[i]) < nu * (1.0 - 1e-12)) continue;
    cplx v = alpha[i] / nu;
    size_t l = 0;
    while (l < reps.size() && std::abs(reps[l] - v) > 1e-12) ++l;
    if (l == reps.size()) {
      reps.push_back(v);
      a.classes.emplace_back();
    }
    a.classes[l].push_back(i);
    ++total;
  }
  if (a.classes.size() == 1 && total == s.dim()) return all_states(s, nu);
  return a;
}

Mat top_eigenspace(const Mat& h, bool negative, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const int n = int(h.rows());
  std::vector<int> idx;
  if (negative) {
    double l0 = es.eigenvalues()[0];
    for (int i = 0; i < n && es.eigenvalues()[i] <= l0 + tol; ++i) idx.push_back(i);
  } else {
    double l0 = es.eigenvalues()[n - 1];
    for (int i = n - 1; i >= 0 && es.eigenvalues()[i] >= l0 - tol; --i) idx.push_back(i);
  }
  Mat b(n, idx.size());
  for (size_t k = 0; k < idx.size(); ++k) b.col(k) = es.eigenvectors().col(idx[k]);
  return b;
}

NuAttaining real_hilbert_states(const Space& s, const Mat& m) {
  Mat h = ((m + m.transpose()) / 2.0).real().cast<cplx>();
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const int n = s.dim();
  double lo = es.eigenvalues()[0], hi = es.eigenvalues()[n - 1];
  double nu = std::max(std::abs(lo), std::abs(hi));
  double tol = 1e-10 * std::max(1.0, nu);
  NuAttaining a;
  a.kind = NuAttaining::Kind::hilbert_real;
  a.space = s;
  a.nu = nu;
  if (hi >= nu - tol) a.bases.push_back(top_eigenspace(h, false, tol));
  if (-lo >= nu - tol) a.bases.push_back(top_eigenspace(h, true, tol));
  for (const auto& b : a.bases)
    if (b.cols() == n) return all_states(s, nu);
  return a;
}

NuAttaining complex_hilbert_states(const Space& s, const Mat& m, const NuResult& r) {
  const int G = 1024;
  std::vector<ThetaEval> grid(G);
  for (int k = 0; k < G; ++k) grid[k] = eval_theta(m, kTwoPi * k / G);
  double nu = r.value;
  double near = nu - 1e-7 * std::max(1.0, nu);
  std::vector<int> hot;
  for (int k = 0; k < G; ++k)
    if (grid[k].lam >= near) hot.push_back(k);
  if (hot.empty() || int(hot.size()) > 16) return sampled(s, r);
  // clusters of adjacent grid indices, cyclically
  std::vector<std::vector<int>> clusters;
  for (int k : hot) {
    if (!clusters.empty() && clusters.back().back() + 1 == k)
      clusters.back().push_back(k);
    else
      clusters.push_back({k});
  }
  if (clusters.size() > 1 && clusters.front().front() == 0 && clusters.back().back() == G - 1) {
    for (int k : clusters.front()) clusters.back().push_back(k + G);
    clusters.erase(clusters.begin());
  }
  NuAttaining a;
  a.kind = NuAttaining::Kind::hilbert_complex;
  a.space = s;
  a.nu = nu;
  const double h = kTwoPi / G;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  for (const auto& cl : clusters) {
    double lo = (cl.front() - 1) * h, hi = (cl.back() + 1) * h;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = eval_theta(m, x1).lam, f2 = eval_theta(m, x2).lam;
    for (int it = 0; it < 100; ++it) {
      if (f1 > f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = eval_theta(m, x1).lam;
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = eval_theta(m, x2).lam;
      }
    }
    double t = f1 > f2 ? x1 : x2;
    cplx e = std::polar(1.0, t);
    Mat herm = (e * m + std::conj(e) * m.adjoint()) / 2.0;
    a.bases.push_back(top_eigenspace(herm, false, 1e-8 * std::max(1.0, nu)));
  }
  return a;
}

NuAttaining l1_states(const Space& s, const Mat& m, const NuResult& r) {
  const int n = s.dim();
  std::vector<double> col(n);
  double nu = 0.0;
  for (int j = 0; j < n; ++j) nu = std::max(nu, col[j] = m.col(j).cwiseAbs().sum());
  if (nu == 0.0) return all_states(s, 0.0);
  std::vector<int> top;
  for (int j = 0; j < n; ++j)
    if (col[j] >= nu * (1.0 - 1e-12)) top.push_back(j);
  if (top.size() != 1) return sampled(s, r);
  NuAttaining a;
  a.kind = NuAttaining::Kind::l1_vertex;
  a.space = s;
  a.nu = nu;
  a.column = top[0];
  a.col = m.col(top[0]);
  return a;
}

bool is_e1(const Vec& v) {
  if (v.size() == 0 || v[0] != cplx(1.0)) return false;
  for (int i = 1; i < v.size(); ++i)
    if (v[i] != cplx(0.0)) return false;
  return true;
}

}  // namespace

NuAttaining nu_attaining_states(const Operator& t, const SearchOptions& opt) {
  Operator c = canonical(t);
  if (!c.square()) throw Error(ErrorCode::invalid_input, "numerical radius needs an operator from a space to itself");
  const OpNode& nd = c.node();
  const Space& s = c.from();
  if (c.kind() == OpKind::scale) {
    if (nd.factor == cplx(0.0)) return all_states(s, 0.0);
    NuAttaining a = nu_attaining_states(nd.children[0], opt);
    a.nu *= std::abs(nd.factor);
    return a;
  }
  if (c.kind() == OpKind::diagonal && s.is_leaf() && nd.spec.materializable())
    return diag_states(s, nd.spec.materialize(s.dim()));
  if (c.kind() == OpKind::rank_one && !s.is_leaf() && !s.is_complex() && s.first().hilbert() &&
      s.second().hilbert() && s.first().dim() == s.second().dim() && (s.p() == 1.0 || std::isinf(s.p())) &&
      is_e1(nd.y) && is_e1(nd.f)) {
    NuAttaining a;
    a.kind = NuAttaining::Kind::corner;
    a.space = s;
    a.nu = 1.0;
    a.outer_p = s.p();
    a.split = s.first().dim();
    return a;
  }
  if (c.kind() == OpKind::lift && (nd.outer_p == 1.0 || std::isinf(nd.outer_p)) && !s.is_complex()) {
    const Operator& ch = nd.children[0];
    if (ch.from().hilbert() && ch.to().hilbert() && ch.realizable()) {
      Eigen::JacobiSVD<Mat> svd(ch.matrix(), Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      if (sv[0] == 0.0) return all_states(s, 0.0);
      if (sv.size() == 1 || sv[1] < sv[0] * (1.0 - 1e-9)) {
        NuAttaining a;
        a.kind = NuAttaining::Kind::lift_states;
        a.space = s;
        a.nu = sv[0];
        a.outer_p = nd.outer_p;
        a.split = ch.from().dim();
        a.v = svd.matrixV().col(0).real().cast<cplx>();
        Vec tv = ch.apply(a.v);
        a.tv = tv / tv.norm();
        return a;
      }
    }
  }
  if (c.kind() == OpKind::lift && nd.outer_p == 1.0) {
    Operator ch = canonical(nd.children[0]);
    const Space &w = ch.from(), &z = ch.to();
    if (ch.kind() == OpKind::rank_one && w.is_leaf() && z.is_leaf() && w.p() == 1.0 && z.p() == 1.0) {
      const Vec& f = ch.node().f;
      double top = f.cwiseAbs().maxCoeff();
      int count = 0, m = 0;
      for (int j = 0; j < f.size(); ++j)
        if (std::abs(f[j]) >= top * (1.0 - 1e-12)) {
          if (count++ == 0) m = j;
        }
      double ny = lp_norm(ch.node().y, 1.0);
      if (top == 0.0 || ny == 0.0) return all_states(s, 0.0);
      if (count == 1) {
        NuAttaining a;
        a.kind = NuAttaining::Kind::lift_rank_one;
        a.space = s;
        a.nu = top * ny;
        a.column = m;
        a.col = ch.node().y;
        a.split = w.dim();
        return a;
      }
    }
  }
  NuResult r = numerical_radius(c, opt);
  if (r.certainty == Certainty::heuristic)
    throw Error(ErrorCode::refused, "attaining states refused: the numerical radius is only a heuristic lower bound");
  if (r.value == 0.0) return all_states(s, 0.0);
  if (!c.realizable()) return sampled(s, r);
  const Mat& m = c.matrix();
  if (s.is_leaf() && s.p() == 1.0) return l1_states(s, m, r);
  if (s.hilbert()) return s.is_complex() ? complex_hilbert_states(s, m, r) : real_hilbert_states(s, m);
  return sampled(s, r);
}

// ---------------------------------------------------------------------------

namespace {

PairDistance exact_pair(double dx, double dxs) {
  PairDistance d;
  d.dx = dx;
  d.dxstar = dxs;
  double j = std::max(dx, dxs);
  d.joint = {j, j};
  return d;
}

void keep_min(PairDistance& best, const PairDistance& cand) {
  if (cand.joint.upper < best.joint.upper) {
    best.dx = cand.dx;
    best.dxstar = cand.dxstar;
  }
  best.joint.lower = std::min(best.joint.lower, cand.joint.lower);
  best.joint.upper = std::min(best.joint.upper, cand.joint.upper);
}

PairDistance diag_distance(const StatePair& sp, const NuAttaining& a) {
  const Space& s = a.space;
  const int n = s.dim();
  const double p = s.p();
  PairDistance best;
  for (const auto& cl : a.classes) {
    std::vector<char> in(n, 0);
    for (int j : cl) in[j] = 1;
    Vec xj = Vec::Zero(n), xo = Vec::Zero(n), sj = Vec::Zero(n), so = Vec::Zero(n);
    for (int j = 0; j < n; ++j) {
      (in[j] ? xj : xo)[j] = sp.x[j];
      (in[j] ? sj : so)[j] = sp.xstar[j];
    }
    PairDistance d;
    if (p == 1.0) {
      double A = lp_norm(xj, 1.0);
      double dx = std::abs(1.0 - A) + lp_norm(xo, 1.0);
      double dxs = 0.0;
      if (A == 0.0) {
        dxs = kInf;
        for (int j : cl) dxs = std::min(dxs, 1.0 - std::min(1.0, std::abs(sp.xstar[j])));
      }
      d = exact_pair(dx, dxs);
    } else if (std::isinf(p)) {
      double B = lp_norm(sj, 1.0);
      double dxs = std::abs(1.0 - B) + lp_norm(so, 1.0);
      double dx = 0.0;
      if (B == 0.0) {
        dx = kInf;
        for (int j : cl) dx = std::min(dx, 1.0 - std::min(1.0, std::abs(sp.x[j])));
      }
      d = exact_pair(dx, dxs);
    } else {
      double q = conjugate_exponent(p);
      double A = lp_norm(xj, p), off = lp_norm(xo, p);
      double As = lp_norm(sj, q), offs = lp_norm(so, q);
      double dx = std::pow(std::pow(std::abs(1.0 - A), p) + std::pow(off, p), 1.0 / p);
      double dxs = std::pow(std::pow(std::abs(1.0 - As), q) + std::pow(offs, q), 1.0 / q);
      d = exact_pair(dx, dxs);
    }
    keep_min(best, d);
  }
  return best;
}

PairDistance hilbert_distance(const StatePair& sp, const NuAttaining& a) {
  PairDistance best;
  const bool cx = a.space.is_complex();
  for (const auto& b : a.bases) {
    Vec px = b * (b.adjoint() * sp.x);
    double np = px.norm();
    Vec y = np > 0 ? Vec(px / np) : Vec(b.col(0));
    Vec ys = cx ? Vec(y.conjugate()) : y;
    keep_min(best, exact_pair((sp.x - y).norm(), (sp.xstar - ys).norm()));
  }
  return best;
}

PairDistance l1_vertex_distance(const StatePair& sp, const NuAttaining& a) {
  const int n = a.space.dim();
  const int m = a.column;
  double rest = 0.0;
  for (int j = 0; j < n; ++j)
    if (j != m) rest += std::abs(sp.x[j]);
  const bool omega_free = a.col[m] == cplx(0.0);
  auto cost = [&](cplx phi, cplx omega) {
    double dx = std::abs(sp.x[m] - phi) + rest;
    double dxs = std::abs(sp.xstar[m] - std::conj(phi));
    for (int i = 0; i < n; ++i) {
      if (i == m) continue;
      if (a.col[i] == cplx(0.0)) {
        dxs = std::max(dxs, std::max(0.0, std::abs(sp.xstar[i]) - 1.0));
      } else {
        dxs = std::max(dxs, std::abs(sp.xstar[i] - std::conj(phi) * omega * std::conj(phase(a.col[i]))));
      }
    }
    return exact_pair(dx, dxs);
  };
  PairDistance best;
  if (!a.space.is_complex()) {
    for (double phi : {1.0, -1.0}) {
      if (omega_free) {
        keep_min(best, cost(phi, 1.0));
        keep_min(best, cost(phi, -1.0));
      } else {
        keep_min(best, cost(phi, phase(a.col[m])));
      }
    }
    return best;
  }
  if (!omega_free) {
    cplx w = phase(a.col[m]);
    Interval iv = detail::circle_min([&](cplx phi) { return cost(phi, w).joint.upper; }, 1.0);
    PairDistance d;
    d.joint = iv;
    d.dx = d.dxstar = iv.upper;
    return d;
  }
  const int G = 256;
  double up = kInf;
  for (int g = 0; g < G; ++g)
    for (int k = 0; k < G; ++k)
      up = std::min(up, cost(std::polar(1.0, kTwoPi * g / G), std::polar(1.0, kTwoPi * k / G)).joint.upper);
  PairDistance d;
  d.joint = {std::max(0.0, up - kTwoPi / G), up};
  d.dx = d.dxstar = up;
  return d;
}

PairDistance lift_distance(const StatePair& sp, const NuAttaining& a) {
  const Space& s = a.space;
  const Space ds = dual(s);
  const int n = s.dim(), nw = a.split;
  PairDistance best;
  for (double sg : {1.0, -1.0}) {
    for (double rg : {1.0, -1.0}) {
      Vec y = Vec::Zero(n), ys = Vec::Zero(n);
      if (a.outer_p == 1.0) {
        y.head(nw) = sg * a.v;
        ys.head(nw) = sg * a.v;
        ys.tail(n - nw) = rg * a.tv;
      } else {
        y.head(nw) = sg * a.v;
        y.tail(n - nw) = rg * a.tv;
        ys.tail(n - nw) = rg * a.tv;
      }
      keep_min(best, exact_pair(norm(sp.x - y, s), norm(sp.xstar - ys, ds)));
    }
  }
  return best;
}

PairDistance lift_rank_one_distance(const StatePair& sp, const NuAttaining& a) {
  const int n = a.space.dim(), nw = a.split, m = a.column;
  double rest = 0.0, slack_free = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j != m) rest += std::abs(sp.x[j]);
    bool bound = j >= nw && a.col[j - nw] != cplx(0.0);
    if (j != m && !bound) slack_free = std::max(slack_free, std::abs(sp.xstar[j]) - 1.0);
  }
  auto zpart = [&](cplx psi) {
    double d = 0.0;
    for (int j = nw; j < n; ++j)
      if (a.col[j - nw] != cplx(0.0)) d = std::max(d, std::abs(sp.xstar[j] - psi * std::conj(phase(a.col[j - nw]))));
    return d;
  };
  auto wpart = [&](cplx phi, double zd) {
    double dx = std::abs(sp.x[m] - phi) + rest;
    double dxs = std::max({std::abs(sp.xstar[m] - std::conj(phi)), slack_free, zd});
    return exact_pair(dx, dxs);
  };
  PairDistance best;
  if (!a.space.is_complex()) {
    double zd = std::min(zpart(1.0), zpart(-1.0));
    keep_min(best, wpart(1.0, zd));
    keep_min(best, wpart(-1.0, zd));
    return best;
  }
  Interval z = detail::circle_min(zpart, 1.0);
  Interval lo = detail::circle_min([&](cplx phi) { return wpart(phi, z.lower).joint.upper; }, 1.0);
  Interval up = detail::circle_min([&](cplx phi) { return wpart(phi, z.upper).joint.upper; }, 1.0);
  best.joint = {lo.lower, up.upper};
  best.dx = best.dxstar = up.upper;
  return best;
}

PairDistance corner_distance(const StatePair& sp, const NuAttaining& a) {
  const int n = a.space.dim(), k = a.split;
  PairDistance best;
  for (double sg : {1.0, -1.0}) {
    Vec e = Vec::Zero(k);
    e[0] = sg;
    double dw = (sp.x.head(k) - e).norm(), dws = (sp.xstar.head(k) - e).norm();
    double z = sp.x.tail(n - k).norm(), zs = sp.xstar.tail(n - k).norm();
    if (a.outer_p == 1.0)
      keep_min(best, exact_pair(dw + z, std::max(dws, std::max(0.0, zs - 1.0))));
    else
      keep_min(best, exact_pair(std::max(dw, std::max(0.0, z - 1.0)), dws + zs));
  }
  return best;
}

}  // namespace

PairDistance distance_to_nu_attaining(const StatePair& sp, const NuAttaining& a) {
  const int n = a.space.dim();
  if (sp.x.size() != n || sp.xstar.size() != n)
    throw Error(ErrorCode::dimension, "state pair does not match the attaining set's space");
  switch (a.kind) {
    case NuAttaining::Kind::all:
      return exact_pair(0.0, 0.0);
    case NuAttaining::Kind::empty:
      return PairDistance{};
    case NuAttaining::Kind::diag_classes:
      return diag_distance(sp, a);
    case NuAttaining::Kind::hilbert_real:
    case NuAttaining::Kind::hilbert_complex:
      return hilbert_distance(sp, a);
    case NuAttaining::Kind::l1_vertex:
      return l1_vertex_distance(sp, a);
    case NuAttaining::Kind::lift_states:
      return lift_distance(sp, a);
    case NuAttaining::Kind::lift_rank_one:
      return lift_rank_one_distance(sp, a);
    case NuAttaining::Kind::corner:
      return corner_distance(sp, a);
    case NuAttaining::Kind::sampled: {
      PairDistance best;
      const Space ds = dual(a.space);
      for (const auto& q : a.samples)
        keep_min(best, exact_pair(norm(sp.x - q.x, a.space), norm(sp.xstar - q.xstar, ds)));
      best.joint.lower = 0.0;
      return best;
    }
  }
  return PairDistance{};
}

PairDistance distance_to_nu_attaining(const StatePair& sp, const Operator& t) {
  return distance_to_nu_attaining(sp, nu_attaining_states(t));
}

}  // namespace bl
