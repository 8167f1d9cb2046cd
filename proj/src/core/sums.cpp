#include "bollobas/sums.hpp"

#include <cmath>
#include <sstream>

#include "bollobas/parallel.hpp"
#include "bollobas/probe.hpp"

namespace bl {

std::string to_string(TransferDirection d) {
  return d == TransferDirection::lift_nu_to_norm ? "lift_nu_to_norm" : "norm_to_lift_nu";
}

namespace {

bool smooth_convex(const Space& s) { return s.is_leaf() && s.p() > 1.0 && !std::isinf(s.p()); }

void require_outer(double p) {
  if (!(p == 1.0 || std::isinf(p)))
    throw Error(ErrorCode::geometry, "transfers are available for 1-sums and inf-sums only");
}

std::string unit_norm_note(const Operator& t) {
  NormResult nr = operator_norm(t);
  if (nr.certainty != Certainty::heuristic && std::abs(nr.value - 1.0) > 1e-9)
    throw Error(ErrorCode::not_normalized, "T must have norm 1");
  return "|T| = " + format_double(nr.value) + " (" + to_string(nr.certainty) + ")";
}

}  // namespace

SumTransferResult lift_nu_implies_norm(const Operator& t, double outer_p, const EtaFunction& eta_lift) {
  require_outer(outer_p);
  SumTransferResult r;
  r.direction = TransferDirection::lift_nu_to_norm;
  r.outer_p = outer_p;
  r.hypotheses_checked.push_back(unit_norm_note(t));
  NuResult nu = numerical_radius(lift(t, outer_p));
  r.hypotheses_checked.push_back(std::string("lift attains its numerical radius: ") +
                                 (nu.witness && nu.certainty != Certainty::heuristic ? "yes" : "unverified"));
  r.eta = outer_p == 1.0 ? eta_lift : eta_lift.scaled(0.5);
  return r;
}

SumTransferResult norm_implies_lift_nu(const Operator& t, double outer_p, const EtaFunction& eta_t) {
  require_outer(outer_p);
  const Space &w = t.from(), &z = t.to();
  SumTransferResult r;
  r.direction = TransferDirection::norm_to_lift_nu;
  r.outer_p = outer_p;
  EtaFunction half = EtaFunction::identity().scaled(0.5);
  if (outer_p == 1.0) {
    if (!smooth_convex(w)) throw Error(ErrorCode::geometry, "W must be uniformly smooth, got " + w.str());
    if (!smooth_convex(z)) throw Error(ErrorCode::geometry, "Z must be uniformly smooth, got " + z.str());
    r.hypotheses_checked.push_back("W uniformly smooth: " + w.str());
    r.hypotheses_checked.push_back("Z uniformly smooth: " + z.str());
    r.hypotheses_checked.push_back(unit_norm_note(t));
    EtaFunction dw = EtaFunction::modulus(dual(w)).scaled(0.5);
    EtaFunction dz = EtaFunction::modulus(dual(z)).scaled(0.5);
    EtaFunction inner = EtaFunction::min({dw, dz, half});
    r.eta = EtaFunction::min({eta_t.of(inner), dw, dz, half});
    return r;
  }
  if (!smooth_convex(z)) throw Error(ErrorCode::geometry, "Z must be uniformly convex, got " + z.str());
  if (!smooth_convex(w)) throw Error(ErrorCode::geometry, "W must be uniformly smooth, got " + w.str());
  r.hypotheses_checked.push_back("Z uniformly convex: " + z.str());
  r.hypotheses_checked.push_back("W uniformly smooth: " + w.str());
  r.hypotheses_checked.push_back(unit_norm_note(t));
  EtaFunction dz_half = EtaFunction::modulus(z).scaled(0.5);
  EtaFunction dzs = EtaFunction::modulus(dual(z));
  EtaFunction eps0 = EtaFunction::min({dzs.of(EtaFunction::min({dz_half, half})).scaled(0.5), dz_half, half});
  r.eta = EtaFunction::min({eps0, eta_t.of(eps0)});
  return r;
}

PsumReport psum_counterexample(double outer_p, int n, std::uint64_t seed) {
  if (!(outer_p > 1.0) || std::isinf(outer_p)) throw Error(ErrorCode::geometry, "the p-sum exponent must lie in (1, inf)");
  if (n < 1) throw Error(ErrorCode::dimension, "block dimension must be at least 1");
  Space x = Space::lp(2.0, n);
  Operator id = dense(Mat::Identity(n, n), x, x);
  Operator lifted = lift(id, outer_p);
  PsumReport r;
  r.outer_p = outer_p;
  r.dim = n;
  NuResult nu = numerical_radius(lifted);
  r.nu = nu.value;
  r.margin = 1.0 - r.nu;
  SearchOptions so;
  so.seed = seed;
  so.restarts = 32;
  so.iterations = 3000;
  Space s = lifted.from();
  NuResult direct = numerical_radius(dense(lifted.matrix(), s, s), so);
  r.search_value = direct.value;
  r.attains_one = direct.value >= 1.0 - 1e-9 || nu.value >= 1.0 - 1e-9;
  double q = conjugate_exponent(outer_p);
  std::ostringstream o;
  o.precision(12);
  o << "a pairing |<(x1*, x2*), (0, x1)>| = |<x2*, x1>| <= |x1| |x2*| and |x2*| = |x2|^(p-1) for states of the "
    << "p-sum";
  r.trace.push_back(o.str());
  o.str("");
  o << "with |x1|^p + |x2|^p = 1 the product |x1| |x2|^(p-1) peaks at |x1|^p = 1/p, giving p^(-1/p) q^(-1/q) = "
    << std::pow(outer_p, -1.0 / outer_p) * std::pow(q, -1.0 / q);
  r.trace.push_back(o.str());
  o.str("");
  o << "a state with pairing 1 would need <x1*, x1> + <x2*, x2> = 1 with one term carrying everything, which "
    << "the bound above excludes; nu = " << r.nu << ", best searched pairing = " << r.search_value;
  r.trace.push_back(o.str());
  return r;
}

Operator corner_operator(double outer_p, int dim) {
  if (!(outer_p == 1.0 || std::isinf(outer_p))) throw Error(ErrorCode::geometry, "the corner lives on 1-sums and inf-sums");
  if (dim < 2) throw Error(ErrorCode::dimension, "corner dimension must be at least 2");
  Space w = Space::lp(2.0, dim);
  Space s = Space::sum(w, w, outer_p);
  Vec e = Vec::Zero(2 * dim);
  e[0] = 1.0;
  return rank_one(e, e, s, s);
}

CornerReport corner_counterexample(double outer_p, int dim, std::uint64_t seed) {
  Operator sop = corner_operator(outer_p, dim);
  const Space& s = sop.from();
  const Space ds = dual(s);
  CornerReport rep;
  rep.outer_p = outer_p;
  rep.dim = dim;
  NuResult nu = numerical_radius(sop);
  rep.nu = nu.value;
  rep.nu_attained = nu.witness && nu.certainty == Certainty::exact && std::abs(nu.value - 1.0) <= 1e-12 &&
                    is_state_pair(nu.witness->x, nu.witness->xstar, s) &&
                    std::abs(std::abs(pair(nu.witness->xstar, sop.apply(nu.witness->x))) - 1.0) <= 1e-12;
  if (nu.witness) rep.witness = *nu.witness;
  const Mat dl = delift(sop, Space::lp(2.0, dim), Space::lp(2.0, dim)).matrix();
  rep.delift_zero = (dl.array() == cplx(0.0)).all();

  const std::vector<double> eps = {0.01, 0.05, 0.1, 0.2};
  const int trials = 1000;
  rep.repairs.resize(eps.size());
  parallel_for(int(eps.size()), [&](int k) {
    const double e = eps[k];
    auto rng = item_rng(seed, std::uint64_t(k));
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    CornerRepair cr;
    cr.epsilon = e;
    double root = std::sqrt(2.0 * e);
    cr.bound_dx = outer_p == 1.0 ? e + root : root;
    cr.bound_dxstar = outer_p == 1.0 ? root : e + root;
    int accepted = 0;
    for (int it = 0; it < 200 * trials && accepted < trials; ++it) {
      double scale = e * u01(rng);
      Vec x = Vec::Zero(2 * dim);
      x[0] = u01(rng) < 0.5 ? 1.0 : -1.0;
      for (int j = 0; j < 2 * dim; ++j) x[j] += scale * g(rng);
      if (std::isinf(outer_p) && u01(rng) < 0.5) {
        // put the second block on its sphere as well, so the dual mass can split
        double nz = x.tail(dim).norm();
        if (nz > 0) x.tail(dim) /= nz;
      }
      x = normalized(x, s);
      Vec xs = support_states(x, s, 1e-12).sample(rng);
      double val = std::abs(pair(xs, sop.apply(x)));
      if (!(val > 1.0 - e)) continue;
      ++accepted;
      Vec xt = Vec::Zero(2 * dim), xst = Vec::Zero(2 * dim);
      xt[0] = phase(x[0]);
      xst[0] = phase(xs[0]);
      if (outer_p == 1.0) {
        xst.tail(dim) = xs.tail(dim);
      } else {
        xt.tail(dim) = x.tail(dim);
      }
      double dx = norm(x - xt, s), dxs = norm(xs - xst, ds);
      cr.worst_dx = std::max(cr.worst_dx, dx);
      cr.worst_dxstar = std::max(cr.worst_dxstar, dxs);
      bool state = is_state_pair(xt, xst, s) && std::abs(std::abs(pair(xst, sop.apply(xt))) - 1.0) <= 1e-9;
      cr.states_ok = cr.states_ok && state;
    }
    cr.trials = accepted;
    cr.pass = accepted == trials && cr.states_ok && cr.worst_dx <= cr.bound_dx + 1e-12 &&
              cr.worst_dxstar <= cr.bound_dxstar + 1e-12;
    rep.repairs[k] = cr;
  });
  rep.pass = rep.nu_attained && rep.delift_zero;
  for (const auto& cr : rep.repairs) rep.pass = rep.pass && cr.pass;
  return rep;
}

}  // namespace bl
