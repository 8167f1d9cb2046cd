#include "bollobas/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "bollobas/membership.hpp"
#include "bollobas/parallel.hpp"
#include "bollobas/probe.hpp"
#include "bollobas/sums.hpp"

namespace bl {

namespace {

Vec unit(int n, int j) {
  Vec e = Vec::Zero(n);
  e[j] = 1.0;
  return e;
}

std::string num(double v) { return format_double(v); }

ClaimResult verdict(const std::string& name, bool pass, std::string detail) { return {name, pass, std::move(detail)}; }

Claim norm_claim(const Operator& t, double expected, double tol) {
  std::string name = "norm is " + num(expected);
  return {name, [=] {
            NormResult r = operator_norm(t);
            bool ok = r.certainty != Certainty::heuristic && std::abs(r.value - expected) <= tol;
            return verdict(name, ok, num(r.value) + " (" + to_string(r.certainty) + ")");
          }};
}

Claim attains_norm_claim(const Operator& t) {
  std::string name = "attains its norm";
  return {name, [=] {
            NormResult r = operator_norm(t);
            if (!r.witness) return verdict(name, false, "no witness");
            double v = norm(t.apply(*r.witness), t.to());
            bool ok = std::abs(norm(*r.witness, t.from()) - 1.0) <= 1e-12 && std::abs(v - r.value) <= 1e-12;
            return verdict(name, ok, "|T x0| = " + num(v));
          }};
}

Claim nu_claim(const Operator& t, double expected, double tol, bool need_witness) {
  std::string name = "numerical radius is " + num(expected) + (need_witness ? ", attained" : "");
  return {name, [=] {
            NuResult r = numerical_radius(t);
            bool ok = r.certainty != Certainty::heuristic && std::abs(r.value - expected) <= tol;
            std::string d = num(r.value) + " (" + to_string(r.certainty) + ")";
            if (need_witness) {
              bool w = r.witness && is_state_pair(r.witness->x, r.witness->xstar, t.from()) &&
                       std::abs(std::abs(pair(r.witness->xstar, t.apply(r.witness->x))) - r.value) <= 1e-12;
              ok = ok && w;
              d += w ? ", witness checks" : ", witness fails";
            }
            return verdict(name, ok, d);
          }};
}

// a point whose value is 1 - slack and whose distance to the norming set is at least gap
Claim norm_witness_claim(const std::string& name, const Operator& t, const Vec& x, double slack, double gap) {
  return {name, [=] {
            double v = norm(t.apply(x), t.to());
            Interval d = distance_to_norming_set(x, t);
            bool ok = std::abs(norm(x, t.from()) - 1.0) <= 1e-12 && std::abs((1.0 - v) - slack) <= 1e-12 &&
                      d.exact() && d.lower >= gap - 1e-12;
            return verdict(name, ok, "slack " + num(1.0 - v) + ", distance " + num(d.lower));
          }};
}

ProbeOptions light(std::uint64_t seed, int restarts, int iterations) {
  ProbeOptions o;
  o.seed = seed;
  o.restarts = restarts;
  o.iterations = iterations;
  return o;
}

// eta_hat(eps) <= bound, with the witness re-checked against the oracles
Claim probe_claim(const Operator& t, Mode mode, double eps, double bound, ProbeOptions opt) {
  std::string name = "probe at eps " + num(eps) + " finds slack <= " + num(bound);
  return {name, [=] {
            ProbeReport r = eta_probe(t, {eps}, mode, opt)[0];
            if (r.status != ProbeReport::Status::found || !r.x) return verdict(name, false, to_string(r.status));
            double v, d;
            if (mode == Mode::norm) {
              v = norm(t.apply(*r.x), t.to());
              d = distance_to_norming_set(*r.x, t).lower;
            } else {
              v = std::abs(pair(*r.xstar, t.apply(*r.x)));
              d = distance_to_nu_attaining({*r.x, *r.xstar}, t).joint.lower;
            }
            bool ok = r.eta_hat <= bound * (1.0 + 1e-9) && std::abs((1.0 - v) - r.eta_hat) <= 1e-8 && d >= eps - 1e-8;
            return verdict(name, ok, "eta_hat " + num(r.eta_hat) + ", distance " + num(d));
          }};
}

Claim validate_claim(const std::string& name, const Operator& t, const EtaFunction& eta, std::vector<double> eps,
                     Mode mode, ProbeOptions opt, bool expect_pass) {
  return {name, [=] {
            ValidationReport v = validate_eta(t, eta, eps, mode, opt);
            std::string d;
            for (const auto& row : v.rows) {
              if (!d.empty()) d += "; ";
              d += "eps " + num(row.epsilon) + ": eta " + num(row.eta) + ", eta_hat " + num(row.probe.eta_hat) +
                   (row.pass ? "" : " (violated)");
            }
            return verdict(name, v.pass == expect_pass, d);
          }};
}

Claim verdict_claim(const std::string& name, std::function<Verdict()> f, Verdict::Outcome want, std::string theorem) {
  return {name, [=] {
            Verdict v = f();
            bool ok = v.outcome == want && v.theorem == theorem;
            return verdict(name, ok, to_string(v.outcome) + " [" + v.theorem + "] " + v.reason);
          }};
}

Claim basis_sum_claim(const Operator& t, int k) {
  Vec x = Vec::Ones(k);
  x[k - 1] = 0.0;
  return norm_witness_claim("e_1 + ... + e_(k-1) has slack 2^-(k-1) at distance 1", t, x, std::ldexp(1.0, -(k - 1)),
                            1.0);
}

GalleryEntry block(const GalleryParams& gp) {
  double p = gp.p == 0.0 ? 2.0 : gp.p;
  if (!(p > 1.0) || std::isinf(p)) throw Error(ErrorCode::geometry, "G-BLOCK needs an inner exponent in (1, inf)");
  const int N = gp.dim;
  std::vector<cplx> a(2 * N);
  for (int n = 1; n <= N; ++n) {
    a[2 * n - 2] = 1.0 - 1.0 / (2.0 * n);
    a[2 * n - 1] = 1.0;
  }
  Space s = Space::lp(p, 2 * N);
  GalleryEntry e;
  e.op = diagonal(a, s);
  e.description = "blocks (x, y) |-> ((1 - 1/2n) x, y) on the ell_p sum of " + std::to_string(N) + " planes, p = " + num(p);
  Operator t = e.op;
  e.claims.push_back(norm_claim(t, 1.0, 1e-12));
  e.claims.push_back(attains_norm_claim(t));
  e.claims.push_back({"norming points live on the second block coordinates", [=] {
                        NormingSet ns = norming_set(t);
                        std::vector<int> want;
                        for (int n = 0; n < N; ++n) want.push_back(2 * n + 1);
                        bool ok = ns.kind == NormingSet::Kind::support_constrained && ns.complete && ns.J == want;
                        return verdict("norming points live on the second block coordinates", ok, to_string(ns.kind));
                      }});
  e.claims.push_back({"e_(1,n) has value 1 - 1/2n and distance >= 1", [=] {
                        const std::string name = "e_(1,n) has value 1 - 1/2n and distance >= 1";
                        double worst = kInf;
                        bool ok = true;
                        for (int n = 1; n <= N; ++n) {
                          Vec x = unit(2 * N, 2 * n - 2);
                          double v = norm(t.apply(x), s);
                          Interval d = distance_to_norming_set(x, t);
                          ok = ok && std::abs(v - (1.0 - 1.0 / (2.0 * n))) <= 1e-15 && d.exact() && d.lower >= 1.0;
                          worst = std::min(worst, d.lower);
                        }
                        return verdict(name, ok, "smallest distance " + num(worst));
                      }});
  ProbeOptions o = light(gp.seed, 4, 200);
  o.seeds.push_back(unit(2 * N, 2 * N - 2));
  e.claims.push_back(probe_claim(t, Mode::norm, 0.5, 1.0 / (2.0 * N), o));
  return e;
}

GalleryEntry rank1_c0(const GalleryParams& gp) {
  const int k = gp.dim;
  Space s = Space::lp(kInf, k);
  Vec w(k);
  for (int j = 0; j < k; ++j) w[j] = std::ldexp(1.0, -(j + 1));
  GalleryEntry e;
  e.op = rank_one(unit(k, 0), w, s, s);
  e.description = "x |-> (sum_j 2^-j x_j) e_1 on real c_0 truncated at " + std::to_string(k);
  Operator t = e.op;
  const double top = 1.0 - std::ldexp(1.0, -k);
  e.claims.push_back({"acts on (1, ..., 1) as (sum 2^-j, 0, ..., 0)", [=] {
                        Vec y = t.apply(Vec::Ones(k));
                        Vec want = Vec::Zero(k);
                        want[0] = top;
                        double err = (y - want).cwiseAbs().maxCoeff();
                        return verdict("acts on (1, ..., 1) as (sum 2^-j, 0, ..., 0)", err <= 1e-15, "error " + num(err));
                      }});
  e.claims.push_back(norm_claim(t, top, 1e-15));
  e.claims.push_back(nu_claim(t, top, 1e-15, true));
  e.claims.push_back({"adjoint maps e_1 to (1/2, ..., 1/2^k)", [=] {
                        Operator a = adjoint(t);
                        double err = (a.apply(unit(k, 0)) - w).cwiseAbs().maxCoeff();
                        bool ok = err <= 1e-15 && a.from().p() == 1.0;
                        return verdict("adjoint maps e_1 to (1/2, ..., 1/2^k)", ok, "error " + num(err));
                      }});
  SequenceSpec f;
  f.tail.kind = Tail::Kind::geometric;
  f.tail.c = 1.0;
  f.tail.r = 0.5;
  e.claims.push_back(verdict_claim(
      "the weight functional on c_0 is not a member", [=] { return functional_member(f, SpaceFamily::c0()); },
      Verdict::Outcome::not_member, "functional-c0"));
  return e;
}

Operator rank1_l1_op(int k) {
  Space s = Space::lp(1.0, k);
  return rank_one(folded_weights(k), unit(k, 0), s, s);
}

GalleryEntry rank1_l1(const GalleryParams& gp) {
  const int k = gp.dim;
  GalleryEntry e;
  e.op = rank1_l1_op(k);
  e.description = "x |-> x_1 w on real ell_1^" + std::to_string(k) + ", w the folded geometric weights";
  Operator t = e.op;
  e.claims.push_back(norm_claim(t, 1.0, 1e-15));
  e.claims.push_back(attains_norm_claim(t));
  e.claims.push_back(nu_claim(t, 1.0, 1e-15, true));
  std::vector<double> grid;
  for (int i = 1; i <= 9; ++i) grid.push_back(i / 10.0);
  e.claims.push_back(validate_claim("eta = eps/2 survives the probe on eps 0.1..0.9", t, rank1_l1_eta(), grid,
                                    Mode::norm, light(gp.seed, 16, 300), true));
  e.claims.push_back({"repair x -> x_1/|x_1| e_1 lands within eps", [=] {
                        const std::string name = "repair x -> x_1/|x_1| e_1 lands within eps";
                        Space s = t.from();
                        auto rng = item_rng(gp.seed, 7);
                        std::uniform_real_distribution<double> u(0.0, 1.0);
                        bool ok = true;
                        int used = 0;
                        double worst = 0.0;
                        for (double eps : grid) {
                          for (int i = 0; i < 200; ++i) {
                            Vec x = random_unit(s, rng) * (eps * u(rng));
                            x[0] += u(rng) < 0.5 ? 1.0 : -1.0;
                            x = normalized(x, s);
                            if (!(norm(t.apply(x), s) > 1.0 - eps / 2.0)) continue;
                            Vec y = rank1_l1_repair(x);
                            double d = norm(x - y, s);
                            ok = ok && d < eps && std::abs(norm(t.apply(y), s) - 1.0) <= 1e-15;
                            worst = std::max(worst, d / eps);
                            ++used;
                          }
                        }
                        return verdict(name, ok && used > 0,
                                       std::to_string(used) + " points, worst |x - y|/eps " + num(worst));
                      }});

  Operator lifted = lift(t, 1.0);
  const int n = 2 * k;
  StatePair sp;
  sp.x = unit(n, 0);
  sp.xstar = Vec::Zero(n);
  sp.xstar[0] = 1.0;
  for (int j = 0; j < k - 1; ++j) sp.xstar[k + j] = 1.0;
  const double slack = std::ldexp(1.0, -(k - 1));
  e.claims.push_back(nu_claim(lifted, 1.0, 1e-15, true));
  e.claims.push_back({"lifted: ((e_1, 0), (e_1, 1, ..., 1, 0)) has slack 2^-(k-1), dual distance >= 1", [=] {
                        const std::string name =
                            "lifted: ((e_1, 0), (e_1, 1, ..., 1, 0)) has slack 2^-(k-1), dual distance >= 1";
                        double v = std::abs(pair(sp.xstar, lifted.apply(sp.x)));
                        PairDistance d = distance_to_nu_attaining(sp, lifted);
                        bool ok = is_state_pair(sp.x, sp.xstar, lifted.from()) && std::abs((1.0 - v) - slack) <= 1e-15 &&
                                  d.dxstar >= 1.0 - 1e-12;
                        return verdict(name, ok, "slack " + num(1.0 - v) + ", dual distance " + num(d.dxstar));
                      }});
  ProbeOptions o = light(gp.seed, 4, 200);
  o.seed_pairs.push_back(sp);
  e.claims.push_back(probe_claim(lifted, Mode::nu, 0.5, slack, o));
  const double eta_c = std::max(2.0 * slack, 1e-6);
  e.claims.push_back(validate_claim("lifted: constant eta " + num(eta_c) + " is defeated at eps 0.5", lifted,
                                    EtaFunction::constant(eta_c), {0.5}, Mode::nu, o, false));
  return e;
}

GalleryEntry bidual(const GalleryParams& gp) {
  const int k = gp.dim;
  GalleryEntry e;
  e.op = adjoint(rank1_l1_op(k));
  e.description = "the adjoint of G-RANK1-L1: z |-> (sum_j w_j z_j) e_1 on real ell_inf^" + std::to_string(k);
  Operator t = e.op;
  Vec w = folded_weights(k);
  e.claims.push_back({"acts as z |-> (sum_j w_j z_j) e_1", [=] {
                        auto rng = item_rng(gp.seed, 11);
                        double err = 0.0;
                        for (int i = 0; i < 8; ++i) {
                          Vec z = i == 0 ? Vec(Vec::Ones(k)) : random_unit(t.from(), rng);
                          Vec want = Vec::Zero(k);
                          want[0] = (w.transpose() * z)(0);
                          err = std::max(err, (t.apply(z) - want).cwiseAbs().maxCoeff());
                        }
                        bool ok = err <= 1e-15 && t.from().p() == kInf;
                        return verdict("acts as z |-> (sum_j w_j z_j) e_1", ok, "error " + num(err));
                      }});
  e.claims.push_back(norm_claim(t, 1.0, 1e-15));
  e.claims.push_back(attains_norm_claim(t));
  e.claims.push_back(basis_sum_claim(t, k));
  ProbeOptions o = light(gp.seed, 4, 200);
  Vec x = Vec::Ones(k);
  x[k - 1] = 0.0;
  o.seeds.push_back(x);
  e.claims.push_back(probe_claim(t, Mode::norm, 0.5, std::ldexp(1.0, -(k - 1)), o));
  return e;
}

GalleryEntry func_linf(const GalleryParams& gp) {
  const int k = gp.dim;
  GalleryEntry e;
  e.op = functional(folded_weights(k), Space::lp(kInf, k));
  e.description = "the functional x |-> sum_j w_j x_j on real ell_inf^" + std::to_string(k);
  Operator t = e.op;
  e.claims.push_back(norm_claim(t, 1.0, 1e-15));
  e.claims.push_back(attains_norm_claim(t));
  e.claims.push_back(basis_sum_claim(t, k));
  SequenceSpec f;
  f.tail.kind = Tail::Kind::geometric;
  f.tail.c = 1.0;
  f.tail.r = 0.5;
  e.claims.push_back(verdict_claim(
      "(1/2, 1/4, ...) on ell_inf is not a member", [=] { return functional_member(f, SpaceFamily::linf()); },
      Verdict::Outcome::not_member, "functional-linf-geometric"));
  ProbeOptions o = light(gp.seed, 4, 200);
  Vec x = Vec::Ones(k);
  x[k - 1] = 0.0;
  o.seeds.push_back(x);
  e.claims.push_back(probe_claim(t, Mode::norm, 0.5, std::ldexp(1.0, -(k - 1)), o));
  return e;
}

SequenceSpec zstar_spec() {
  SequenceSpec f;
  f.prefix = {1.0};
  f.tail.kind = Tail::Kind::approach;
  f.tail.c = 1.0;
  return f;
}

GalleryEntry diag_zstar(const GalleryParams& gp) {
  const int k = gp.dim;
  auto vals = zstar_spec().materialize(k);
  Vec z(k);
  for (int i = 0; i < k; ++i) z[i] = vals[i];
  GalleryEntry e;
  e.op = functional(z, Space::lp(1.0, k));
  e.description = "the functional (1, 1/2, 2/3, ..., (k-1)/k) on real ell_1^" + std::to_string(k);
  Operator t = e.op;
  e.claims.push_back(norm_claim(t, 1.0, 1e-15));
  e.claims.push_back({"norming points are the rotations of e_1", [=] {
                        NormingSet ns = norming_set(t);
                        bool ok = ns.complete && (ns.kind == NormingSet::Kind::phase_orbit ||
                                                  (ns.kind == NormingSet::Kind::l1_face && ns.J == std::vector<int>{0}));
                        if (ok && ns.kind == NormingSet::Kind::phase_orbit)
                          ok = std::abs(std::abs(ns.sigma[0]) - 1.0) <= 1e-15 && ns.sigma.tail(k - 1).norm() == 0.0;
                        return verdict("norming points are the rotations of e_1", ok, to_string(ns.kind));
                      }});
  e.claims.push_back(norm_witness_claim("e_k has slack 1/k at distance 2", t, unit(k, k - 1), 1.0 / k, 2.0));
  e.claims.push_back(verdict_claim(
      "z* on ell_1 is not a member", [] { return functional_member(zstar_spec(), SpaceFamily::lp(1.0)); },
      Verdict::Outcome::not_member, "functional-l1-ratio-family"));
  ProbeOptions o = light(gp.seed, 4, 200);
  o.seeds.push_back(unit(k, k - 1));
  e.claims.push_back(probe_claim(t, Mode::norm, 0.5, 1.0 / k, o));
  const double eta_c = 2.0 / k;
  e.claims.push_back(validate_claim("constant eta " + num(eta_c) + " is defeated at eps 0.5", t,
                                    EtaFunction::constant(eta_c), {0.5}, Mode::norm, o, false));
  return e;
}

struct SkewLayout {
  int pairs = 0;
  std::vector<int> j3;  // 0-based
};

SkewLayout skew_layout(int n, int ell) {
  SkewLayout l;
  int rest = n - ell;
  if (rest % 2) --rest;  // the trailing block absorbs one index
  l.pairs = rest / 2;
  for (int j = rest; j < n; ++j) l.j3.push_back(j);
  return l;
}

GalleryEntry skew(const GalleryParams& gp) {
  const int n = gp.dim;
  const double alpha = gp.alpha;
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorCode::invalid_input, "G-SKEW needs 0 < alpha <= 1");
  if (gp.ell < 1) throw Error(ErrorCode::invalid_input, "G-SKEW needs a trailing block of size at least 1");
  if (n < gp.ell + 2) throw Error(ErrorCode::dimension, "G-SKEW needs dim >= ell + 2");
  SkewLayout l = skew_layout(n, gp.ell);
  Mat m = Mat::Zero(n, n);
  for (int k = 1; k <= l.pairs; ++k) {
    double ak = k == 1 ? 2.0 : 2.0 * std::ldexp(1.0, -k);
    int nk = 2 * k - 2, mk = 2 * k - 1;
    m(mk, nk) = -ak;
    m(nk, mk) = ak;
  }
  for (int j : l.j3) m(j, j) = alpha;
  Space s = Space::lp(2.0, n);
  GalleryEntry e;
  e.op = dense(m, s, s);
  e.description = "e_(n_k) |-> -a_k e_(m_k), e_(m_k) |-> a_k e_(n_k) on odd/even pairs, alpha on the last " +
                  std::to_string(l.j3.size()) + " coordinates of real ell_2^" + std::to_string(n);
  Operator t = e.op;
  e.claims.push_back(norm_claim(t, std::max(2.0, alpha), 1e-9));
  e.claims.push_back(nu_claim(t, alpha, 1e-9, true));
  e.claims.push_back({"the skew pairs contribute nothing to <Tx, x>", [=] {
                        auto rng = item_rng(gp.seed, 13);
                        double err = 0.0;
                        for (int i = 0; i < 32; ++i) {
                          Vec x = random_unit(s, rng);
                          double want = 0.0;
                          for (int j : l.j3) want += alpha * std::norm(x[j]);
                          err = std::max(err, std::abs(pair(x, t.apply(x)) - want));
                        }
                        return verdict("the skew pairs contribute nothing to <Tx, x>", err <= 1e-12, "error " + num(err));
                      }});
  e.claims.push_back({"e_n attains the numerical radius for n in the trailing block", [=] {
                        bool ok = true;
                        for (int j : l.j3) {
                          Vec x = unit(n, j);
                          ok = ok && std::abs(std::abs(pair(x, t.apply(x))) - alpha) <= 1e-15;
                        }
                        return verdict("e_n attains the numerical radius for n in the trailing block", ok,
                                       std::to_string(l.j3.size()) + " states");
                      }});
  if (alpha == 1.0)
    e.claims.push_back(validate_claim("eta = eps^2/4 survives the probe on eps 0.1, 0.3, 0.5", t,
                                      EtaFunction::identity().pow(2.0).scaled(0.25), {0.1, 0.3, 0.5}, Mode::nu,
                                      light(gp.seed, 16, 300), true));
  return e;
}

GalleryEntry shift(const GalleryParams& gp) {
  const int n = gp.dim;
  Mat m = Mat::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) m(i + 1, i) = 1.0;
  Space s = Space::lp(2.0, n, Field::complex);
  GalleryEntry e;
  e.op = dense(m, s, s);
  e.description = "the nilpotent right shift on complex ell_2^" + std::to_string(n);
  Operator t = e.op;
  const double want = std::cos(std::numbers::pi / (n + 1));
  e.claims.push_back(norm_claim(t, 1.0, 1e-12));
  auto once = std::make_shared<std::once_flag>();
  auto nu = std::make_shared<NuResult>();
  auto radius = [=]() -> const NuResult& {
    std::call_once(*once, [&] { *nu = numerical_radius(t); });
    return *nu;
  };
  e.claims.push_back({"numerical radius is cos(pi/(n+1))", [=] {
                        const NuResult& r = radius();
                        bool ok = std::abs(r.value - want) <= 1e-8 && r.upper - r.value <= 1e-8 &&
                                  r.certainty != Certainty::heuristic;
                        return verdict("numerical radius is cos(pi/(n+1))", ok,
                                       num(r.value) + " vs " + num(want) + ", upper " + num(r.upper));
                      }});
  e.claims.push_back({"no state reaches 1", [=] {
                        const NuResult& r = radius();
                        return verdict("no state reaches 1", r.upper < 1.0, "upper bound " + num(r.upper));
                      }});
  return e;
}

GalleryEntry corner(const GalleryParams& gp) {
  double p = gp.p == 0.0 ? 1.0 : gp.p;
  const int dim = gp.dim;
  GalleryEntry e;
  e.op = corner_operator(p, dim);
  e.description = "(w, z) |-> (w_1 e_1, 0) on real ell_2^" + std::to_string(dim) + " +_" + num(p) + " ell_2^" +
                  std::to_string(dim);
  Operator t = e.op;
  auto once = std::make_shared<std::once_flag>();
  auto rep = std::make_shared<CornerReport>();
  auto report = [=]() -> const CornerReport& {
    std::call_once(*once, [&] { *rep = corner_counterexample(p, dim, gp.seed); });
    return *rep;
  };
  e.claims.push_back(nu_claim(t, 1.0, 1e-12, true));
  e.claims.push_back({"delift is exactly zero", [=] {
                        Space x = Space::lp(2.0, dim);
                        const Mat d = delift(t, x, x).matrix();
                        bool ok = (d.array() == cplx(0.0)).all();
                        return verdict("delift is exactly zero", ok, "max entry " + num(d.cwiseAbs().maxCoeff()));
                      }});
  for (double eps : {0.01, 0.05, 0.1, 0.2}) {
    std::string name = "repair at eps " + num(eps) + " stays within eps + sqrt(2 eps) and sqrt(2 eps)";
    e.claims.push_back({name, [=] {
                          const CornerReport& r = report();
                          for (const auto& c : r.repairs)
                            if (c.epsilon == eps)
                              return verdict(name, c.pass,
                                             std::to_string(c.trials) + " pairs, worst dx " + num(c.worst_dx) + " <= " +
                                                 num(c.bound_dx) + ", worst dx* " + num(c.worst_dxstar) + " <= " +
                                                 num(c.bound_dxstar));
                          return verdict(name, false, "missing");
                        }});
  }
  return e;
}

struct Maker {
  const char* id;
  int min_dim;
  GalleryEntry (*make)(const GalleryParams&);
};

const std::vector<Maker>& makers() {
  static const std::vector<Maker> m = {
      {"G-BLOCK", 1, block},       {"G-RANK1-C0", 2, rank1_c0}, {"G-RANK1-L1", 2, rank1_l1},
      {"G-BIDUAL", 2, bidual},     {"G-SKEW", 4, skew},         {"G-SHIFT", 2, shift},
      {"G-CORNER", 2, corner},     {"G-DIAG-ZSTAR", 2, diag_zstar}, {"G-FUNC-LINF", 2, func_linf},
  };
  return m;
}

const Maker& find_maker(const std::string& id) {
  for (const auto& m : makers())
    if (id == m.id) return m;
  throw Error(ErrorCode::unknown_entity, "unknown gallery entry: " + id);
}

double parse_number(const std::string& key, const std::string& v) {
  if (v == "inf") return kInf;
  try {
    size_t used = 0;
    double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (...) {
  }
  throw Error(ErrorCode::parse, "bad value for " + key + ": " + v);
}

}  // namespace

Vec folded_weights(int k) {
  Vec w(k);
  for (int j = 0; j < k - 1; ++j) w[j] = std::ldexp(1.0, -(j + 1));
  w[k - 1] = std::ldexp(1.0, -(k - 1));
  if (k == 1) w[0] = 1.0;
  return w;
}

const std::vector<std::string>& gallery_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& m : makers()) v.push_back(m.id);
    return v;
  }();
  return ids;
}

int gallery_min_dim(const std::string& id) { return find_maker(id).min_dim; }

GalleryEntry gallery(const std::string& id, const GalleryParams& params) {
  const Maker& m = find_maker(id);
  if (params.dim < m.min_dim)
    throw Error(ErrorCode::dimension, id + " needs dim >= " + std::to_string(m.min_dim));
  GalleryEntry e = m.make(params);
  e.id = id;
  e.params = params;
  return e;
}

GalleryEntry gallery_from_uri(const std::string& uri) {
  const std::string scheme = "gallery:";
  if (uri.rfind(scheme, 0) != 0) throw Error(ErrorCode::parse, "gallery URIs start with 'gallery:'");
  std::string rest = uri.substr(scheme.size());
  std::string id = rest.substr(0, rest.find('?'));
  GalleryParams gp;
  if (rest.find('?') != std::string::npos) {
    std::string q = rest.substr(rest.find('?') + 1);
    size_t pos = 0;
    while (pos <= q.size()) {
      size_t amp = q.find('&', pos);
      std::string kv = q.substr(pos, amp == std::string::npos ? std::string::npos : amp - pos);
      pos = amp == std::string::npos ? q.size() + 1 : amp + 1;
      if (kv.empty()) continue;
      size_t eq = kv.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::parse, "expected key=value in " + uri);
      std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
      double d = parse_number(key, val);
      if (key == "dim" || key == "ell" || key == "seed") {
        if (d != std::floor(d) || d < 0 || std::isinf(d)) throw Error(ErrorCode::parse, key + " must be a whole number");
        if (key == "dim") gp.dim = int(d);
        if (key == "ell") gp.ell = int(d);
        if (key == "seed") gp.seed = std::uint64_t(d);
      } else if (key == "p") {
        gp.p = d;
      } else if (key == "alpha") {
        gp.alpha = d;
      } else {
        throw Error(ErrorCode::parse, "unknown gallery parameter: " + key);
      }
    }
  }
  return gallery(id, gp);
}

std::vector<ClaimResult> run_claims(const GalleryEntry& e) {
  std::vector<ClaimResult> out;
  for (const auto& c : e.claims) {
    try {
      out.push_back(c.check());
    } catch (const std::exception& ex) {
      out.push_back({c.name, false, std::string("error: ") + ex.what()});
    }
  }
  return out;
}

}  // namespace bl
