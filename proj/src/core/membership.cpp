#include "bollobas/membership.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bl {

std::string to_string(Mode m) { return m == Mode::norm ? "norm" : "nu"; }

std::string to_string(Verdict::Outcome o) {
  switch (o) {
    case Verdict::Outcome::member: return "member";
    case Verdict::Outcome::not_member: return "not_member";
    case Verdict::Outcome::undecided: return "undecided";
    case Verdict::Outcome::not_applicable: return "not_applicable";
  }
  return "undecided";
}

SpaceFamily SpaceFamily::lp(double p, Field f) {
  if (!(p >= 1.0)) throw Error(ErrorCode::invalid_input, "exponent must be at least 1");
  if (std::isinf(p)) return linf(f);
  return {Kind::lp, p, f};
}

SpaceFamily SpaceFamily::parse(const std::string& s, Field f) {
  if (s == "c0") return c0(f);
  if (s == "linf" || s == "l_inf") return linf(f);
  if (s == "l1") return lp(1.0, f);
  if (s == "l2") return lp(2.0, f);
  if (s.rfind("lp:", 0) == 0) {
    try {
      size_t used = 0;
      double p = std::stod(s.substr(3), &used);
      if (used + 3 == s.size()) return lp(p, f);
    } catch (const std::logic_error&) {
    }
  }
  throw Error(ErrorCode::parse, "unknown space family '" + s + "'");
}

std::string SpaceFamily::str() const {
  std::ostringstream o;
  switch (kind) {
    case Kind::c0: o << "c0"; break;
    case Kind::linf: o << "linf"; break;
    case Kind::lp: o << "l" << p; break;
  }
  if (field == Field::complex) o << "(C)";
  return o.str();
}

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j;
  j["member"] = v.member();
  j["outcome"] = to_string(v.outcome);
  j["theorem"] = v.theorem;
  j["reason"] = v.reason;
  j["certificate"] = v.certificate;
  if (v.witness) {
    j["witness_recipe"] = {{"description", v.witness->description}, {"decay", v.witness->decay}, {"gap", v.witness->gap}};
  } else {
    j["witness_recipe"] = nullptr;
  }
  return j;
}

namespace {

constexpr double kNormTol = 1e-12;

nlohmann::json jinfo_json(const JInfo& info) {
  nlohmann::json j;
  j["J_prefix"] = info.prefix_indices;
  j["J_meets_tail"] = info.tail_in_j;
  j["J_empty"] = info.empty;
  j["J_all"] = info.all;
  j["sup_off_J"] = info.sup_off_j;
  j["sup_off_J_attained"] = info.sup_off_j_attained;
  j["phases_finite"] = info.phases_finite;
  if (info.phases_finite) {
    nlohmann::json ph = nlohmann::json::array();
    for (auto z : info.phases) ph.push_back({z.real(), z.imag()});
    j["phases"] = ph;
  }
  return j;
}

void require_unit_sup(const JInfo& info) {
  if (std::abs(info.sup_modulus - 1.0) > kNormTol)
    throw Error(ErrorCode::not_normalized, "the sequence's sup modulus is not 1");
}

// minimal angular gap between distinct phases, 0 for fewer than two
double min_phase_gap(const std::vector<cplx>& ph) {
  if (ph.size() < 2) return 0.0;
  std::vector<double> a;
  for (auto z : ph) {
    double t = std::arg(z);
    if (t < 0) t += 2.0 * std::numbers::pi;
    a.push_back(t);
  }
  std::sort(a.begin(), a.end());
  double g = a.front() + 2.0 * std::numbers::pi - a.back();
  for (size_t i = 1; i < a.size(); ++i) g = std::min(g, a[i] - a[i - 1]);
  return g;
}

WitnessRecipe off_j_recipe(const SequenceSpec& spec) {
  WitnessRecipe w;
  if (spec.tail.kind == Tail::Kind::approach) {
    w.kind = WitnessRecipe::Kind::coordinate;
    w.description = "e_n for n beyond the prefix, |alpha_n| = 1 - 1/n";
    w.decay = "1/n";
    w.gap = 1.0;
  } else {
    w.kind = WitnessRecipe::Kind::symbolic;
    w.description = "e_{n_k} along indices off J with |alpha_{n_k}| -> 1";
    w.decay = "1 - |alpha_{n_k}|";
    w.gap = 1.0;
  }
  return w;
}

WitnessRecipe empty_j_recipe(const SequenceSpec& spec) {
  WitnessRecipe w;
  w.kind = spec.materializable() ? WitnessRecipe::Kind::truncation_gap : WitnessRecipe::Kind::symbolic;
  w.description = "no norming point; truncations have norm below 1";
  w.decay = spec.tail.kind == Tail::Kind::approach ? "1/n" : "1 - |T_n|";
  w.gap = kInf;
  return w;
}

Verdict diag_condition(const SequenceSpec& spec, const std::string& tag, bool need_finite_phases) {
  JInfo info = spec.analyze();
  require_unit_sup(info);
  Verdict v;
  v.theorem = tag;
  v.certificate = jinfo_json(info);
  if (info.empty) {
    v.outcome = Verdict::Outcome::not_member;
    v.reason = "non-attaining";
    v.witness = empty_j_recipe(spec);
    return v;
  }
  if (need_finite_phases && !info.phases_finite) {
    v.outcome = Verdict::Outcome::not_member;
    v.reason = "infinitely many unimodular values";
    WitnessRecipe w;
    if (spec.tail.kind == Tail::Kind::phase_drift) {
      w.kind = WitnessRecipe::Kind::adjacent_pair;
      w.description = "states spread evenly over coordinates n-1 and n, whose phases merge";
      w.decay = "1 - cos(theta/(2n(n-1)))";
      w.gap = 0.5;
    } else {
      w.description = "states spread over two indices in J with converging values";
      w.decay = "1 - |alpha_m + alpha_n|/2";
      w.gap = 0.5;
    }
    v.witness = w;
    return v;
  }
  if (!info.all && info.sup_off_j >= 1.0) {
    v.outcome = Verdict::Outcome::not_member;
    v.reason = "sup off J equals 1";
    v.witness = off_j_recipe(spec);
    return v;
  }
  v.outcome = Verdict::Outcome::member;
  v.reason = info.all ? "J is everything" : "J nonempty and sup off J below 1";
  return v;
}

}  // namespace

Verdict diag_norm_member(const SequenceSpec& spec, const SpaceFamily& fam) {
  Verdict v = diag_condition(spec, "diagonal-norm", false);
  v.certificate["family"] = fam.str();
  return v;
}

Verdict diag_nu_member(const SequenceSpec& spec, const SpaceFamily& fam) {
  if (fam.kind == SpaceFamily::Kind::linf) {
    Verdict v;
    v.outcome = Verdict::Outcome::not_applicable;
    v.theorem = "diagonal-nu";
    v.reason = "the numerical radius characterization covers c0 and ell_p with p finite";
    return v;
  }
  Verdict v = diag_condition(spec, "diagonal-nu", true);
  v.certificate["family"] = fam.str();
  if (v.member()) v.certificate["phase_count"] = spec.analyze().phases.size();
  return v;
}

Verdict diag_mixed_member(const SequenceSpec& spec, const SpaceFamily& from, const SpaceFamily& to) {
  bool from_seq = from.kind == SpaceFamily::Kind::lp;
  bool to_c0 = to.kind != SpaceFamily::Kind::lp;
  if (from_seq && to_c0) {
    Verdict v = diag_condition(spec, "diagonal-mixed-lp-c0", false);
    v.certificate["from"] = from.str();
    v.certificate["to"] = to.str();
    return v;
  }
  if (!from_seq && !to_c0) {
    double s = spec.p_sum(to.p);
    if (std::isinf(s)) throw Error(ErrorCode::not_normalized, "the sequence is not p-summable, so the operator is unbounded");
    if (std::abs(std::pow(s, 1.0 / to.p) - 1.0) > kNormTol)
      throw Error(ErrorCode::not_normalized, "the p-norm of the sequence is not 1");
    Verdict v;
    v.theorem = "diagonal-mixed-c0-lp";
    v.certificate["from"] = from.str();
    v.certificate["to"] = to.str();
    v.certificate["finitely_supported"] = spec.finitely_supported();
    if (spec.finitely_supported()) {
      v.outcome = Verdict::Outcome::member;
      v.reason = "finitely supported";
    } else {
      v.outcome = Verdict::Outcome::not_member;
      v.reason = "non-attaining";
      WitnessRecipe w;
      w.kind = spec.materializable() ? WitnessRecipe::Kind::truncation_gap : WitnessRecipe::Kind::symbolic;
      w.description = "phase-aligned sums of the first n coordinates; no norming point";
      w.decay = "1 - |alpha restricted to 1..n|_p";
      w.gap = kInf;
      v.witness = w;
    }
    return v;
  }
  throw Error(ErrorCode::geometry, "mixed diagonals are characterized from ell_p to c0 and from c0 to ell_p only");
}

Verdict projection_member(int N, const SpaceFamily& fam, Mode mode) {
  if (N < 1) throw Error(ErrorCode::invalid_input, "projection rank must be at least 1");
  SequenceSpec spec = SequenceSpec::finite(std::vector<cplx>(N, 1.0));
  Verdict inner = mode == Mode::norm ? diag_norm_member(spec, fam) : diag_nu_member(spec, fam);
  Verdict v = inner;
  v.theorem = "projection";
  v.certificate["N"] = N;
  v.certificate["delegate"] = inner.theorem;
  return v;
}

Verdict functional_member(const SequenceSpec& f, const SpaceFamily& fam) {
  Verdict v;
  v.certificate["family"] = fam.str();
  if (fam.kind == SpaceFamily::Kind::lp && fam.p > 1.0) {
    double q = conjugate_exponent(fam.p);
    double s = f.p_sum(q);
    if (std::isinf(s) || std::abs(std::pow(s, 1.0 / q) - 1.0) > kNormTol)
      throw Error(ErrorCode::not_normalized, "the functional does not have dual norm 1");
    v.theorem = "functional-uniformly-convex";
    v.outcome = Verdict::Outcome::member;
    v.reason = "uniformly convex domain";
    return v;
  }
  if (fam.kind != SpaceFamily::Kind::lp) {
    // the dual is ell_1
    double s = f.p_sum(1.0);
    if (std::isinf(s) || std::abs(s - 1.0) > kNormTol)
      throw Error(ErrorCode::not_normalized, "the functional does not have dual norm 1");
    if (fam.kind == SpaceFamily::Kind::c0) {
      v.theorem = "functional-c0";
      v.certificate["finitely_supported"] = f.finitely_supported();
      if (f.finitely_supported()) {
        v.outcome = Verdict::Outcome::member;
        v.reason = "finitely supported";
        return v;
      }
      v.outcome = Verdict::Outcome::not_member;
      v.reason = "non-attaining";
      WitnessRecipe w;
      w.kind = WitnessRecipe::Kind::basis_sum;
      w.description = "phase-aligned e_1 + ... + e_n; no norming point in c0";
      w.decay = "tail mass beyond n";
      w.gap = kInf;
      v.witness = w;
      return v;
    }
    if (f.tail.kind == Tail::Kind::geometric && f.tail.c != 0.0 && f.tail.r > 0.0 && f.tail.r < 1.0) {
      v.theorem = "functional-linf-geometric";
      v.outcome = Verdict::Outcome::not_member;
      v.reason = "norming points stay at distance 1 from e_1 + ... + e_n";
      WitnessRecipe w;
      w.kind = WitnessRecipe::Kind::basis_sum;
      w.description = "e_1 + ... + e_n";
      w.decay = "tail mass beyond n";
      w.gap = 1.0;
      v.witness = w;
      return v;
    }
    v.theorem = "functional-linf";
    v.outcome = Verdict::Outcome::undecided;
    v.reason = "no characterization for this functional on ell_inf";
    return v;
  }
  // ell_1 domain, the functional lives in ell_inf
  JInfo info = f.analyze();
  require_unit_sup(info);
  v.certificate["J"] = jinfo_json(info);
  if (f.tail.kind == Tail::Kind::approach && unimodular(f.tail.c) && !info.empty) {
    v.theorem = "functional-l1-ratio-family";
    v.outcome = Verdict::Outcome::not_member;
    v.reason = "values approach modulus 1 off the norming coordinates";
    WitnessRecipe w;
    w.kind = WitnessRecipe::Kind::coordinate;
    w.description = "e_n, at distance 2 from every norming point";
    w.decay = "1/n";
    w.gap = 2.0;
    v.witness = w;
    return v;
  }
  v.theorem = "functional-l1";
  v.outcome = Verdict::Outcome::undecided;
  v.reason = "no characterization for this functional on ell_1";
  return v;
}

MaterializedWitness materialize_diagonal(const Verdict& v, const SequenceSpec& spec, const SpaceFamily& fam, Mode mode,
                                         int n) {
  if (v.outcome != Verdict::Outcome::not_member || !v.witness)
    throw Error(ErrorCode::invalid_input, "only non-member verdicts carry witnesses");
  if (n < 2) throw Error(ErrorCode::dimension, "witnesses need dimension at least 2");
  const WitnessRecipe& r = *v.witness;
  Space s = fam.at(n);
  MaterializedWitness m;
  m.op = diagonal(spec, s);
  m.gap = r.gap;
  const Mat& a = m.op.matrix();
  auto slack = [&](const Vec& x, const Vec& xs) {
    Vec y = a * x;
    return mode == Mode::norm ? 1.0 - norm(y, s) : 1.0 - std::abs(pair(xs, y));
  };
  switch (r.kind) {
    case WitnessRecipe::Kind::coordinate: {
      Vec x = Vec::Zero(n);
      x[n - 1] = 1.0;
      m.x = x;
      m.xstar = x;
      m.decay = slack(x, x);
      return m;
    }
    case WitnessRecipe::Kind::adjacent_pair: {
      Vec x = Vec::Zero(n), xs = Vec::Zero(n);
      double p = fam.exponent();
      if (std::isinf(p)) {
        x[n - 2] = x[n - 1] = 1.0;
        xs[n - 2] = xs[n - 1] = 0.5;
      } else if (p == 1.0) {
        x[n - 2] = x[n - 1] = 0.5;
        xs[n - 2] = xs[n - 1] = 1.0;
      } else {
        x[n - 2] = x[n - 1] = std::pow(2.0, -1.0 / p);
        xs = duality_map(x, s);
      }
      m.x = x;
      m.xstar = xs;
      m.decay = slack(x, xs);
      return m;
    }
    case WitnessRecipe::Kind::truncation_gap: {
      double t = 0.0;
      for (auto z : spec.materialize(n)) t = std::max(t, std::abs(z));
      m.decay = 1.0 - t;
      return m;
    }
    default:
      throw Error(ErrorCode::not_realizable, "this witness recipe has no materialization rule");
  }
}

MaterializedWitness materialize_functional(const Verdict& v, const SequenceSpec& f, const SpaceFamily& fam, int n) {
  if (v.outcome != Verdict::Outcome::not_member || !v.witness)
    throw Error(ErrorCode::invalid_input, "only non-member verdicts carry witnesses");
  if (n < 2) throw Error(ErrorCode::dimension, "witnesses need dimension at least 2");
  Space s = fam.at(n);
  auto vals = f.materialize(n);
  Vec fv(n);
  for (int i = 0; i < n; ++i) fv[i] = vals[i];
  if (v.witness->kind == WitnessRecipe::Kind::basis_sum) {
    // the last coordinate carries the whole tail so the truncation keeps norm one
    double tail;
    if (f.tail.kind == Tail::Kind::geometric && n > int(f.prefix.size()))
      tail = std::abs(f.tail.c) * std::pow(f.tail.r, n) / (1.0 - f.tail.r);
    else {
      tail = f.p_sum(1.0);
      for (int i = 0; i < n - 1; ++i) tail -= std::abs(vals[i]);
    }
    fv[n - 1] = tail * phase(vals[n - 1]);
  }
  MaterializedWitness m;
  m.op = functional(fv, s);
  m.gap = v.witness->gap;
  Vec x = Vec::Zero(n);
  switch (v.witness->kind) {
    case WitnessRecipe::Kind::coordinate:
      x[n - 1] = 1.0;
      break;
    case WitnessRecipe::Kind::basis_sum:
      for (int i = 0; i < n - 1; ++i) x[i] = std::conj(phase(fv[i]));
      break;
    default:
      throw Error(ErrorCode::not_realizable, "this witness recipe has no materialization rule");
  }
  m.x = x;
  m.decay = 1.0 - std::abs(pair(fv, x));
  return m;
}

double probe_floor(const SequenceSpec& spec, const SpaceFamily& fam, Mode mode, double eps) {
  JInfo info = spec.analyze();
  double beta = info.all ? 0.0 : info.sup_off_j;
  double p = fam.exponent();
  if (mode == Mode::norm) {
    if (info.all) return kInf;
    if (std::isinf(p)) return std::min(eps, 1.0 - beta);
    return 1.0 - std::pow(1.0 - (1.0 - std::pow(beta, p)) * std::pow(eps, p) / 2.0, 1.0 / p);
  }
  if (!info.phases_finite) return 0.0;
  if (info.all && info.phases.size() == 1) return kInf;
  double c = info.phases.size() < 2 ? 0.0 : std::cos(min_phase_gap(info.phases) / 2.0);
  double k = 1.0 - std::max(c, beta);
  if (p == 1.0 || std::isinf(p)) return k * eps / 2.0;
  double q = conjugate_exponent(p);
  return k * std::min(std::pow(eps, p), std::pow(eps, q)) / 2.0;
}

EtaFunction adjoint_eta(const EtaFunction& eta_t, const Space& target_dual) {
  EtaFunction half_delta = EtaFunction::modulus(target_dual).scaled(0.5);
  return EtaFunction::min({eta_t.of(half_delta), half_delta});
}

EtaFunction c0_adjoint_nu_eta(const EtaFunction& eta_t) {
  EtaFunction third = EtaFunction::identity().scaled(1.0 / 3.0);
  return EtaFunction::min({third, eta_t.of(third)});
}

EtaFunction rank1_l1_eta() { return EtaFunction::identity().scaled(0.5); }

Vec rank1_l1_repair(const Vec& x) {
  if (x.size() == 0) throw Error(ErrorCode::dimension, "empty vector");
  Vec y = Vec::Zero(x.size());
  y[0] = phase(x[0]);
  return y;
}

}  // namespace bl
