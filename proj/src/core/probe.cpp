#include "bollobas/probe.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "bollobas/parallel.hpp"
#include "search.hpp"

namespace bl {

std::string to_string(ProbeReport::Status s) {
  switch (s) {
    case ProbeReport::Status::found: return "found";
    case ProbeReport::Status::no_witness: return "no_witness";
    case ProbeReport::Status::infeasible: return "infeasible";
  }
  return "no_witness";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string probe_csv_header() { return "epsilon,eta_hat,slack,distance,dim,seed,mode,status"; }

std::string probe_csv_row(const ProbeReport& r) {
  return format_double(r.epsilon) + "," + format_double(r.eta_hat) + "," + format_double(r.slack) + "," +
         format_double(r.distance) + "," + std::to_string(r.dim) + "," + std::to_string(r.seed) + "," +
         to_string(r.mode) + "," + to_string(r.status);
}

namespace {

constexpr double kUnitTol = 1e-9;
constexpr int kSurvivors = 8;

struct Target {
  Space space, to;
  Mode mode;
  Mat m;
  bool everything = false;
  NormingSet ns;
  NuAttaining na;
};

Target prepare(const Operator& t, Mode mode) {
  Operator c = canonical(t);
  Target g;
  g.space = c.from();
  g.to = c.to();
  g.mode = mode;
  if (!c.realizable()) throw Error(ErrorCode::not_realizable, "the probe needs a realizable operator: " + c.node().why_not);
  g.m = c.matrix();
  if (mode == Mode::norm) {
    NormResult nr = operator_norm(c);
    if (nr.certainty == Certainty::heuristic)
      throw Error(ErrorCode::refused, "probe refused: the operator norm is only a heuristic lower bound");
    if (std::abs(nr.value - 1.0) > kUnitTol) throw Error(ErrorCode::not_normalized, "the operator norm is not 1");
    g.ns = norming_set(c);
    if (!g.ns.complete) throw Error(ErrorCode::refused, "probe refused: the norming set is only partially known");
    g.everything = g.ns.kind == NormingSet::Kind::all;
  } else {
    if (!c.square()) throw Error(ErrorCode::invalid_input, "numerical radius needs an operator from a space to itself");
    g.na = nu_attaining_states(c);
    if (!g.na.complete) throw Error(ErrorCode::refused, "probe refused: the attaining states are only partially known");
    if (std::abs(g.na.nu - 1.0) > kUnitTol) throw Error(ErrorCode::not_normalized, "the numerical radius is not 1");
    g.everything = g.na.kind == NuAttaining::Kind::all;
  }
  return g;
}

detail::Evaluator make_evaluator(const Target& g, double eps) {
  return [&g, eps](const Vec& x, const Vec& u) {
    detail::Point p;
    const Space& s = g.space;
    if (!x.allFinite() || norm(x, s) == 0.0) return p;
    if (g.mode == Mode::norm) {
      p.x = normalized(x, s);
      p.value = norm(g.m * p.x, g.to);
      p.distance = distance_to_norming_set(p.x, g.ns).lower;
    } else {
      p.x = snap_to_faces(normalized(x, s), s, 1e-9);
      p.xs = support_states(p.x, s, 1e-9).pick(u);
      p.value = std::abs(pair(p.xs, g.m * p.x));
      p.distance = distance_to_nu_attaining({p.x, p.xs}, g.na).joint.lower;
    }
    p.feasible = p.distance >= eps;
    return p;
  };
}

struct Start {
  Vec x, u;
};

bool better(const detail::Point& a, int ia, const detail::Point& b, int ib) {
  if (a.feasible != b.feasible) return a.feasible;
  if (a.value != b.value) return a.value > b.value;
  return ia < ib;
}

}  // namespace

std::vector<ProbeReport> eta_probe(const Operator& t, const std::vector<double>& eps, Mode mode,
                                   const ProbeOptions& opt) {
  if (eps.empty()) throw Error(ErrorCode::invalid_input, "empty epsilon grid");
  for (double e : eps)
    if (!(e > 0.0)) throw Error(ErrorCode::invalid_input, "epsilon must be positive");
  const Target g = prepare(t, mode);
  const Space& s = g.space;
  const int n = s.dim();
  const int R = std::max(1, opt.restarts);
  const int iters = std::max(0, opt.iterations);

  std::vector<size_t> order(eps.size());
  std::iota(order.begin(), order.end(), size_t(0));
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return eps[a] > eps[b]; });

  std::vector<ProbeReport> out(eps.size());
  std::vector<Start> survivors;
  for (size_t oi : order) {
    const double e = eps[oi];
    ProbeReport rep;
    rep.epsilon = e;
    rep.mode = mode;
    rep.dim = n;
    rep.restarts = R;
    rep.iterations = iters;
    rep.seed = opt.seed;
    if (g.everything) {
      rep.status = ProbeReport::Status::infeasible;
      out[oi] = rep;
      continue;
    }
    detail::Evaluator f = make_evaluator(g, e);
    std::vector<Start> starts;
    for (const auto& sv : survivors) starts.push_back(sv);
    for (const auto& x : opt.seeds) starts.push_back({x, Vec::Zero(mode == Mode::nu ? n : 0)});
    for (const auto& sp : opt.seed_pairs) starts.push_back({sp.x, sp.xstar});
    for (int j = 0; j < n; ++j) {
      Vec x = Vec::Zero(n);
      x[j] = 1.0;
      starts.push_back({x, mode == Mode::nu ? Vec(x) : Vec()});
    }
    const int S = int(starts.size());
    const int total = S + R;
    std::vector<detail::Point> res(total);
    parallel_for(total, [&](int r) {
      auto rng = item_rng(opt.seed ^ std::uint64_t(oi * 0x9E3779B97F4A7C15ull), std::uint64_t(r));
      Vec x, u;
      if (r < S) {
        x = starts[r].x;
        u = starts[r].u;
      } else {
        x = random_unit(s, rng);
        u = mode == Mode::nu ? random_vector(n, s.field(), rng) : Vec();
      }
      if (mode == Mode::nu && u.size() == 0) u = Vec::Zero(n);
      if (mode == Mode::norm) u = Vec();
      // a handful of redraws when a random start lands inside the excluded region
      detail::Point p0 = f(x, u);
      for (int k = 0; k < 16 && !p0.feasible && r >= S; ++k) {
        x = random_unit(s, rng);
        if (mode == Mode::nu) u = random_vector(n, s.field(), rng);
        p0 = f(x, u);
      }
      if (!p0.feasible) {
        res[r] = p0;
        return;
      }
      res[r] = detail::climb(x, u, f, s.field(), iters, rng);
    });
    std::vector<int> idx(total);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return better(res[a], a, res[b], b); });
    const detail::Point& best = res[idx[0]];
    if (best.feasible) {
      rep.status = ProbeReport::Status::found;
      rep.eta_hat = 1.0 - best.value;
      rep.slack = rep.eta_hat;
      rep.distance = best.distance;
      rep.x = best.x;
      if (mode == Mode::nu) rep.xstar = best.xs;
    } else {
      rep.status = ProbeReport::Status::no_witness;
    }
    std::vector<Start> next;
    for (int k = 0; k < total && int(next.size()) < kSurvivors; ++k) {
      const auto& p = res[idx[k]];
      if (!p.feasible) break;
      next.push_back({p.x, mode == Mode::nu ? p.xs : Vec()});
    }
    survivors = std::move(next);
    out[oi] = rep;
  }
  return out;
}

ProbeReport eta_probe_norm(const Operator& t, double eps, const ProbeOptions& opt) {
  return eta_probe(t, {eps}, Mode::norm, opt)[0];
}

ProbeReport eta_probe_nu(const Operator& t, double eps, const ProbeOptions& opt) {
  return eta_probe(t, {eps}, Mode::nu, opt)[0];
}

ValidationReport validate_eta(const Operator& t, const EtaFunction& eta, const std::vector<double>& eps, Mode mode,
                              const ProbeOptions& opt) {
  ValidationReport v;
  auto reps = eta_probe(t, eps, mode, opt);
  for (size_t i = 0; i < eps.size(); ++i) {
    ValidationRow row;
    row.epsilon = eps[i];
    row.eta = eta.eval(eps[i]);
    row.probe = reps[i];
    row.pass = !(reps[i].status == ProbeReport::Status::found && 1.0 - reps[i].eta_hat > 1.0 - row.eta + 1e-9);
    v.pass = v.pass && row.pass;
    v.rows.push_back(row);
  }
  return v;
}

}  // namespace bl
