// Acceptance suite. Each criterion prints one [PASS]/[FAIL] line and can dump a transcript
// (every number it computed) so runs under different thread counts can be compared byte for byte.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bollobas/gallery.hpp"
#include "bollobas/membership.hpp"
#include "bollobas/parallel.hpp"
#include "bollobas/probe.hpp"
#include "bollobas/serialize.hpp"
#include "bollobas/sums.hpp"
#include "oracles.hpp"

using namespace bl;

namespace {

// criterion 1
constexpr int kSpecs = 200;
constexpr double kDiagEps = 0.1;
constexpr int kDiagRestarts = 16;
constexpr int kDiagIterations = 400;
constexpr double kFloorTol = 1e-9;
constexpr double kDecayFactor = 2.0;
const std::vector<int> kDiagDims = {8, 16, 32};

// criterion 2
const std::vector<int> kGalleryDims = {4, 8, 16, 32};
const std::vector<std::string> kGalleryIds = {"G-BLOCK",  "G-RANK1-C0", "G-RANK1-L1",   "G-BIDUAL",  "G-SKEW",
                                              "G-SHIFT",  "G-CORNER",   "G-DIAG-ZSTAR", "G-FUNC-LINF"};

// criterion 3
constexpr int kOracleInstances = 100;
constexpr int kComplexInstances = 25;
constexpr double kOracleTol = 1e-7;

// criterion 4
constexpr double kShiftTol = 1e-6;

// criterion 5
constexpr int kTransferOperators = 4;
constexpr int kTransferTrials = 1000;
constexpr int kTransferIterations = 200;
const std::vector<double> kTransferEps = {0.2, 0.5, 0.8};
constexpr double kPsumTol = 1e-8;
const std::vector<int> kPsumDims = {1, 2, 4};

// criterion 6
constexpr int kSkewTrials = 1000;
constexpr int kSkewIterations = 200;
const std::vector<int> kSkewDims = {8, 16, 32};
const std::vector<double> kSkewEps = {0.1, 0.3, 0.5};

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> notes;
  json transcript = json::object();

  void fail(const std::string& why) {
    pass = false;
    if (notes.size() < 20) notes.push_back(why);
  }
};

std::string num(double v) { return format_double(v); }

// ---------------------------------------------------------------- criterion 1

cplx random_phase(std::mt19937_64& rng, bool complex) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (!complex) return u(rng) < 0.5 ? 1.0 : -1.0;
  static const cplx few[] = {1.0, -1.0, cplx(0, 1), std::polar(1.0, 2.0 * std::numbers::pi / 3.0)};
  if (u(rng) < 0.5) return few[std::uniform_int_distribution<int>(0, 3)(rng)];
  return std::polar(1.0, 2.0 * std::numbers::pi * u(rng));
}

SequenceSpec random_spec(std::mt19937_64& rng, bool complex) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SequenceSpec s;
  int len = std::uniform_int_distribution<int>(1, 4)(rng);
  bool reaches_one = false;
  for (int i = 0; i < len; ++i) {
    bool unit = u(rng) < 0.35;
    reaches_one = reaches_one || unit;
    s.prefix.push_back((unit ? 1.0 : 0.95 * u(rng)) * random_phase(rng, complex));
  }
  int kind = std::uniform_int_distribution<int>(0, complex ? 4 : 3)(rng);
  Tail& t = s.tail;
  switch (kind) {
    case 0:
      t.kind = Tail::Kind::zero;
      break;
    case 1: {
      bool unit = u(rng) < 0.3;
      reaches_one = reaches_one || unit;
      t.kind = Tail::Kind::constant;
      t.c = (unit ? 1.0 : 0.95 * u(rng)) * random_phase(rng, complex);
      break;
    }
    case 2:
      t.kind = Tail::Kind::geometric;
      t.c = (0.2 + 0.8 * u(rng)) * random_phase(rng, complex);
      t.r = (0.3 + 0.6 * u(rng)) * (complex || u(rng) < 0.7 ? 1.0 : -1.0);
      break;
    case 3: {
      bool unit = u(rng) < 0.6;
      reaches_one = reaches_one || unit;
      t.kind = Tail::Kind::approach;
      t.c = (unit ? 1.0 : 0.3 + 0.65 * u(rng)) * random_phase(rng, complex);
      break;
    }
    default:
      reaches_one = true;
      t.kind = Tail::Kind::phase_drift;
      t.theta = 0.5 + 1.5 * u(rng);
      break;
  }
  if (!reaches_one) {
    int i = std::uniform_int_distribution<int>(0, len - 1)(rng);
    s.prefix[i] = random_phase(rng, complex);
  }
  return s;
}

SpaceFamily random_family(std::mt19937_64& rng, Field f) {
  switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 0: return SpaceFamily::c0(f);
    case 1: return SpaceFamily::lp(1.0, f);
    case 2: return SpaceFamily::lp(2.0, f);
    case 3: return SpaceFamily::lp(3.0, f);
    default: return SpaceFamily::linf(f);
  }
}

// the decay a non-member certificate promises at truncation n, recomputed from the spec
double promised_decay(const WitnessRecipe& w, const SequenceSpec& s, int n) {
  if (w.kind == WitnessRecipe::Kind::adjacent_pair) return 1.0 - std::cos(s.tail.theta / (2.0 * n * (n - 1)));
  return 1.0 / n;
}

Outcome diagonal_characterization() {
  Outcome out;
  int members = 0, non_members = 0, symbolic = 0, cells = 0;
  json specs = json::array();
  for (int i = 0; i < kSpecs; ++i) {
    auto rng = item_rng(20240601, std::uint64_t(i));
    const bool complex = i % 2 == 1;
    const Field field = complex ? Field::complex : Field::real;
    SequenceSpec spec = random_spec(rng, complex);
    SpaceFamily fam = random_family(rng, field);
    json rec = {{"spec", spec.describe()}, {"family", fam.str()}};
    const std::string tag = "spec " + std::to_string(i) + " (" + spec.describe() + " on " + fam.str() + ")";

    std::vector<std::pair<Mode, Verdict>> verdicts = {{Mode::norm, diag_norm_member(spec, fam)}};
    if (fam.kind != SpaceFamily::Kind::linf) verdicts.push_back({Mode::nu, diag_nu_member(spec, fam)});
    if (!complex && verdicts.size() == 2 && verdicts[0].second.outcome != verdicts[1].second.outcome)
      out.fail(tag + ": real spec with different norm and nu verdicts");

    for (const auto& [mode, v] : verdicts) {
      json mrec = {{"mode", to_string(mode)}, {"outcome", to_string(v.outcome)}, {"theorem", v.theorem}};
      json rows = json::array();
      if (v.member()) {
        ++members;
        const double floor = probe_floor(spec, fam, mode, kDiagEps);
        mrec["floor"] = jnum(floor);
        for (size_t di = 0; di < kDiagDims.size(); ++di) {
          const int n = kDiagDims[di];
          ProbeOptions po;
          po.seed = std::uint64_t(i) * 64 + di;
          po.restarts = kDiagRestarts;
          po.iterations = kDiagIterations;
          ProbeReport r = eta_probe(diagonal(spec, fam.at(n)), {kDiagEps}, mode, po)[0];
          ++cells;
          rows.push_back(probe_csv_row(r));
          if (r.status == ProbeReport::Status::found && r.eta_hat < floor - kFloorTol)
            out.fail(tag + " " + to_string(mode) + " dim " + std::to_string(n) + ": eta_hat " + num(r.eta_hat) +
                     " below the member floor " + num(floor));
        }
      } else if (v.outcome == Verdict::Outcome::not_member) {
        ++non_members;
        const WitnessRecipe& w = *v.witness;
        if (w.kind == WitnessRecipe::Kind::symbolic) {
          ++symbolic;
        } else {
          std::vector<double> seen;
          for (size_t di = 0; di < kDiagDims.size(); ++di) {
            const int n = kDiagDims[di];
            MaterializedWitness m = materialize_diagonal(v, spec, fam, mode, n);
            const double bound = kDecayFactor * promised_decay(w, spec, n);
            double observed;
            if (w.kind == WitnessRecipe::Kind::truncation_gap) {
              // no norming point at all: the truncations fall short of norm 1 at the promised rate
              observed = m.decay;
              rows.push_back({{"dim", n}, {"truncation_gap", jnum(m.decay)}});
            } else {
              ProbeOptions po;
              po.seed = std::uint64_t(i) * 64 + 32 + di;
              po.restarts = kDiagRestarts;
              po.iterations = kDiagIterations;
              if (mode == Mode::norm) po.seeds.push_back(*m.x);
              else po.seed_pairs.push_back({*m.x, *m.xstar});
              ProbeReport r = eta_probe(m.op, {kDiagEps}, mode, po)[0];
              ++cells;
              rows.push_back(probe_csv_row(r));
              observed = r.status == ProbeReport::Status::found ? r.eta_hat : kInf;
            }
            seen.push_back(m.decay);
            if (!(observed <= bound))
              out.fail(tag + " " + to_string(mode) + " dim " + std::to_string(n) + ": eta_hat " + num(observed) +
                       " above twice the certified decay " + num(bound / kDecayFactor));
          }
          if (!(seen.back() < seen.front() && seen.back() >= 0.0))
            out.fail(tag + " " + to_string(mode) + ": the certified witnesses do not decay");
        }
      }
      mrec["rows"] = rows;
      rec[to_string(mode)] = mrec;
    }
    specs.push_back(rec);
  }
  out.transcript = specs;
  out.summary = std::to_string(kSpecs) + " specs, " + std::to_string(members) + " member and " +
                std::to_string(non_members) + " non-member verdicts (" + std::to_string(symbolic) +
                " symbolic), " + std::to_string(cells) + " probe cells";
  return out;
}

// ---------------------------------------------------------------- criterion 2

Outcome gallery_suite() {
  Outcome out;
  int claims = 0, failed = 0;
  for (const auto& id : kGalleryIds) {
    for (int d : kGalleryDims) {
      GalleryParams gp;
      gp.dim = d;
      GalleryEntry e = gallery(id, gp);
      json cl = json::array();
      for (const auto& c : run_claims(e)) {
        ++claims;
        cl.push_back(to_json(c));
        if (!c.pass) {
          ++failed;
          out.fail(id + " dim " + std::to_string(d) + ": " + c.name + " (" + c.detail + ")");
        }
      }
      out.transcript[id + "@" + std::to_string(d)] = cl;
    }
  }
  out.summary = std::to_string(claims) + " claims over " + std::to_string(kGalleryIds.size()) + " entries, " +
                std::to_string(failed) + " failed";
  return out;
}

// ---------------------------------------------------------------- criterion 3

Outcome oracle_equivalence() {
  Outcome out;
  struct Class {
    std::string name;
    double p, q;  // q < 0: pick a mixed pair at random
  };
  const std::vector<Class> classes = {{"l1", 1.0, 1.0}, {"l2", 2.0, 2.0}, {"linf", kInf, kInf}, {"mixed", 0, -1}};
  const std::vector<double> exps = {1.0, 1.5, 2.0, 3.0, kInf};
  double worst = 0.0;
  int checks = 0;
  for (size_t ci = 0; ci < classes.size(); ++ci) {
    json rows = json::array();
    for (int k = 0; k < kOracleInstances; ++k) {
      auto rng = item_rng(777 + ci, std::uint64_t(k));
      std::uniform_int_distribution<int> dim(2, 6);
      std::normal_distribution<double> g;
      double p = classes[ci].p, q = classes[ci].q;
      int n = dim(rng), m = n;
      if (q < 0) {
        std::uniform_int_distribution<int> pick(0, int(exps.size()) - 1);
        do {
          p = exps[pick(rng)];
          q = exps[pick(rng)];
        } while (p == q);
        m = dim(rng);
      }
      oracle::RMat a(m, n);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = g(rng);
      Operator t = dense(a.cast<cplx>(), Space::lp(p, n), Space::lp(q, m));
      const std::string tag = classes[ci].name + " #" + std::to_string(k) + " (" + t.from().str() + " -> " +
                              t.to().str() + ")";
      SearchOptions so;
      so.seed = std::uint64_t(k);
      NormResult nr = operator_norm(t, so);
      double on = oracle::real_norm(a, p, q, 100 + k);
      double err = std::abs(nr.value - on) / std::max(1.0, on);
      worst = std::max(worst, err);
      ++checks;
      if (err > kOracleTol) out.fail(tag + ": norm " + num(nr.value) + " vs oracle " + num(on));
      json row = {{"norm", jnum(nr.value)}, {"certainty", to_string(nr.certainty)}};
      if (m == n && p == q) {
        NuResult nu = numerical_radius(t, so);
        double ov = p == 1.0 ? oracle::real_nu_l1(a) : p == 2.0 ? oracle::real_nu_l2(a) : oracle::real_nu_linf(a);
        double e2 = std::abs(nu.value - ov) / std::max(1.0, ov);
        worst = std::max(worst, e2);
        ++checks;
        if (e2 > kOracleTol) out.fail(tag + ": nu " + num(nu.value) + " vs oracle " + num(ov));
        row["nu"] = jnum(nu.value);
      }
      rows.push_back(row);
    }
    out.transcript[classes[ci].name] = rows;
  }
  json rows = json::array();
  for (int k = 0; k < kComplexInstances; ++k) {
    auto rng = item_rng(991, std::uint64_t(k));
    std::normal_distribution<double> g;
    int n = std::uniform_int_distribution<int>(2, 6)(rng);
    oracle::Mat a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
    Operator t = dense(a, Space::lp(2.0, n, Field::complex), Space::lp(2.0, n, Field::complex));
    SearchOptions so;
    so.seed = std::uint64_t(k);
    NormResult nr = operator_norm(t, so);
    NuResult nu = numerical_radius(t, so);
    double on = oracle::hilbert_norm(a), ov = oracle::theta_grid_nu(a);
    double e1 = std::abs(nr.value - on) / std::max(1.0, on), e2 = std::abs(nu.value - ov) / std::max(1.0, ov);
    worst = std::max({worst, e1, e2});
    checks += 2;
    const std::string tag = "complex hilbert #" + std::to_string(k);
    if (e1 > kOracleTol) out.fail(tag + ": norm " + num(nr.value) + " vs oracle " + num(on));
    if (e2 > kOracleTol) out.fail(tag + ": nu " + num(nu.value) + " vs oracle " + num(ov));
    rows.push_back({{"norm", jnum(nr.value)}, {"nu", jnum(nu.value)}});
  }
  out.transcript["complex_hilbert"] = rows;
  std::ostringstream s;
  s << checks << " comparisons, worst relative gap " << num(worst) << " (tolerance " << kOracleTol << ")";
  out.summary = s.str();
  return out;
}

// ---------------------------------------------------------------- criterion 4

Outcome shift_curve() {
  Outcome out;
  double prev = 0.0, worst = 0.0;
  json rows = json::array();
  for (int n = 2; n <= 10; ++n) {
    GalleryParams gp;
    gp.dim = n;
    Operator t = gallery("G-SHIFT", gp).op;
    NuResult nu = numerical_radius(t);
    const double expect = std::cos(std::numbers::pi / (n + 1));
    const double grid = oracle::theta_grid_nu(t.matrix());
    worst = std::max({worst, std::abs(nu.value - expect), std::abs(grid - expect)});
    if (std::abs(nu.value - expect) > kShiftTol)
      out.fail("n = " + std::to_string(n) + ": nu " + num(nu.value) + " vs cos(pi/(n+1)) " + num(expect));
    if (std::abs(grid - expect) > kShiftTol)
      out.fail("n = " + std::to_string(n) + ": theta-grid oracle " + num(grid) + " disagrees with cos(pi/(n+1))");
    if (!(nu.value > prev)) out.fail("n = " + std::to_string(n) + ": radius did not increase");
    if (!(nu.upper < 1.0)) out.fail("n = " + std::to_string(n) + ": upper bound " + num(nu.upper) + " reaches 1");
    prev = nu.value;
    rows.push_back({{"n", n}, {"nu", jnum(nu.value)}, {"upper", jnum(nu.upper)}});
  }
  out.transcript = rows;
  out.summary = "n = 2..10, strictly increasing and below 1, worst gap " + num(worst);
  return out;
}

// ---------------------------------------------------------------- criterion 5

// T = U diag(1, s2, ...) V^T on real ell_2^n with s2 < 1, so the exact modulus is known
struct HilbertOp {
  Operator t;
  double s2;
};

HilbertOp random_hilbert(std::uint64_t seed, int n) {
  auto rng = item_rng(seed, 0);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto orth = [&] {
    oracle::RMat a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = g(rng);
    Eigen::HouseholderQR<oracle::RMat> qr(a);
    return oracle::RMat(qr.householderQ());
  };
  oracle::RMat U = orth(), V = orth();
  oracle::RVec s(n);
  s[0] = 1.0;
  double s2 = 0.2 + 0.6 * u(rng);
  for (int i = 1; i < n; ++i) s[i] = s2 * (i == 1 ? 1.0 : u(rng));
  oracle::RMat m = U * s.asDiagonal() * V.transpose();
  Space h = Space::lp(2.0, n);
  return {dense(m.cast<cplx>(), h, h), s2};
}

ProbeOptions transfer_budget(std::uint64_t seed) {
  ProbeOptions po;
  po.seed = seed;
  po.restarts = kTransferTrials;
  po.iterations = kTransferIterations;
  return po;
}

json validation_json(const ValidationReport& v) {
  json rows = json::array();
  for (const auto& r : v.rows) rows.push_back({{"eta", jnum(r.eta)}, {"probe", probe_csv_row(r.probe)}, {"pass", r.pass}});
  return rows;
}

void record_validation(Outcome& out, const std::string& tag, const ValidationReport& v) {
  for (const auto& r : v.rows)
    if (!r.pass)
      out.fail(tag + " eps " + num(r.epsilon) + ": witness value " + num(1.0 - r.probe.eta_hat) + " at distance " +
               num(r.probe.distance) + " beats 1 - eta = " + num(1.0 - r.eta));
}

Outcome adjoint_transfer() {
  Outcome out;
  out.transcript = json::array();
  for (int k = 0; k < kTransferOperators; ++k) {
    const int n = 2 + k % 3;
    HilbertOp h = random_hilbert(5000 + k, n);
    EtaFunction eta_t = EtaFunction::hilbert_exact(h.s2);
    const std::string tag = "operator " + std::to_string(k) + " (dim " + std::to_string(n) + ")";
    ValidationReport vt = validate_eta(h.t, eta_t, kTransferEps, Mode::norm, transfer_budget(10 * k));
    record_validation(out, tag + " input modulus", vt);
    EtaFunction eta_star = adjoint_eta(eta_t, dual(h.t.to()));
    ValidationReport va = validate_eta(adjoint(h.t), eta_star, kTransferEps, Mode::norm, transfer_budget(10 * k + 1));
    record_validation(out, tag + " adjoint", va);
    out.transcript.push_back({{"eta_T", validation_json(vt)}, {"eta_adjoint", validation_json(va)}});
  }
  out.summary = std::to_string(kTransferOperators) + " operators, " + std::to_string(kTransferTrials) +
                " trials per eps in {0.2, 0.5, 0.8}, adjoint modulus never beaten";
  return out;
}

Outcome lift_transfer() {
  Outcome out;
  out.transcript = json::array();
  for (double outer : {1.0, kInf}) {
    for (int k = 0; k < kTransferOperators; ++k) {
      const int n = 2 + k % 3;
      HilbertOp h = random_hilbert(6000 + k, n);
      SumTransferResult res = norm_implies_lift_nu(h.t, outer, EtaFunction::hilbert_exact(h.s2));
      ValidationReport v = validate_eta(lift(h.t, outer), res.eta, kTransferEps, Mode::nu,
                                        transfer_budget(100 * k + (outer == 1.0 ? 1 : 2)));
      const std::string tag = "outer " + num(outer) + " operator " + std::to_string(k);
      record_validation(out, tag, v);
      out.transcript.push_back({{"outer_p", jnum(outer)}, {"eta", res.eta.describe()}, {"rows", validation_json(v)}});
    }
  }
  out.summary = std::to_string(2 * kTransferOperators) + " lifts on 1- and inf-sums, " +
                std::to_string(kTransferTrials) + " trials per eps, transferred modulus never beaten";
  return out;
}

// max over the unit sphere of ell_p^2 of |a| |b|^(p-1), the pairing the lifted identity reaches
double psum_oracle(double p) {
  double best = 0.0;
  const int grid = 200000;
  for (int k = 0; k <= grid; ++k) {
    double t = double(k) / grid;  // |a|^p
    best = std::max(best, std::pow(t, 1.0 / p) * std::pow(1.0 - t, (p - 1.0) / p));
  }
  return best;
}

Outcome psum(double p) {
  Outcome out;
  out.transcript = json::array();
  const double oracle_value = psum_oracle(p);
  for (int n : kPsumDims) {
    PsumReport r = psum_counterexample(p, n, 11);
    out.transcript.push_back(to_json(r));
    if (std::abs(r.nu - 0.5) > kPsumTol)
      out.fail("dim " + std::to_string(n) + ": nu " + num(r.nu) + " is not 1/2 within " + num(kPsumTol) +
               " (state search " + num(r.search_value) + ", grid oracle " + num(oracle_value) + ")");
    if (r.attains_one) out.fail("dim " + std::to_string(n) + ": the lifted identity reached radius 1");
  }
  out.summary = "p = " + num(p) + ", dims {1, 2, 4}, expected 1/2, grid oracle " + num(oracle_value);
  return out;
}

// ---------------------------------------------------------------- criterion 6

Outcome skew_uniform() {
  Outcome out;
  EtaFunction eta = EtaFunction::identity().pow(2.0).scaled(0.25);
  int cells = 0;
  for (int d : kSkewDims) {
    GalleryParams gp;
    gp.dim = d;
    Operator t = gallery("G-SKEW", gp).op;
    ProbeOptions po;
    po.seed = std::uint64_t(d);
    po.restarts = kSkewTrials;
    po.iterations = kSkewIterations;
    ValidationReport v = validate_eta(t, eta, kSkewEps, Mode::nu, po);
    cells += int(v.rows.size());
    record_validation(out, "dim " + std::to_string(d), v);
    out.transcript[std::to_string(d)] = validation_json(v);
  }
  out.summary = std::to_string(cells) + " cells of " + std::to_string(kSkewTrials) +
                " trials, eta = eps^2/4, no close-to-attaining state far from the attaining set";
  return out;
}

// ---------------------------------------------------------------- driver

struct Criterion {
  std::string number;
  std::string label;
  std::function<Outcome()> run;
};

const std::map<std::string, Criterion>& criteria() {
  static const std::map<std::string, Criterion> c = {
      {"diagonal", {"1", "diagonal characterization vs probe", diagonal_characterization}},
      {"gallery", {"2", "gallery certificate suite", gallery_suite}},
      {"oracles", {"3", "oracle equivalence", oracle_equivalence}},
      {"shift", {"4", "shift radius curve", shift_curve}},
      {"transfer-adjoint", {"5", "adjoint eta transfer", adjoint_transfer}},
      {"transfer-lift", {"5", "lift eta transfer", lift_transfer}},
      {"psum-1.5", {"5", "p-sum radius 1/2 at p = 1.5", [] { return psum(1.5); }}},
      {"psum-2", {"5", "p-sum radius 1/2 at p = 2", [] { return psum(2.0); }}},
      {"psum-3", {"5", "p-sum radius 1/2 at p = 3", [] { return psum(3.0); }}},
      {"skew", {"6", "skew uniform eta", skew_uniform}},
  };
  return c;
}

void report(const Criterion& c, const Outcome& o, double seconds) {
  std::printf("[%s] criterion %s %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.number.c_str(), c.label.c_str(),
              o.summary.c_str(), seconds);
  for (const auto& n : o.notes) std::printf("       %s\n", n.c_str());
  std::fflush(stdout);
}

std::string transcript_text(const Outcome& o) { return o.transcript.dump(1) + "\n"; }

std::pair<Outcome, double> timed(const Criterion& c) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
    o.summary = "aborted";
  }
  return {o, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
}

int usage() {
  std::fprintf(stderr,
               "usage: acceptance <criterion> [--transcript FILE]\n"
               "       acceptance determinism --dir DIR [--threads N]\n"
               "criteria:");
  for (const auto& [k, v] : criteria()) std::fprintf(stderr, " %s", k.c_str());
  std::fprintf(stderr, "\n");
  return 2;
}

// reruns each criterion with a different thread count and compares against the saved transcript
int determinism(const std::string& dir, int threads) {
  bool all = true;
  int compared = 0;
  for (const auto& [key, c] : criteria()) {
    const std::string path = dir + "/" + key + ".json";
    std::ifstream in(path);
    std::string before;
    if (in) {
      std::stringstream ss;
      ss << in.rdbuf();
      before = ss.str();
    } else {
      set_thread_count(1);
      before = transcript_text(timed(c).first);
    }
    set_thread_count(threads);
    auto [o, secs] = timed(c);
    const std::string after = transcript_text(o);
    const bool same = before == after;
    all = all && same;
    ++compared;
    std::printf("       %-17s %s (%zu bytes, rerun %.1f s)\n", key.c_str(), same ? "identical" : "DIFFERS",
                after.size(), secs);
    std::fflush(stdout);
  }
  std::printf("[%s] criterion 7 determinism: %d transcripts rerun with %d threads, %s\n", all ? "PASS" : "FAIL",
              compared, threads, all ? "byte-identical" : "some differ");
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) return usage();
  const std::string what = argv[1];
  std::string transcript, dir = ".";
  int threads = 4;
  for (int i = 2; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--transcript" && i + 1 < argc) transcript = argv[++i];
    else if (a == "--dir" && i + 1 < argc) dir = argv[++i];
    else if (a == "--threads" && i + 1 < argc) threads = std::atoi(argv[++i]);
    else return usage();
  }
  if (what == "determinism") return determinism(dir, threads);
  auto it = criteria().find(what);
  if (it == criteria().end()) return usage();
  auto [o, secs] = timed(it->second);
  report(it->second, o, secs);
  if (!transcript.empty()) {
    std::ofstream f(transcript);
    f << transcript_text(o);
  }
  return o.pass ? 0 : 1;
}
