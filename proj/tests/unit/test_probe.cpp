#include <doctest.h>

#include <charconv>
#include <cmath>

#include "bollobas/gallery.hpp"
#include "bollobas/parallel.hpp"
#include "bollobas/probe.hpp"

using namespace bl;

namespace {
Operator entry(const std::string& id, int dim) {
  GalleryParams gp;
  gp.dim = dim;
  return gallery(id, gp).op;
}
ProbeOptions budget(int restarts, int iterations, std::uint64_t seed = 0) {
  ProbeOptions o;
  o.restarts = restarts;
  o.iterations = iterations;
  o.seed = seed;
  return o;
}
}  // namespace

TEST_SUITE("probe") {
  TEST_CASE("block diagonal decays like 1/(2N)") {
    for (int N : {2, 4, 8}) {
      ProbeReport r = eta_probe_norm(entry("G-BLOCK", N), 0.5, budget(16, 300));
      REQUIRE(r.status == ProbeReport::Status::found);
      CHECK(r.eta_hat <= 1.0 / (2 * N) + 1e-12);
      CHECK(r.distance >= 0.5);
    }
  }

  TEST_CASE("member diagonal keeps its exact modulus") {
    // the norming set is {+-e_1}; the best point at distance eps has |x_1| = 1 - eps^2/2
    const double eps = 0.1, a = 1.0 - eps * eps / 2.0;
    const double exact = 1.0 - std::sqrt(a * a + (1.0 - a * a) / 4.0);
    for (int n : {4, 8, 16}) {
      std::vector<cplx> alpha(n, 0.5);
      alpha[0] = 1.0;
      ProbeReport r = eta_probe_norm(diagonal(alpha, Space::lp(2, n)), eps, budget(32, 600, n));
      REQUIRE(r.status == ProbeReport::Status::found);
      CHECK(r.eta_hat >= exact - 1e-9);
      CHECK(r.eta_hat <= exact + 1e-4);
    }
  }

  TEST_CASE("identity has no feasible points") {
    Operator id = diagonal(std::vector<cplx>(4, 1.0), Space::lp(2, 4));
    for (Mode m : {Mode::norm, Mode::nu}) {
      ProbeReport r = eta_probe(id, {0.5}, m, budget(4, 50))[0];
      CHECK(r.status == ProbeReport::Status::infeasible);
      CHECK(std::isinf(r.eta_hat));
    }
    CHECK(validate_eta(id, EtaFunction::constant(0.5), {0.1, 0.5}, Mode::norm, budget(4, 50)).pass);
    CHECK(probe_csv_row(eta_probe_norm(id, 0.5, budget(1, 1))) == "0.5,inf,inf,inf,4,0,norm,infeasible");
  }

  TEST_CASE("lifted rank one on ell_1 decays like its tail weight") {
    for (int k : {6, 10}) {
      Operator t = lift(entry("G-RANK1-L1", k), 1.0);
      ProbeOptions o = budget(8, 200);
      Vec x = Vec::Zero(2 * k), xs = Vec::Zero(2 * k);
      x[0] = 1.0;
      xs[0] = 1.0;
      for (int j = k; j < 2 * k - 1; ++j) xs[j] = 1.0;
      o.seed_pairs.push_back({x, xs});
      ProbeReport r = eta_probe_nu(t, 0.5, o);
      REQUIRE(r.status == ProbeReport::Status::found);
      CHECK(r.eta_hat <= std::pow(2.0, -(k - 1)) + 1e-15);
    }
  }

  TEST_CASE("skew operator keeps eps^2/4") {
    for (int d : {8, 16}) {
      ProbeReport r = eta_probe_nu(entry("G-SKEW", d), 0.3, budget(32, 300, d));
      if (r.status == ProbeReport::Status::found) CHECK(r.eta_hat >= 0.0225);
    }
  }

  TEST_CASE("validation of the rank one modulus") {
    std::vector<double> grid;
    for (int k = 1; k <= 9; ++k) grid.push_back(0.1 * k);
    for (int k : {4, 16, 64}) {
      ValidationReport v = validate_eta(entry("G-RANK1-L1", k), rank1_l1_eta(), grid, Mode::norm, budget(8, 200, k));
      CHECK(v.pass);
      CHECK(v.rows.size() == grid.size());
    }
  }

  TEST_CASE("no constant eta survives the ratio functional") {
    const double eta = 0.1;
    Operator z = entry("G-DIAG-ZSTAR", 16);
    ProbeOptions o = budget(8, 100);
    Vec e = Vec::Zero(16);
    e[15] = 1.0;
    o.seeds.push_back(e);
    ValidationReport v = validate_eta(z, EtaFunction::constant(eta), {0.5}, Mode::norm, o);
    CHECK_FALSE(v.pass);
  }

  TEST_CASE("csv schema and number format") {
    CHECK(probe_csv_header() == "epsilon,eta_hat,slack,distance,dim,seed,mode,status");
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.678}) {
      std::string s = format_double(v);
      double back = 0.0;
      std::from_chars(s.data(), s.data() + s.size(), back);
      CHECK(back == v);
    }
    CHECK(format_double(kInf) == "inf");
  }

  TEST_CASE("rows do not depend on the thread count") {
    Operator t = entry("G-BLOCK", 4);
    set_thread_count(1);
    auto a = eta_probe(t, {0.5, 0.2}, Mode::norm, budget(12, 200, 3));
    set_thread_count(3);
    auto b = eta_probe(t, {0.5, 0.2}, Mode::norm, budget(12, 200, 3));
    set_thread_count(0);
    for (size_t i = 0; i < a.size(); ++i) CHECK(probe_csv_row(a[i]) == probe_csv_row(b[i]));
  }

  TEST_CASE("refusals") {
    Operator half = diagonal(std::vector<cplx>{0.5, 0.25}, Space::lp(2, 2));
    CHECK_THROWS_AS(eta_probe_norm(half, 0.5, budget(1, 1)), Error);
    CHECK_THROWS_AS(eta_probe(entry("G-BLOCK", 2), {}, Mode::norm, budget(1, 1)), Error);
    CHECK_THROWS_AS(eta_probe(entry("G-BLOCK", 2), {-0.1}, Mode::norm, budget(1, 1)), Error);
  }
}
