#include <doctest.h>

#include <cmath>

#include "bollobas/membership.hpp"
#include "bollobas/norm_attainment.hpp"
#include "bollobas/numerical_radius.hpp"

using namespace bl;

namespace {
SequenceSpec with_tail(std::vector<cplx> prefix, Tail::Kind kind, cplx c = 0.0, double r = 0.0, double theta = 0.0) {
  SequenceSpec s;
  s.prefix = std::move(prefix);
  s.tail.kind = kind;
  s.tail.c = c;
  s.tail.r = r;
  s.tail.theta = theta;
  return s;
}
const std::vector<SpaceFamily> kFamilies = {SpaceFamily::c0(), SpaceFamily::lp(1.0), SpaceFamily::lp(2.0),
                                            SpaceFamily::lp(3.0), SpaceFamily::linf()};
}  // namespace

TEST_SUITE("membership") {
  TEST_CASE("one peak and a constant tail below 1") {
    SequenceSpec s = with_tail({1.0}, Tail::Kind::constant, 0.5);
    for (const auto& f : kFamilies) {
      Verdict v = diag_norm_member(s, f);
      CHECK(v.member());
      CHECK(v.theorem == "diagonal-norm");
      CHECK(v.certificate["J_prefix"] == nlohmann::json::array({1}));
      CHECK(v.certificate["sup_off_J"].get<double>() == 0.5);
    }
    CHECK(diag_norm_member(with_tail({1.0}, Tail::Kind::constant, 0.9), SpaceFamily::lp(2.0)).member());
  }

  TEST_CASE("values creeping up to 1 off J") {
    SequenceSpec s = with_tail({1.0}, Tail::Kind::approach, 1.0);
    for (const auto& f : kFamilies) {
      Verdict v = diag_norm_member(s, f);
      CHECK(v.outcome == Verdict::Outcome::not_member);
      REQUIRE(v.witness);
      CHECK(v.witness->kind == WitnessRecipe::Kind::coordinate);
      for (int n : {8, 16, 32}) {
        MaterializedWitness m = materialize_diagonal(v, s, f, Mode::norm, n);
        CHECK(m.decay == doctest::Approx(1.0 / n).epsilon(1e-12));
        CHECK(norm(m.op.apply(*m.x), m.op.to()) >= 1.0 - m.decay - 1e-15);
        CHECK(distance_to_norming_set(*m.x, m.op).lower >= m.gap);
      }
    }
  }

  TEST_CASE("all ones") {
    SequenceSpec s = with_tail({}, Tail::Kind::constant, 1.0);
    for (const auto& f : kFamilies) CHECK(diag_norm_member(s, f).member());
  }

  TEST_CASE("sup attained nowhere") {
    SequenceSpec s = with_tail({0.5}, Tail::Kind::approach, 1.0);
    Verdict v = diag_norm_member(s, SpaceFamily::c0());
    CHECK(v.outcome == Verdict::Outcome::not_member);
    CHECK(v.reason == "non-attaining");
  }

  TEST_CASE("sup modulus other than 1 is rejected") {
    SequenceSpec s = with_tail({0.5}, Tail::Kind::constant, 0.25);
    CHECK_THROWS_AS(diag_norm_member(s, SpaceFamily::lp(2.0)), Error);
  }

  TEST_CASE("real diagonals: norm and numerical radius verdicts coincide") {
    std::vector<SequenceSpec> specs = {
        with_tail({1.0, -1.0}, Tail::Kind::zero),         with_tail({1.0}, Tail::Kind::approach, -1.0),
        with_tail({-1.0, 0.3}, Tail::Kind::geometric, 0.9, -0.5), with_tail({0.2}, Tail::Kind::constant, -1.0),
        with_tail({0.4}, Tail::Kind::approach, 1.0)};
    for (const auto& s : specs)
      for (const auto& f : kFamilies) {
        if (f.kind == SpaceFamily::Kind::linf) continue;
        CHECK(diag_norm_member(s, f).outcome == diag_nu_member(s, f).outcome);
      }
    Verdict v = diag_nu_member(with_tail({1.0, -1.0}, Tail::Kind::zero), SpaceFamily::lp(1.0));
    CHECK(v.member());
    CHECK(v.certificate["phase_count"] == 2);
  }

  TEST_CASE("drifting phases separate the two memberships") {
    SequenceSpec s = with_tail({}, Tail::Kind::phase_drift, 0.0, 0.0, 1.0);
    SpaceFamily f = SpaceFamily::lp(2.0, Field::complex);
    CHECK(diag_norm_member(s, f).member());
    Verdict v = diag_nu_member(s, f);
    CHECK(v.outcome == Verdict::Outcome::not_member);
    REQUIRE(v.witness);
    CHECK(v.witness->kind == WitnessRecipe::Kind::adjacent_pair);
    for (int n : {8, 16}) {
      MaterializedWitness m = materialize_diagonal(v, s, f, Mode::nu, n);
      CHECK(m.decay == doctest::Approx(1.0 - std::cos(1.0 / (2.0 * n * (n - 1)))).epsilon(1e-6));
      CHECK(distance_to_nu_attaining({*m.x, *m.xstar}, m.op).joint.lower >= m.gap - 1e-12);
    }
    CHECK(diag_nu_member(s, SpaceFamily::linf(Field::complex)).outcome == Verdict::Outcome::not_applicable);
  }

  TEST_CASE("mixed diagonals") {
    Verdict a = diag_mixed_member(SequenceSpec::finite({0.6, 0.8}), SpaceFamily::c0(), SpaceFamily::lp(2.0));
    CHECK(a.member());
    CHECK(a.theorem == "diagonal-mixed-c0-lp");
    CHECK_THROWS_AS(diag_mixed_member(with_tail({1.0}, Tail::Kind::constant, 0.5), SpaceFamily::c0(), SpaceFamily::lp(1.0)),
                    Error);
    const double r = 0.5;
    SequenceSpec g;
    g.tail.kind = Tail::Kind::geometric;
    g.tail.c = std::sqrt(1.0 - r * r) / r;
    g.tail.r = r;
    Verdict b = diag_mixed_member(g, SpaceFamily::c0(), SpaceFamily::lp(2.0));
    CHECK(b.outcome == Verdict::Outcome::not_member);
    Verdict c = diag_mixed_member(with_tail({1.0}, Tail::Kind::constant, 0.5), SpaceFamily::lp(2.0), SpaceFamily::c0());
    CHECK(c.theorem == "diagonal-mixed-lp-c0");
    CHECK(c.member());
  }

  TEST_CASE("canonical projections are always members") {
    for (const auto& f : kFamilies)
      for (int N = 1; N <= 64; ++N) {
        CHECK(projection_member(N, f, Mode::norm).member());
        if (f.kind != SpaceFamily::Kind::linf) CHECK(projection_member(N, f, Mode::nu).member());
      }
  }

  TEST_CASE("functionals") {
    SequenceSpec f = SequenceSpec::finite({std::pow(0.5, 1.0 / 1.5), std::pow(0.5, 1.0 / 1.5)});
    Verdict a = functional_member(f, SpaceFamily::lp(3.0));
    CHECK(a.member());
    CHECK(a.theorem == "functional-uniformly-convex");

    SequenceSpec z = with_tail({1.0}, Tail::Kind::approach, 1.0);
    Verdict b = functional_member(z, SpaceFamily::lp(1.0));
    CHECK(b.outcome == Verdict::Outcome::not_member);
    CHECK(b.theorem == "functional-l1-ratio-family");
    REQUIRE(b.witness);
    CHECK(b.witness->gap == 2.0);
    MaterializedWitness mz = materialize_functional(b, z, SpaceFamily::lp(1.0), 10);
    CHECK(mz.decay == doctest::Approx(0.1));
    CHECK(distance_to_norming_set(*mz.x, mz.op).lower == doctest::Approx(2.0));

    SequenceSpec w;
    w.tail.kind = Tail::Kind::geometric;
    w.tail.c = 1.0;
    w.tail.r = 0.5;
    Verdict c = functional_member(w, SpaceFamily::linf());
    CHECK(c.outcome == Verdict::Outcome::not_member);
    CHECK(c.theorem == "functional-linf-geometric");
    MaterializedWitness mw = materialize_functional(c, w, SpaceFamily::linf(), 12);
    CHECK(mw.decay == doctest::Approx(std::pow(2.0, -11)).epsilon(1e-9));
    CHECK(distance_to_norming_set(*mw.x, mw.op).lower >= 1.0 - 1e-12);

    Verdict d = functional_member(w, SpaceFamily::c0());
    CHECK(d.theorem == "functional-c0");
    CHECK(d.outcome == Verdict::Outcome::not_member);
    CHECK(functional_member(SequenceSpec::finite({0.5, -0.5}), SpaceFamily::c0()).member());
  }
}

TEST_SUITE("eta") {
  double delta_h(double e) { return 1.0 - std::sqrt(1.0 - e * e / 4.0); }

  TEST_CASE("adjoint transfer with a Hilbert target") {
    EtaFunction a = adjoint_eta(EtaFunction::identity(), Space::lp(2, 3));
    for (double e : {0.1, 0.3, 0.7}) CHECK(a.eval(e) == doctest::Approx(delta_h(e) / 2.0).epsilon(1e-12));
    CHECK(a.eval(0.1) == doctest::Approx((1.0 - std::sqrt(1.0 - 0.0025)) / 2.0).epsilon(1e-12));
    double prev = 0.0;
    for (int k = 1; k < 100; ++k) {
      double v = a.eval(0.01 * k);
      CHECK(v > 0.0);
      CHECK(v >= prev);
      prev = v;
    }
  }

  TEST_CASE("c0 adjoint transfer") {
    EtaFunction a = c0_adjoint_nu_eta(EtaFunction::identity().scaled(0.5));
    for (double e : {0.1, 0.5, 0.9}) CHECK(a.eval(e) == doctest::Approx(e / 6.0).epsilon(1e-12));
    EtaFunction b = c0_adjoint_nu_eta(EtaFunction::constant(1.0));
    for (double e : {0.1, 0.5, 0.9}) CHECK(b.eval(e) == doctest::Approx(e / 3.0).epsilon(1e-12));
  }

  TEST_CASE("rank one on ell_1") {
    CHECK(rank1_l1_eta().eval(0.2) == doctest::Approx(0.1));
    Vec x = Vec::Zero(6);
    x[0] = 0.95;
    x[1] = 0.05;
    Vec y = rank1_l1_repair(x);
    CHECK(y[0] == cplx(1.0));
    CHECK(y.tail(5).norm() == 0.0);
    CHECK(lp_norm(x - y, 1.0) == doctest::Approx(0.1));
  }

  TEST_CASE("hilbert modulus") {
    EtaFunction h = EtaFunction::hilbert_exact(0.5);
    double a = 1.0 - 0.5 * 0.5 / 2.0;
    CHECK(h.eval(0.5) == doctest::Approx(1.0 - std::sqrt(a * a + 0.25 * (1.0 - a * a))));
    CHECK_THROWS_AS(EtaFunction::hilbert_exact(1.0), Error);
  }

  TEST_CASE("composition and powers") {
    EtaFunction sq = EtaFunction::identity().pow(2.0).scaled(0.25);
    CHECK(sq.eval(0.3) == doctest::Approx(0.0225));
    EtaFunction m = EtaFunction::min({sq, EtaFunction::constant(0.01)});
    CHECK(m.eval(0.3) == doctest::Approx(0.01));
    CHECK(sq.of(EtaFunction::identity().scaled(2.0)).eval(0.1) == doctest::Approx(0.01));
  }
}
