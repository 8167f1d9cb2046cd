#include <doctest.h>

#include "bollobas/gallery.hpp"
#include "bollobas/serialize.hpp"

using namespace bl;

TEST_SUITE("serialize") {
  TEST_CASE("spaces round trip") {
    Space s = Space::sum(Space::lp(2, 3, Field::complex), Space::lp(kInf, 2, Field::complex), 1.0);
    Space back = space_from_json(json::parse(to_json(s).dump()));
    CHECK(back == s);
    CHECK(space_from_json(json{{"p", "inf"}, {"dim", 4}}).p() == kInf);
    CHECK(space_from_json(json{{"p", 2}}, 7).dim() == 7);
  }

  TEST_CASE("sequences round trip") {
    SequenceSpec s;
    s.prefix = {1.0, cplx(0, -0.5)};
    s.tail.kind = Tail::Kind::geometric;
    s.tail.c = cplx(0.3, 0.4);
    s.tail.r = 0.5;
    SequenceSpec back = sequence_from_json(json::parse(to_json(s).dump()));
    for (int k = 1; k <= 8; ++k) CHECK(back.at(k) == s.at(k));
  }

  TEST_CASE("operators round trip") {
    std::vector<Operator> ops = {gallery_from_uri("gallery:G-SKEW?dim=6").op,
                                 lift(gallery_from_uri("gallery:G-RANK1-L1?dim=4").op, 1.0),
                                 adjoint(gallery_from_uri("gallery:G-RANK1-C0?dim=5").op),
                                 scale(cplx(0, 2), gallery_from_uri("gallery:G-SHIFT?dim=3").op)};
    for (const auto& t : ops) {
      Operator back = operator_from_json(json::parse(to_json(t).dump()));
      CHECK(back.from() == t.from());
      CHECK(back.to() == t.to());
      CHECK((back.matrix() - t.matrix()).norm() == 0.0);
    }
  }

  TEST_CASE("hand-written specs") {
    Operator d = operator_from_json(json::parse(R"({"kind": "diagonal", "alpha": [1, 0.5], "space": {"p": 2, "dim": 2}})"));
    CHECK(d.matrix()(1, 1) == cplx(0.5));
    Operator u = operator_from_json(json("gallery:G-SHIFT?dim=3"), 5);
    CHECK(u.from().dim() == 5);
    Operator f = operator_from_json(json::parse(
        R"({"kind": "functional", "space": {"p": 1, "dim": 3}, "spec": {"prefix": [1], "tail": {"kind": "approach", "c": 1}}})"));
    CHECK(f.matrix()(0, 2).real() == doctest::Approx(2.0 / 3.0));
  }

  TEST_CASE("bad specs") {
    auto code = [](const char* text) {
      try {
        operator_from_json(json::parse(text));
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::invalid_input;
    };
    CHECK(code(R"({"kind": "warp"})") == ErrorCode::unknown_entity);
    CHECK(code(R"({"kind": "dense", "space": {"p": 2, "dim": 2}})") == ErrorCode::parse);
    CHECK(code(R"({"kind": "diagonal", "alpha": [1, 2, 3], "space": {"p": 2, "dim": 2}})") == ErrorCode::dimension);
    CHECK(code(R"("gallery:NOPE")") == ErrorCode::unknown_entity);
  }

  TEST_CASE("eta specs") {
    CHECK(eta_from_json(json("eps")).eval(0.3) == 0.3);
    CHECK(eta_from_json(json(0.25)).eval(0.9) == 0.25);
    EtaFunction e = eta_from_json(json::parse(R"({"kind": "scale", "by": 0.25, "of": {"kind": "power", "k": 2, "of": "eps"}})"));
    CHECK(e.eval(0.3) == doctest::Approx(0.0225));
  }

  TEST_CASE("reports re-parse") {
    Operator t = gallery_from_uri("gallery:G-SKEW?dim=8").op;
    json nu = json::parse(to_json(numerical_radius(t)).dump());
    CHECK(nu["value"].get<double>() == doctest::Approx(1.0));
    CHECK(nu["certainty"] == "exact");
    json v = json::parse(to_json(projection_member(3, SpaceFamily::linf(), Mode::norm)).dump());
    CHECK(v["member"] == true);
    CHECK(v["theorem"] == "projection");
    CHECK(jnum(kInf) == "inf");
    CHECK(num_from_json(json("inf"), "x") == kInf);
  }
}
