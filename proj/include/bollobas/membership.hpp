#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "bollobas/eta.hpp"
#include "bollobas/operators.hpp"

namespace bl {

enum class Mode { norm, nu };
std::string to_string(Mode m);

// c_0, ell_p or ell_inf as a family of truncations
struct SpaceFamily {
  enum class Kind { c0, lp, linf };
  Kind kind = Kind::lp;
  double p = 2.0;
  Field field = Field::real;

  static SpaceFamily c0(Field f = Field::real) { return {Kind::c0, kInf, f}; }
  static SpaceFamily lp(double p, Field f = Field::real);
  static SpaceFamily linf(Field f = Field::real) { return {Kind::linf, kInf, f}; }
  // "c0", "linf", "l1", "l2", "lp:3.5"
  static SpaceFamily parse(const std::string& s, Field f = Field::real);

  double exponent() const { return kind == Kind::lp ? p : kInf; }
  Space at(int n) const { return Space::lp(exponent(), n, field); }
  std::string str() const;
};

// How a non-member defeats every uniform eta, as points indexed by the truncation level n.
struct WitnessRecipe {
  enum class Kind {
    coordinate,      // e_n
    adjacent_pair,   // mass split over n-1 and n
    basis_sum,       // e_1 + ... + e_n
    truncation_gap,  // no norming point at all; 1 - |T_n| shrinks
    symbolic,        // described only, no materialization rule
  };
  Kind kind = Kind::symbolic;
  std::string description;
  std::string decay;  // the rate, e.g. "1/n"
  double gap = 0.0;   // lower bound on the distance to the attaining set
};

struct Verdict {
  enum class Outcome { member, not_member, undecided, not_applicable };
  Outcome outcome = Outcome::undecided;
  std::string theorem;
  std::string reason;
  nlohmann::json certificate = nlohmann::json::object();
  std::optional<WitnessRecipe> witness;

  bool member() const { return outcome == Outcome::member; }
};
std::string to_string(Verdict::Outcome o);
nlohmann::json to_json(const Verdict& v);

Verdict diag_norm_member(const SequenceSpec& spec, const SpaceFamily& fam);
Verdict diag_nu_member(const SequenceSpec& spec, const SpaceFamily& fam);
Verdict diag_mixed_member(const SequenceSpec& spec, const SpaceFamily& from, const SpaceFamily& to);
Verdict projection_member(int N, const SpaceFamily& fam, Mode mode);
Verdict functional_member(const SequenceSpec& f, const SpaceFamily& fam);

struct MaterializedWitness {
  Operator op;
  std::optional<Vec> x;
  std::optional<Vec> xstar;
  double decay = 0.0;  // 1 - |T x| or 1 - |<x*, T x>|; for truncation_gap, 1 - |T_n|
  double gap = 0.0;
};

// the recipe of a not_member diagonal verdict at truncation n
MaterializedWitness materialize_diagonal(const Verdict& v, const SequenceSpec& spec, const SpaceFamily& fam, Mode mode,
                                         int n);
// the recipe of a not_member functional verdict at truncation n
MaterializedWitness materialize_functional(const Verdict& v, const SequenceSpec& f, const SpaceFamily& fam, int n);

// lower bound on eta(eps, T_n) for every truncation of a member diagonal; +inf when
// the attaining set is everything
double probe_floor(const SequenceSpec& spec, const SpaceFamily& fam, Mode mode, double eps);

EtaFunction adjoint_eta(const EtaFunction& eta_t, const Space& target_dual);
EtaFunction c0_adjoint_nu_eta(const EtaFunction& eta_t);
EtaFunction rank1_l1_eta();
// y = (x_1/|x_1|, 0, ..., 0)
Vec rank1_l1_repair(const Vec& x);

}  // namespace bl
