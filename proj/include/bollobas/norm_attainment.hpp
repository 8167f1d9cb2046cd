#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bollobas/operators.hpp"

namespace bl {

enum class Certainty { exact, enumerated, grid_refined, heuristic };
std::string to_string(Certainty c);

struct SearchOptions {
  std::uint64_t seed = 0;
  int restarts = 64;
  int iterations = 10000;
  int enum_cap = 20;          // real ell_inf domains up to this dimension are enumerated
  int complex_grid_cap = 4;   // complex ell_inf domains up to this dimension use the phase grid
  int phase_grid = 64;
};

struct NormResult {
  double value = 0.0;
  Certainty certainty = Certainty::heuristic;
  std::optional<Vec> witness;
  std::string method;
};

// structural rewrites: pushes adjoints and scalings into leaves where exact
Operator canonical(const Operator& t);

NormResult operator_norm(const Operator& t, const SearchOptions& opt = {});

struct NormingSet {
  enum class Kind {
    support_constrained,   // unit vectors supported on J
    coordinate_unimodular, // sup-norm unit vectors with |x_n| = 1 for some n in J
    phase_orbit,           // unimodular multiples of one vector
    l1_face,               // c * sum t_j sigma_j e_j, t in the simplex over J, |c| = 1
    linf_face,             // x_j = c sigma_j on J, |x_j| <= 1 elsewhere, |c| = 1
    subspace,              // unit sphere of span(basis) in a Hilbert space
    explicit_list,         // known norming points, possibly incomplete
    all,
    empty,
  };
  Kind kind = Kind::empty;
  Space space;
  std::vector<int> J;  // 0-based
  Vec sigma;           // face phases, or the orbit vector
  Mat basis;           // orthonormal columns for subspace
  std::vector<Vec> points;
  bool complete = true;
};
std::string to_string(NormingSet::Kind k);

NormingSet norming_set(const Operator& t, const SearchOptions& opt = {});

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  bool exact() const { return lower == upper; }
};

// distance from unit x to the norming set; +inf for an empty set
Interval distance_to_norming_set(const Vec& x, const NormingSet& n);
Interval distance_to_norming_set(const Vec& x, const Operator& t);

// the p -> q diagonal norm for a finite weight vector
double mixed_diagonal_norm(const std::vector<cplx>& alpha, double p, double q);

}  // namespace bl
