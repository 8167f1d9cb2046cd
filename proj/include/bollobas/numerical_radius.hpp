#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bollobas/norm_attainment.hpp"

namespace bl {

struct StatePair {
  Vec x, xstar;
};

struct NuResult {
  double value = 0.0;
  // certified upper bound; equals value unless certainty is grid_refined or heuristic
  double upper = kInf;
  Certainty certainty = Certainty::heuristic;
  std::optional<StatePair> witness;
  std::string method;
};

NuResult numerical_radius(const Operator& t, const SearchOptions& opt = {});

// The set of state pairs where |<x*, Tx>| = nu(T).
struct NuAttaining {
  enum class Kind {
    all,
    empty,
    diag_classes,     // x or x* supported in one class of equal unimodular diagonal values
    hilbert_real,     // unit vectors of the top eigenspaces of the symmetric part
    hilbert_complex,  // unit vectors of top eigenspaces of Re(e^{it} T) at the maximizing angles
    l1_vertex,        // x = phi e_m on ell_1 with x* aligned with column m
    lift_states,      // lifted operator on a 1- or inf-sum with simple top singular value
    lift_rank_one,    // lift of w |-> <f, w> y on ell_1 +_1 ell_1, |f| peaked at one coordinate
    corner,           // (w, z) |-> (w_1 e_1, 0) on a 1- or inf-sum of Hilbert spaces
    sampled,          // known attaining pairs only
  };
  Kind kind = Kind::empty;
  Space space;
  bool complete = true;
  double nu = 0.0;
  std::vector<std::vector<int>> classes;  // diag_classes, 0-based
  std::vector<Mat> bases;                 // hilbert kinds, orthonormal columns
  int column = 0;                         // l1_vertex, lift_rank_one: the peak coordinate
  Vec col;                                // l1_vertex: column m of T. lift_rank_one: y
  Vec v, tv;                              // lift_states: top right singular vector and T v / |T v|
  double outer_p = 1.0;                   // lift_states, corner
  int split = 0;                          // lift and corner kinds: dimension of the first summand
  std::vector<StatePair> samples;
};
std::string to_string(NuAttaining::Kind k);

NuAttaining nu_attaining_states(const Operator& t, const SearchOptions& opt = {});

struct PairDistance {
  double dx = kInf;
  double dxstar = kInf;
  // min over attaining pairs of max(|x - y|, |x* - y*|), as an interval
  Interval joint{kInf, kInf};
};

PairDistance distance_to_nu_attaining(const StatePair& sp, const NuAttaining& a);
PairDistance distance_to_nu_attaining(const StatePair& sp, const Operator& t);

}  // namespace bl
