#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bollobas/scalar.hpp"

namespace bl {

// Tail of a bounded sequence (alpha_k) for k beyond the prefix.
// Indices are global and 1-based.
struct Tail {
  enum class Kind {
    zero,
    constant,     // alpha_k = c
    geometric,    // alpha_k = c r^k, |r| < 1
    approach,     // alpha_k = c (1 - 1/k)
    phase_drift,  // alpha_k = exp(i theta / k)
    bounded,      // symbolic only
  };
  Kind kind = Kind::zero;
  cplx c = 0.0;
  double r = 0.0;
  double theta = 0.0;

  // bounded tails
  double sup_modulus = 0.0;
  bool sup_attained = false;
  std::optional<std::vector<cplx>> unimodular_values;  // finite set of tail values with |v| = 1
  bool unimodular_finite = true;
  bool all_unimodular = false;
  double off_unimodular_sup = 0.0;  // sup of |alpha_k| over tail entries off J
};

// Exact facts about J = {n : |alpha_n| = 1}.
struct JInfo {
  std::vector<int> prefix_indices;  // 1-based members of J inside the prefix
  bool tail_in_j = false;           // some tail entries are unimodular
  bool empty = true;
  bool all = false;                 // J = N
  double sup_off_j = 0.0;           // sup over N \ J, 0 when J = N
  bool sup_off_j_attained = true;
  bool phases_finite = true;
  std::vector<cplx> phases;         // distinct values on J when finite
  double sup_modulus = 0.0;
  bool sup_attained = true;
};

struct SequenceSpec {
  std::vector<cplx> prefix;
  Tail tail;

  static SequenceSpec finite(std::vector<cplx> values);

  bool materializable() const;
  bool real() const;
  cplx at(int k) const;                 // 1-based
  std::vector<cplx> materialize(int n) const;
  JInfo analyze() const;
  // sum of |alpha_k|^p, +inf when not summable
  double p_sum(double p) const;
  bool finitely_supported() const;
  std::string describe() const;
};

// groups unimodular values into classes of equal value
std::vector<cplx> distinct_values(const std::vector<cplx>& v, double tol = kUnimodularTol);

}  // namespace bl
