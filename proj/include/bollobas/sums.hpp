#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bollobas/eta.hpp"
#include "bollobas/numerical_radius.hpp"

namespace bl {

enum class TransferDirection { lift_nu_to_norm, norm_to_lift_nu };
std::string to_string(TransferDirection d);

struct SumTransferResult {
  TransferDirection direction = TransferDirection::lift_nu_to_norm;
  double outer_p = 1.0;
  EtaFunction eta;
  std::vector<std::string> hypotheses_checked;
};

// eta for T from an eta for its lift; outer_p is 1 or inf
SumTransferResult lift_nu_implies_norm(const Operator& t, double outer_p, const EtaFunction& eta_lift);
// eta for the lift from an eta for T; needs smooth/convex components as the sum requires
SumTransferResult norm_implies_lift_nu(const Operator& t, double outer_p, const EtaFunction& eta_t);

struct PsumReport {
  double outer_p = 2.0;
  int dim = 1;
  double nu = 0.0;           // closed form for the lifted identity
  double search_value = 0.0;  // best pairing found by direct search over states
  double margin = 0.0;        // 1 - nu
  bool attains_one = false;
  std::vector<std::string> trace;
};

// the lifted identity on X +_p X for X = ell_2^n
PsumReport psum_counterexample(double outer_p, int n, std::uint64_t seed = 0);

struct CornerRepair {
  double epsilon = 0.0;
  int trials = 0;
  double worst_dx = 0.0, worst_dxstar = 0.0;
  double bound_dx = 0.0, bound_dxstar = 0.0;
  bool states_ok = true;  // repaired pairs are states with pairing of modulus 1
  bool pass = true;
};

struct CornerReport {
  double outer_p = 1.0;
  int dim = 2;
  double nu = 0.0;
  bool nu_attained = false;
  StatePair witness;
  bool delift_zero = false;
  std::vector<CornerRepair> repairs;
  bool pass = false;
};

Operator corner_operator(double outer_p, int dim);
CornerReport corner_counterexample(double outer_p, int dim, std::uint64_t seed = 0);

}  // namespace bl
