#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bollobas/eta.hpp"
#include "bollobas/membership.hpp"
#include "bollobas/numerical_radius.hpp"

namespace bl {

struct ProbeOptions {
  std::uint64_t seed = 0;
  int restarts = 256;
  int iterations = 2000;
  // starting points tried before random restarts
  std::vector<Vec> seeds;
  std::vector<StatePair> seed_pairs;
};

struct ProbeReport {
  enum class Status {
    found,       // a feasible point was found; eta_hat = 1 - its value
    no_witness,  // nothing feasible turned up within the budget
    infeasible,  // the attaining set is everything, nothing can be eps away
  };
  double epsilon = 0.0;
  double eta_hat = kInf;
  Mode mode = Mode::norm;
  Status status = Status::no_witness;
  int dim = 0;
  int restarts = 0;
  int iterations = 0;
  std::uint64_t seed = 0;
  std::optional<Vec> x;
  std::optional<Vec> xstar;
  double slack = kInf;     // 1 - value at the witness
  double distance = kInf;  // certified lower bound on its distance to the attaining set
};
std::string to_string(ProbeReport::Status s);

// one report per epsilon, in the order given
std::vector<ProbeReport> eta_probe(const Operator& t, const std::vector<double>& eps, Mode mode,
                                   const ProbeOptions& opt = {});
ProbeReport eta_probe_norm(const Operator& t, double eps, const ProbeOptions& opt = {});
ProbeReport eta_probe_nu(const Operator& t, double eps, const ProbeOptions& opt = {});

struct ValidationRow {
  double epsilon = 0.0;
  double eta = 0.0;
  ProbeReport probe;
  bool pass = true;
};

struct ValidationReport {
  bool pass = true;
  std::vector<ValidationRow> rows;
};

// fails at eps when a point eps away from the attaining set has value above 1 - eta(eps)
ValidationReport validate_eta(const Operator& t, const EtaFunction& eta, const std::vector<double>& eps, Mode mode,
                              const ProbeOptions& opt = {});

std::string probe_csv_header();
std::string probe_csv_row(const ProbeReport& r);
// shortest decimal that reads back to the same double
std::string format_double(double v);

}  // namespace bl
