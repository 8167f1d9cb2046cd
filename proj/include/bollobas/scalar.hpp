#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bl {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

enum class Field { real, complex };

// membership in Pi is checked against this unless a caller loosens it
inline constexpr double kStateTol = 1e-9;
// |alpha| == 1 test for sequence entries
inline constexpr double kUnimodularTol = 1e-12;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ErrorCode {
  invalid_input = 1,
  parse = 2,
  geometry = 3,
  unknown_entity = 4,
  claim_failed = 5,
  dimension = 6,
  not_normalized = 7,
  not_realizable = 8,
  refused = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline bool unimodular(cplx z) { return std::abs(std::abs(z) - 1.0) <= kUnimodularTol; }

// z/|z|, with 1 for z == 0
inline cplx phase(cplx z) {
  double a = std::abs(z);
  return a > 0 ? z / a : cplx(1.0, 0.0);
}

}  // namespace bl
