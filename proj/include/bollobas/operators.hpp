#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bollobas/sequence.hpp"
#include "bollobas/spaces.hpp"

namespace bl {

enum class OpKind { dense, diagonal, rank_one, adjoint, lift, delift, direct_sum, scale };

struct OpNode;

// Immutable operator expression. Realizable nodes carry their dense matrix.
class Operator {
 public:
  Operator() = default;
  explicit Operator(std::shared_ptr<const OpNode> n) : node_(std::move(n)) {}

  OpKind kind() const;
  const Space& from() const;
  const Space& to() const;
  bool square() const { return from() == to(); }
  bool realizable() const;
  const Mat& matrix() const;
  Vec apply(const Vec& x) const;
  const OpNode& node() const { return *node_; }
  std::string describe() const;

 private:
  std::shared_ptr<const OpNode> node_;
};

struct OpNode {
  OpKind kind = OpKind::dense;
  Space from, to;
  Mat dense;
  SequenceSpec spec;
  Vec y, f;
  cplx factor = 1.0;
  double outer_p = 1.0;
  std::vector<Operator> children;
  std::optional<Mat> realized;
  std::string why_not;
};

Operator dense(const Mat& m, const Space& from, const Space& to);
Operator diagonal(const SequenceSpec& spec, const Space& space);
Operator diagonal(const SequenceSpec& spec, const Space& from, const Space& to);
Operator diagonal(const std::vector<cplx>& alpha, const Space& space);
// x |-> <f, x> y
Operator rank_one(const Vec& y, const Vec& f, const Space& from, const Space& to);
// a functional f on `from`, valued in the scalar field
Operator functional(const Vec& f, const Space& from);
Operator adjoint(const Operator& t);
// (w, z) |-> (0, T w) on W +_p Z
Operator lift(const Operator& t, double outer_p);
// w |-> P_2 S(w, 0) for S on W +_p Z
Operator delift(const Operator& s, const Space& w, const Space& z);
Operator delift(const Operator& s);
Operator direct_sum(const Operator& a, const Operator& b, double outer_p);
Operator scale(cplx c, const Operator& t);

Vec eval(const Operator& t, const Vec& x);

// the lift's sum space W +_p Z built from T : W -> Z
Space lift_space(const Operator& t, double outer_p);

}  // namespace bl
