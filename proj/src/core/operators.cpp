#include "bollobas/operators.hpp"

#include <sstream>

namespace bl {

namespace {

std::shared_ptr<OpNode> make(OpKind k, const Space& from, const Space& to) {
  auto n = std::make_shared<OpNode>();
  n->kind = k;
  n->from = from;
  n->to = to;
  return n;
}

void require_realized(const OpNode& n, const Operator& child) {
  if (!child.realizable())
    throw Error(ErrorCode::not_realizable, "child operator is not realizable: " + child.node().why_not);
  (void)n;
}

}  // namespace

OpKind Operator::kind() const { return node_->kind; }
const Space& Operator::from() const { return node_->from; }
const Space& Operator::to() const { return node_->to; }
bool Operator::realizable() const { return node_ && node_->realized.has_value(); }

const Mat& Operator::matrix() const {
  if (!realizable()) throw Error(ErrorCode::not_realizable, node_ ? node_->why_not : "empty operator");
  return *node_->realized;
}

Vec Operator::apply(const Vec& x) const {
  if (x.size() != from().dim())
    throw Error(ErrorCode::dimension,
                "operator on " + from().str() + " applied to a vector of length " + std::to_string(x.size()));
  return matrix() * x;
}

std::string Operator::describe() const {
  std::ostringstream os;
  switch (kind()) {
    case OpKind::dense: os << "dense"; break;
    case OpKind::diagonal: os << "diagonal[" << node_->spec.describe() << "]"; break;
    case OpKind::rank_one: os << "rank_one"; break;
    case OpKind::adjoint: os << "adjoint(" << node_->children[0].describe() << ")"; break;
    case OpKind::lift: os << "lift(" << node_->children[0].describe() << ")"; break;
    case OpKind::delift: os << "delift(" << node_->children[0].describe() << ")"; break;
    case OpKind::direct_sum:
      os << "direct_sum(" << node_->children[0].describe() << ", " << node_->children[1].describe() << ")";
      break;
    case OpKind::scale: os << "scale(" << node_->children[0].describe() << ")"; break;
  }
  os << " : " << from().str() << " -> " << to().str();
  return os.str();
}

Vec eval(const Operator& t, const Vec& x) { return t.apply(x); }

Operator dense(const Mat& m, const Space& from, const Space& to) {
  if (m.cols() != from.dim() || m.rows() != to.dim())
    throw Error(ErrorCode::dimension, "matrix shape does not match " + from.str() + " -> " + to.str());
  if (!m.allFinite()) throw Error(ErrorCode::invalid_input, "matrix has non-finite entries");
  if (from.field() == Field::real && to.field() == Field::real && m.imag().cwiseAbs().maxCoeff() > 0.0)
    throw Error(ErrorCode::invalid_input, "complex entries in a real operator");
  auto n = make(OpKind::dense, from, to);
  n->dense = m;
  n->realized = m;
  return Operator(n);
}

Operator diagonal(const SequenceSpec& spec, const Space& from, const Space& to) {
  if (from.dim() != to.dim()) throw Error(ErrorCode::dimension, "diagonal operator needs equal dimensions");
  if (from.field() != to.field()) throw Error(ErrorCode::invalid_input, "diagonal operator across fields");
  auto n = make(OpKind::diagonal, from, to);
  n->spec = spec;
  if (from.field() == Field::real && !spec.real() && spec.materializable())
    throw Error(ErrorCode::invalid_input, "complex sequence on a real space");
  if (spec.materializable()) {
    auto a = spec.materialize(from.dim());
    Mat m = Mat::Zero(from.dim(), from.dim());
    for (int i = 0; i < from.dim(); ++i) m(i, i) = a[i];
    n->realized = m;
  } else {
    n->why_not = "bounded tail has no materialization rule";
  }
  return Operator(n);
}

Operator diagonal(const SequenceSpec& spec, const Space& space) { return diagonal(spec, space, space); }

Operator diagonal(const std::vector<cplx>& alpha, const Space& space) {
  if (int(alpha.size()) != space.dim()) throw Error(ErrorCode::dimension, "diagonal length does not match space");
  return diagonal(SequenceSpec::finite(alpha), space);
}

Operator rank_one(const Vec& y, const Vec& f, const Space& from, const Space& to) {
  if (y.size() != to.dim() || f.size() != from.dim())
    throw Error(ErrorCode::dimension, "rank-one factors do not match spaces");
  auto n = make(OpKind::rank_one, from, to);
  n->y = y;
  n->f = f;
  n->realized = y * f.transpose();
  return Operator(n);
}

Operator functional(const Vec& f, const Space& from) {
  Vec one = Vec::Ones(1);
  return rank_one(one, f, from, Space::lp(2.0, 1, from.field()));
}

Operator adjoint(const Operator& t) {
  auto n = make(OpKind::adjoint, dual(t.to()), dual(t.from()));
  n->children = {t};
  if (t.realizable())
    n->realized = t.matrix().transpose();
  else
    n->why_not = t.node().why_not;
  return Operator(n);
}

Space lift_space(const Operator& t, double outer_p) { return Space::sum(t.from(), t.to(), outer_p); }

Operator lift(const Operator& t, double outer_p) {
  Space s = lift_space(t, outer_p);
  auto n = make(OpKind::lift, s, s);
  n->outer_p = outer_p;
  n->children = {t};
  require_realized(*n, t);
  int nw = t.from().dim(), nz = t.to().dim();
  Mat m = Mat::Zero(nw + nz, nw + nz);
  m.block(nw, 0, nz, nw) = t.matrix();
  n->realized = m;
  return Operator(n);
}

Operator delift(const Operator& s, const Space& w, const Space& z) {
  Space sum = Space::sum(w, z, s.from().p());
  if (!(sum == s.from()) || !(sum == s.to()))
    throw Error(ErrorCode::invalid_input, "delift needs an operator on " + sum.str());
  auto n = make(OpKind::delift, w, z);
  n->outer_p = s.from().p();
  n->children = {s};
  require_realized(*n, s);
  n->realized = s.matrix().block(w.dim(), 0, z.dim(), w.dim());
  return Operator(n);
}

Operator delift(const Operator& s) {
  if (s.kind() == OpKind::lift) {
    const Operator& t = s.node().children[0];
    return delift(s, t.from(), t.to());
  }
  if (s.from().is_leaf()) throw Error(ErrorCode::invalid_input, "delift needs the component spaces of a flat sum");
  return delift(s, s.from().first(), s.from().second());
}

Operator direct_sum(const Operator& a, const Operator& b, double outer_p) {
  auto n = make(OpKind::direct_sum, Space::sum(a.from(), b.from(), outer_p), Space::sum(a.to(), b.to(), outer_p));
  n->outer_p = outer_p;
  n->children = {a, b};
  require_realized(*n, a);
  require_realized(*n, b);
  Mat m = Mat::Zero(n->to.dim(), n->from.dim());
  m.block(0, 0, a.to().dim(), a.from().dim()) = a.matrix();
  m.block(a.to().dim(), a.from().dim(), b.to().dim(), b.from().dim()) = b.matrix();
  n->realized = m;
  return Operator(n);
}

Operator scale(cplx c, const Operator& t) {
  if (t.from().field() == Field::real && c.imag() != 0.0)
    throw Error(ErrorCode::invalid_input, "complex factor on a real operator");
  auto n = make(OpKind::scale, t.from(), t.to());
  n->factor = c;
  n->children = {t};
  if (t.realizable())
    n->realized = c * t.matrix();
  else
    n->why_not = t.node().why_not;
  return Operator(n);
}

}  // namespace bl
