#include "bollobas/eta.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bl {

struct EtaFunction::Node {
  Kind kind = Kind::epsilon;
  double value = 0.0;
  Space space;
  std::vector<EtaFunction> parts;
};

EtaFunction::EtaFunction() : node_(std::make_shared<Node>()) {}

EtaFunction EtaFunction::identity() { return EtaFunction(); }

EtaFunction EtaFunction::constant(double c) {
  if (!(c > 0.0)) throw Error(ErrorCode::invalid_input, "eta constants must be positive");
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->value = c;
  return EtaFunction(n);
}

EtaFunction EtaFunction::modulus(const Space& s) {
  if (!s.is_leaf() || s.p() == 1.0 || std::isinf(s.p()))
    throw Error(ErrorCode::geometry, s.str() + " is not uniformly convex");
  auto n = std::make_shared<Node>();
  n->kind = Kind::modulus;
  n->space = s;
  return EtaFunction(n);
}

EtaFunction EtaFunction::hilbert_exact(double sigma2) {
  if (!(sigma2 >= 0.0 && sigma2 < 1.0)) throw Error(ErrorCode::invalid_input, "second singular value must lie in [0, 1)");
  auto n = std::make_shared<Node>();
  n->kind = Kind::hilbert_exact;
  n->value = sigma2;
  return EtaFunction(n);
}

EtaFunction EtaFunction::min(std::vector<EtaFunction> parts) {
  if (parts.empty()) throw Error(ErrorCode::invalid_input, "min of nothing");
  if (parts.size() == 1) return parts[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::min;
  n->parts = std::move(parts);
  return EtaFunction(n);
}

EtaFunction EtaFunction::scaled(double k) const {
  if (!(k > 0.0)) throw Error(ErrorCode::invalid_input, "eta scale must be positive");
  auto n = std::make_shared<Node>();
  n->kind = Kind::scale;
  n->value = k;
  n->parts = {*this};
  return EtaFunction(n);
}

EtaFunction EtaFunction::pow(double k) const {
  if (!(k > 0.0)) throw Error(ErrorCode::invalid_input, "eta power must be positive");
  auto n = std::make_shared<Node>();
  n->kind = Kind::power;
  n->value = k;
  n->parts = {*this};
  return EtaFunction(n);
}

EtaFunction EtaFunction::of(const EtaFunction& inner) const {
  if (kind() == Kind::epsilon) return inner;
  if (inner.kind() == Kind::epsilon) return *this;
  auto n = std::make_shared<Node>();
  n->kind = Kind::compose;
  n->parts = {*this, inner};
  return EtaFunction(n);
}

EtaFunction::Kind EtaFunction::kind() const { return node_->kind; }

double EtaFunction::eval(double eps) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::epsilon:
      return eps;
    case Kind::constant:
      return n.value;
    case Kind::scale:
      return n.value * n.parts[0].eval(eps);
    case Kind::power:
      return std::pow(std::max(0.0, n.parts[0].eval(eps)), n.value);
    case Kind::min: {
      double m = kInf;
      for (const auto& p : n.parts) m = std::min(m, p.eval(eps));
      return m;
    }
    case Kind::compose:
      return n.parts[0].eval(n.parts[1].eval(eps));
    case Kind::modulus:
      if (eps <= 0.0) return 0.0;
      return modulus_convexity(n.space, std::min(eps, 2.0));
    case Kind::hilbert_exact: {
      double a = std::max(0.0, 1.0 - eps * eps / 2.0);
      double s = n.value;
      return 1.0 - std::sqrt(a * a + s * s * (1.0 - a * a));
    }
  }
  return 0.0;
}

std::string EtaFunction::describe() const {
  const Node& n = *node_;
  std::ostringstream o;
  o.precision(12);
  switch (n.kind) {
    case Kind::epsilon:
      o << "eps";
      break;
    case Kind::constant:
      o << n.value;
      break;
    case Kind::scale:
      o << n.value << "*(" << n.parts[0].describe() << ")";
      break;
    case Kind::power:
      o << "(" << n.parts[0].describe() << ")^" << n.value;
      break;
    case Kind::min:
      o << "min{";
      for (size_t i = 0; i < n.parts.size(); ++i) o << (i ? ", " : "") << n.parts[i].describe();
      o << "}";
      break;
    case Kind::compose: {
      std::string outer = n.parts[0].describe(), inner = n.parts[1].describe();
      std::string out;
      for (size_t i = 0; i < outer.size();) {
        if (outer.compare(i, 3, "eps") == 0) {
          out += "(" + inner + ")";
          i += 3;
        } else {
          out += outer[i++];
        }
      }
      o << out;
      break;
    }
    case Kind::modulus:
      o << "delta[" << n.space.str() << "](eps)";
      break;
    case Kind::hilbert_exact:
      o << "hilbert_exact[s2=" << n.value << "](eps)";
      break;
  }
  return o.str();
}

}  // namespace bl
