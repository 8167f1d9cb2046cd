#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bollobas/spaces.hpp"

namespace bl {

// Symbolic eps |-> eta(eps), closed under min, composition and moduli of convexity.
class EtaFunction {
 public:
  enum class Kind { epsilon, constant, scale, power, min, compose, modulus, hilbert_exact };

  EtaFunction();  // the identity eps
  static EtaFunction identity();
  static EtaFunction constant(double c);
  static EtaFunction modulus(const Space& s);
  // 1 - sqrt(A^2 + s2^2 (1 - A^2)), A = max(0, 1 - eps^2/2): the exact modulus of a
  // Hilbert operator with simple top singular value 1 and second singular value s2
  static EtaFunction hilbert_exact(double sigma2);
  static EtaFunction min(std::vector<EtaFunction> parts);

  EtaFunction scaled(double k) const;
  EtaFunction pow(double k) const;
  // this(inner(eps))
  EtaFunction of(const EtaFunction& inner) const;

  Kind kind() const;
  double eval(double eps) const;
  std::string describe() const;

 private:
  struct Node;
  explicit EtaFunction(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace bl
