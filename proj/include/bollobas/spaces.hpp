#pragma once

#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bollobas/scalar.hpp"

namespace bl {

// ell_p^n over R or C, or an outer-p direct sum of two spaces.
// c_0 truncations are ell_inf truncations.
class Space {
 public:
  Space() = default;
  static Space lp(double p, int dim, Field field = Field::real);
  // equal inner and outer exponents collapse to a single ell_p
  static Space sum(const Space& a, const Space& b, double outer_p);

  bool is_leaf() const { return !parts_; }
  double p() const { return p_; }
  int dim() const { return dim_; }
  Field field() const { return field_; }
  bool is_complex() const { return field_ == Field::complex; }
  bool hilbert() const { return is_leaf() && p_ == 2.0; }
  const Space& first() const;
  const Space& second() const;
  std::string str() const;

  friend bool operator==(const Space& a, const Space& b);
  friend bool operator!=(const Space& a, const Space& b) { return !(a == b); }

 private:
  double p_ = 2.0;
  int dim_ = 1;
  Field field_ = Field::real;
  std::shared_ptr<const std::pair<Space, Space>> parts_;
};

double conjugate_exponent(double p);
Space dual(const Space& s);

double lp_norm(const Vec& v, double p);
double norm(const Vec& v, const Space& s);
double dual_norm(const Vec& v, const Space& s);
cplx pair(const Vec& xstar, const Vec& x);

// the set {x* : (x, x*) in Pi(s)}
struct SupportSet {
  enum class Kind { unique, l1_face, linf_face, sphere, sum };
  Kind kind = Kind::unique;
  Space dual_space;
  // unique: the functional. l1_face: values on supp(x), zero elsewhere.
  // linf_face: conj phases of x on the maximal set.
  Vec fixed;
  // l1_face: coordinates free in the unit disc. linf_face: the maximal set.
  std::vector<int> free;
  // sum: component sets and the set of outer coefficients
  std::shared_ptr<const SupportSet> first, second, coeff;
  bool first_zero = false, second_zero = false;

  // a member of the set, steered towards hint
  Vec pick(const Vec& hint) const;
  Vec sample(std::mt19937_64& rng) const;
};

SupportSet support_states(const Vec& x, const Space& s, double face_tol = 1e-12);
Vec duality_map(const Vec& x, const Space& s);

bool is_state_pair(const Vec& x, const Vec& xstar, const Space& s, double tol = kStateTol);

// rounds coordinates onto the faces support_states sees with face_tol,
// so near-vertex points get their full set of states
Vec snap_to_faces(const Vec& x, const Space& s, double face_tol);

Vec normalized(const Vec& v, const Space& s);
Vec random_unit(const Space& s, std::mt19937_64& rng);
Vec random_vector(int dim, Field f, std::mt19937_64& rng);

double modulus_convexity(const Space& s, double eps);

}  // namespace bl
