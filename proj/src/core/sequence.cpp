#include "bollobas/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bl {

SequenceSpec SequenceSpec::finite(std::vector<cplx> values) {
  SequenceSpec s;
  s.prefix = std::move(values);
  return s;
}

bool SequenceSpec::materializable() const { return tail.kind != Tail::Kind::bounded; }

bool SequenceSpec::real() const {
  for (auto v : prefix)
    if (v.imag() != 0.0) return false;
  switch (tail.kind) {
    case Tail::Kind::zero:
      return true;
    case Tail::Kind::constant:
    case Tail::Kind::approach:
      return tail.c.imag() == 0.0;
    case Tail::Kind::geometric:
      return tail.c.imag() == 0.0;
    case Tail::Kind::phase_drift:
      return false;
    case Tail::Kind::bounded:
      if (tail.unimodular_values)
        for (auto v : *tail.unimodular_values)
          if (v.imag() != 0.0) return false;
      return tail.unimodular_values.has_value() || !tail.sup_attained;
  }
  return false;
}

cplx SequenceSpec::at(int k) const {
  if (k < 1) throw Error(ErrorCode::invalid_input, "sequence index starts at 1");
  if (k <= int(prefix.size())) return prefix[k - 1];
  switch (tail.kind) {
    case Tail::Kind::zero:
      return 0.0;
    case Tail::Kind::constant:
      return tail.c;
    case Tail::Kind::geometric:
      return tail.c * std::pow(tail.r, double(k));
    case Tail::Kind::approach:
      return tail.c * (1.0 - 1.0 / double(k));
    case Tail::Kind::phase_drift:
      return std::polar(1.0, tail.theta / double(k));
    case Tail::Kind::bounded:
      break;
  }
  throw Error(ErrorCode::not_realizable, "bounded tail has no materialization rule");
}

std::vector<cplx> SequenceSpec::materialize(int n) const {
  std::vector<cplx> out(n);
  for (int k = 1; k <= n; ++k) out[k - 1] = at(k);
  return out;
}

std::vector<cplx> distinct_values(const std::vector<cplx>& v, double tol) {
  std::vector<cplx> out;
  for (auto z : v) {
    bool seen = false;
    for (auto w : out)
      if (std::abs(z - w) <= tol) seen = true;
    if (!seen) out.push_back(z);
  }
  return out;
}

JInfo SequenceSpec::analyze() const {
  JInfo info;
  const int N = int(prefix.size());
  bool prefix_all = true;
  std::vector<cplx> jvals;
  double off = 0.0;
  bool off_attained = true;
  bool any_off = false;
  double sup = 0.0;
  for (int k = 1; k <= N; ++k) {
    cplx a = prefix[k - 1];
    sup = std::max(sup, std::abs(a));
    if (unimodular(a)) {
      info.prefix_indices.push_back(k);
      jvals.push_back(a);
    } else {
      prefix_all = false;
      any_off = true;
      off = std::max(off, std::abs(a));
    }
  }
  bool tail_all = false;
  double tail_sup = 0.0;
  bool tail_sup_attained = true;
  auto merge_off = [&](double v, bool attained) {
    any_off = true;
    if (v > off) {
      off = v;
      off_attained = attained;
    } else if (v == off && attained) {
      off_attained = true;
    }
  };
  switch (tail.kind) {
    case Tail::Kind::zero:
      merge_off(0.0, true);
      break;
    case Tail::Kind::constant:
      tail_sup = std::abs(tail.c);
      if (unimodular(tail.c)) {
        tail_all = info.tail_in_j = true;
        jvals.push_back(tail.c);
      } else {
        merge_off(std::abs(tail.c), true);
      }
      break;
    case Tail::Kind::geometric:
      tail_sup = std::abs(tail.c) * std::pow(std::abs(tail.r), double(N + 1));
      merge_off(tail_sup, true);
      break;
    case Tail::Kind::approach:
      tail_sup = std::abs(tail.c);
      tail_sup_attained = tail_sup == 0.0;
      merge_off(tail_sup, tail_sup_attained);
      break;
    case Tail::Kind::phase_drift:
      tail_sup = 1.0;
      tail_all = info.tail_in_j = true;
      info.phases_finite = false;
      break;
    case Tail::Kind::bounded:
      tail_sup = tail.sup_modulus;
      tail_sup_attained = tail.sup_attained;
      info.tail_in_j = tail.all_unimodular || (tail.sup_attained && unimodular(tail.sup_modulus));
      tail_all = tail.all_unimodular;
      if (info.tail_in_j) {
        if (!tail.unimodular_finite) {
          info.phases_finite = false;
        } else if (tail.unimodular_values) {
          for (auto v : *tail.unimodular_values) jvals.push_back(v);
        } else {
          info.phases_finite = false;
        }
      }
      if (!tail_all) {
        bool att = !(tail.off_unimodular_sup == tail.sup_modulus && !tail.sup_attained);
        merge_off(tail.off_unimodular_sup, att);
      }
      break;
  }
  info.sup_modulus = std::max(sup, tail_sup);
  info.sup_attained = sup >= tail_sup || tail_sup_attained;
  info.empty = info.prefix_indices.empty() && !info.tail_in_j;
  info.all = prefix_all && tail_all;
  info.sup_off_j = any_off ? off : 0.0;
  info.sup_off_j_attained = off_attained;
  if (info.phases_finite) info.phases = distinct_values(jvals);
  return info;
}

double SequenceSpec::p_sum(double p) const {
  double acc = 0.0;
  for (auto v : prefix) acc += std::pow(std::abs(v), p);
  const int N = int(prefix.size());
  switch (tail.kind) {
    case Tail::Kind::zero:
      return acc;
    case Tail::Kind::geometric: {
      if (tail.c == 0.0 || tail.r == 0.0) return acc;
      double q = std::pow(std::abs(tail.r), p);
      return acc + std::pow(std::abs(tail.c), p) * std::pow(q, double(N + 1)) / (1.0 - q);
    }
    case Tail::Kind::constant:
    case Tail::Kind::approach:
      return tail.c == 0.0 ? acc : kInf;
    case Tail::Kind::phase_drift:
      return kInf;
    case Tail::Kind::bounded:
      return tail.sup_modulus == 0.0 ? acc : kInf;
  }
  return kInf;
}

bool SequenceSpec::finitely_supported() const {
  switch (tail.kind) {
    case Tail::Kind::zero:
      return true;
    case Tail::Kind::constant:
    case Tail::Kind::approach:
    case Tail::Kind::geometric:
      return tail.c == 0.0 || (tail.kind == Tail::Kind::geometric && tail.r == 0.0);
    case Tail::Kind::phase_drift:
      return false;
    case Tail::Kind::bounded:
      return tail.sup_modulus == 0.0;
  }
  return false;
}

std::string SequenceSpec::describe() const {
  std::ostringstream os;
  os << "prefix(" << prefix.size() << ") tail=";
  switch (tail.kind) {
    case Tail::Kind::zero: os << "zero"; break;
    case Tail::Kind::constant: os << "constant" << tail.c; break;
    case Tail::Kind::geometric: os << "geometric" << tail.c << "*" << tail.r << "^k"; break;
    case Tail::Kind::approach: os << "approach" << tail.c; break;
    case Tail::Kind::phase_drift: os << "phase_drift(" << tail.theta << ")"; break;
    case Tail::Kind::bounded: os << "bounded(sup " << tail.sup_modulus << ")"; break;
  }
  return os.str();
}

}  // namespace bl
