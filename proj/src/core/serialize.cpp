#include "bollobas/serialize.hpp"

#include <cmath>

namespace bl {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::parse, what); }

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where + ": missing '" + key + "'");
  return j.at(key);
}

std::string str_field(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_string()) bad(where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

Field field_from(const json& j) {
  if (!j.contains("field")) return Field::real;
  const json& f = j.at("field");
  if (f == "real") return Field::real;
  if (f == "complex") return Field::complex;
  bad("field must be 'real' or 'complex'");
}

int int_from(const json& j, const std::string& what) {
  if (!j.is_number_integer() && !(j.is_number() && j.get<double>() == std::floor(j.get<double>())))
    bad(what + " must be an integer");
  return j.get<int>();
}

Mat mat_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) bad(what + " must be a nonempty array of rows");
  const int r = int(j.size()), c = int(j[0].size());
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (!j[i].is_array() || int(j[i].size()) != c) bad(what + ": ragged rows");
    for (int k = 0; k < c; ++k) m(i, k) = scalar_from_json(j[i][k], what);
  }
  return m;
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(jscalar(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

std::string tail_name(Tail::Kind k) {
  switch (k) {
    case Tail::Kind::zero: return "zero";
    case Tail::Kind::constant: return "constant";
    case Tail::Kind::geometric: return "geometric";
    case Tail::Kind::approach: return "approach";
    case Tail::Kind::phase_drift: return "phase_drift";
    case Tail::Kind::bounded: return "bounded";
  }
  return "zero";
}

json pair_json(const std::optional<StatePair>& w) {
  if (!w) return nullptr;
  return {{"x", jvec(w->x)}, {"xstar", jvec(w->xstar)}};
}

}  // namespace

Operator uri_operator(std::string uri, int dim_override) {
  // a later dim= wins over an earlier one
  if (dim_override > 0)
    uri += std::string(uri.find('?') == std::string::npos ? "?" : "&") + "dim=" + std::to_string(dim_override);
  return gallery_from_uri(uri).op;
}

json jnum(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double num_from_json(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return kInf;
    if (s == "-inf") return -kInf;
  }
  bad(what + " must be a number");
}

json jscalar(cplx z) {
  if (z.imag() == 0.0) return jnum(z.real());
  return json::array({jnum(z.real()), jnum(z.imag())});
}

cplx scalar_from_json(const json& j, const std::string& what) {
  if (j.is_array()) {
    if (j.size() != 2) bad(what + ": complex scalars are [re, im]");
    return {num_from_json(j[0], what), num_from_json(j[1], what)};
  }
  return num_from_json(j, what);
}

json jvec(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(jscalar(v[i]));
  return a;
}

Vec vec_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array");
  Vec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[i] = scalar_from_json(j[i], what);
  return v;
}

Space space_from_json(const json& j, int dim_override) {
  if (!j.is_object()) bad("space must be an object");
  if (j.contains("sum")) {
    const json& s = j.at("sum");
    if (!s.is_array() || s.size() != 2) bad("sum needs two spaces");
    double op = num_from_json(need(j, "outer_p", "sum space"), "outer_p");
    return Space::sum(space_from_json(s[0], dim_override), space_from_json(s[1], dim_override), op);
  }
  double p = num_from_json(need(j, "p", "space"), "p");
  int dim = dim_override;
  if (j.contains("dim")) dim = dim_override > 0 ? dim_override : int_from(j.at("dim"), "dim");
  if (dim < 1) throw Error(ErrorCode::dimension, "space needs a dimension");
  if (!(p >= 1.0)) throw Error(ErrorCode::geometry, "p must lie in [1, inf]");
  return Space::lp(p, dim, field_from(j));
}

json to_json(const Space& s) {
  if (!s.is_leaf()) return {{"sum", {to_json(s.first()), to_json(s.second())}}, {"outer_p", jnum(s.p())}};
  return {{"p", jnum(s.p())}, {"dim", s.dim()}, {"field", s.is_complex() ? "complex" : "real"}};
}

SequenceSpec sequence_from_json(const json& j) {
  if (!j.is_object()) bad("sequence must be an object");
  SequenceSpec s;
  if (j.contains("prefix")) {
    if (!j.at("prefix").is_array()) bad("prefix must be an array");
    for (const auto& v : j.at("prefix")) s.prefix.push_back(scalar_from_json(v, "prefix"));
  }
  if (!j.contains("tail")) return s;
  const json& t = j.at("tail");
  const std::string kind = str_field(t, "kind", "tail");
  Tail& tl = s.tail;
  if (kind == "zero") {
    tl.kind = Tail::Kind::zero;
  } else if (kind == "constant") {
    tl.kind = Tail::Kind::constant;
    tl.c = scalar_from_json(need(t, "c", "tail"), "c");
  } else if (kind == "geometric") {
    tl.kind = Tail::Kind::geometric;
    tl.c = scalar_from_json(need(t, "c", "tail"), "c");
    tl.r = num_from_json(need(t, "r", "tail"), "r");
    if (!(std::abs(tl.r) < 1.0)) throw Error(ErrorCode::invalid_input, "geometric tails need |r| < 1");
  } else if (kind == "approach") {
    tl.kind = Tail::Kind::approach;
    tl.c = scalar_from_json(need(t, "c", "tail"), "c");
  } else if (kind == "phase_drift") {
    tl.kind = Tail::Kind::phase_drift;
    tl.theta = num_from_json(need(t, "theta", "tail"), "theta");
  } else if (kind == "bounded") {
    tl.kind = Tail::Kind::bounded;
    tl.sup_modulus = num_from_json(need(t, "sup_modulus", "tail"), "sup_modulus");
    tl.sup_attained = t.value("sup_attained", false);
    tl.unimodular_finite = t.value("unimodular_finite", true);
    tl.all_unimodular = t.value("all_unimodular", false);
    tl.off_unimodular_sup = t.contains("off_unimodular_sup") ? num_from_json(t.at("off_unimodular_sup"), "off_unimodular_sup")
                                                             : tl.sup_modulus;
    if (t.contains("unimodular_values")) {
      std::vector<cplx> u;
      for (const auto& v : t.at("unimodular_values")) u.push_back(scalar_from_json(v, "unimodular_values"));
      tl.unimodular_values = u;
    }
    if (tl.sup_attained && unimodular(tl.sup_modulus) && tl.unimodular_finite && !tl.unimodular_values)
      throw Error(ErrorCode::invalid_input, "an attained unit sup needs its unimodular_values");
  } else {
    bad("unknown tail kind: " + kind);
  }
  return s;
}

json to_json(const SequenceSpec& s) {
  json pre = json::array();
  for (auto v : s.prefix) pre.push_back(jscalar(v));
  const Tail& t = s.tail;
  json tail = {{"kind", tail_name(t.kind)}};
  switch (t.kind) {
    case Tail::Kind::zero: break;
    case Tail::Kind::constant:
    case Tail::Kind::approach: tail["c"] = jscalar(t.c); break;
    case Tail::Kind::geometric:
      tail["c"] = jscalar(t.c);
      tail["r"] = jnum(t.r);
      break;
    case Tail::Kind::phase_drift: tail["theta"] = jnum(t.theta); break;
    case Tail::Kind::bounded: {
      tail["sup_modulus"] = jnum(t.sup_modulus);
      tail["sup_attained"] = t.sup_attained;
      tail["unimodular_finite"] = t.unimodular_finite;
      tail["all_unimodular"] = t.all_unimodular;
      tail["off_unimodular_sup"] = jnum(t.off_unimodular_sup);
      if (t.unimodular_values) {
        json u = json::array();
        for (auto v : *t.unimodular_values) u.push_back(jscalar(v));
        tail["unimodular_values"] = u;
      }
      break;
    }
  }
  return {{"prefix", pre}, {"tail", tail}};
}

Operator operator_from_json(const json& j, int dim_override) {
  if (j.is_string()) return uri_operator(j.get<std::string>(), dim_override);
  const std::string kind = str_field(j, "kind", "operator");
  auto child = [&](const char* key) { return operator_from_json(need(j, key, kind), dim_override); };
  auto spaces = [&]() -> std::pair<Space, Space> {
    if (j.contains("space")) {
      Space s = space_from_json(j.at("space"), dim_override);
      return {s, s};
    }
    return {space_from_json(need(j, "from", kind), dim_override), space_from_json(need(j, "to", kind), dim_override)};
  };
  if (kind == "gallery") return uri_operator(str_field(j, "uri", kind), dim_override);
  if (kind == "dense") {
    auto [from, to] = spaces();
    return dense(mat_from_json(need(j, "matrix", kind), "matrix"), from, to);
  }
  if (kind == "diagonal") {
    auto [from, to] = spaces();
    if (j.contains("alpha")) {
      Vec a = vec_from_json(j.at("alpha"), "alpha");
      if (a.size() != from.dim()) throw Error(ErrorCode::dimension, "alpha length does not match the space");
      return diagonal(SequenceSpec::finite(std::vector<cplx>(a.data(), a.data() + a.size())), from, to);
    }
    return diagonal(sequence_from_json(need(j, "spec", kind)), from, to);
  }
  if (kind == "rank_one") {
    auto [from, to] = spaces();
    return rank_one(vec_from_json(need(j, "y", kind), "y"), vec_from_json(need(j, "f", kind), "f"), from, to);
  }
  if (kind == "functional") {
    Space s = space_from_json(need(j, "space", kind), dim_override);
    if (j.contains("f")) return functional(vec_from_json(j.at("f"), "f"), s);
    auto vals = sequence_from_json(need(j, "spec", kind)).materialize(s.dim());
    Vec f(s.dim());
    for (int i = 0; i < s.dim(); ++i) f[i] = vals[i];
    return functional(f, s);
  }
  if (kind == "adjoint") return adjoint(child("of"));
  if (kind == "lift") return lift(child("of"), num_from_json(need(j, "outer_p", kind), "outer_p"));
  if (kind == "delift") {
    Operator s = child("of");
    if (j.contains("w") || j.contains("z"))
      return delift(s, space_from_json(need(j, "w", kind), dim_override), space_from_json(need(j, "z", kind), dim_override));
    return delift(s);
  }
  if (kind == "direct_sum") {
    const json& parts = need(j, "parts", kind);
    if (!parts.is_array() || parts.size() != 2) bad("direct_sum needs two parts");
    return direct_sum(operator_from_json(parts[0], dim_override), operator_from_json(parts[1], dim_override),
                      num_from_json(need(j, "outer_p", kind), "outer_p"));
  }
  if (kind == "scale") return scale(scalar_from_json(need(j, "factor", kind), "factor"), child("of"));
  throw Error(ErrorCode::unknown_entity, "unknown operator kind: " + kind);
}

json to_json(const Operator& t) {
  const OpNode& n = t.node();
  json j;
  switch (n.kind) {
    case OpKind::dense:
      j = {{"kind", "dense"}, {"from", to_json(n.from)}, {"to", to_json(n.to)}, {"matrix", mat_to_json(n.dense)}};
      break;
    case OpKind::diagonal:
      j = {{"kind", "diagonal"}, {"from", to_json(n.from)}, {"to", to_json(n.to)}, {"spec", to_json(n.spec)}};
      break;
    case OpKind::rank_one:
      j = {{"kind", "rank_one"}, {"from", to_json(n.from)}, {"to", to_json(n.to)}, {"y", jvec(n.y)}, {"f", jvec(n.f)}};
      break;
    case OpKind::adjoint: j = {{"kind", "adjoint"}, {"of", to_json(n.children[0])}}; break;
    case OpKind::lift: j = {{"kind", "lift"}, {"outer_p", jnum(n.outer_p)}, {"of", to_json(n.children[0])}}; break;
    case OpKind::delift:
      j = {{"kind", "delift"}, {"w", to_json(n.from)}, {"z", to_json(n.to)}, {"of", to_json(n.children[0])}};
      break;
    case OpKind::direct_sum:
      j = {{"kind", "direct_sum"},
           {"outer_p", jnum(n.outer_p)},
           {"parts", {to_json(n.children[0]), to_json(n.children[1])}}};
      break;
    case OpKind::scale: j = {{"kind", "scale"}, {"factor", jscalar(n.factor)}, {"of", to_json(n.children[0])}}; break;
  }
  return j;
}

EtaFunction eta_from_json(const json& j) {
  if (j.is_string()) {
    if (j == "eps" || j == "epsilon") return EtaFunction::identity();
    bad("unknown eta shorthand: " + j.get<std::string>());
  }
  if (j.is_number()) return EtaFunction::constant(j.get<double>());
  const std::string kind = str_field(j, "kind", "eta");
  if (kind == "epsilon") return EtaFunction::identity();
  if (kind == "constant") return EtaFunction::constant(num_from_json(need(j, "value", kind), "value"));
  if (kind == "scale") return eta_from_json(need(j, "of", kind)).scaled(num_from_json(need(j, "by", kind), "by"));
  if (kind == "power") return eta_from_json(need(j, "of", kind)).pow(num_from_json(need(j, "k", kind), "k"));
  if (kind == "min") {
    std::vector<EtaFunction> parts;
    for (const auto& p : need(j, "parts", kind)) parts.push_back(eta_from_json(p));
    if (parts.empty()) bad("min needs parts");
    return EtaFunction::min(parts);
  }
  if (kind == "compose") return eta_from_json(need(j, "outer", kind)).of(eta_from_json(need(j, "inner", kind)));
  if (kind == "modulus") return EtaFunction::modulus(space_from_json(need(j, "space", kind), 2));
  if (kind == "hilbert_exact") return EtaFunction::hilbert_exact(num_from_json(need(j, "sigma2", kind), "sigma2"));
  bad("unknown eta kind: " + kind);
}

json to_json(const NormResult& r) {
  return {{"value", jnum(r.value)},
          {"certainty", to_string(r.certainty)},
          {"method", r.method},
          {"witness", r.witness ? jvec(*r.witness) : json(nullptr)}};
}

json to_json(const NuResult& r) {
  return {{"value", jnum(r.value)},
          {"upper", jnum(r.upper)},
          {"certainty", to_string(r.certainty)},
          {"method", r.method},
          {"witness", pair_json(r.witness)}};
}

json to_json(const NormingSet& n) {
  json j = {{"kind", to_string(n.kind)}, {"complete", n.complete}, {"J", n.J}};
  if (n.sigma.size()) j["sigma"] = jvec(n.sigma);
  json pts = json::array();
  for (const auto& p : n.points) pts.push_back(jvec(p));
  j["points"] = pts;
  return j;
}

json to_json(const NuAttaining& a) {
  json j = {{"kind", to_string(a.kind)}, {"complete", a.complete}, {"nu", jnum(a.nu)}, {"classes", a.classes}};
  if (a.kind == NuAttaining::Kind::l1_vertex || a.kind == NuAttaining::Kind::lift_rank_one) j["column"] = a.column;
  if (a.kind == NuAttaining::Kind::lift_states || a.kind == NuAttaining::Kind::corner) {
    j["outer_p"] = jnum(a.outer_p);
    j["split"] = a.split;
  }
  json bases = json::array();
  for (const auto& b : a.bases) bases.push_back(b.cols());
  j["eigenspace_dims"] = bases;
  j["samples"] = a.samples.size();
  return j;
}

json to_json(const ProbeReport& r) {
  return {{"epsilon", jnum(r.epsilon)},
          {"eta_hat", jnum(r.eta_hat)},
          {"slack", jnum(r.slack)},
          {"distance", jnum(r.distance)},
          {"dim", r.dim},
          {"seed", r.seed},
          {"mode", to_string(r.mode)},
          {"status", to_string(r.status)},
          {"restarts", r.restarts},
          {"iterations", r.iterations},
          {"x", r.x ? jvec(*r.x) : json(nullptr)},
          {"xstar", r.xstar ? jvec(*r.xstar) : json(nullptr)}};
}

json to_json(const ValidationReport& v) {
  json rows = json::array();
  for (const auto& r : v.rows)
    rows.push_back({{"epsilon", jnum(r.epsilon)}, {"eta", jnum(r.eta)}, {"pass", r.pass}, {"probe", to_json(r.probe)}});
  return {{"pass", v.pass}, {"rows", rows}};
}

json to_json(const SumTransferResult& r, const std::vector<double>& eps) {
  json rows = json::array();
  for (double e : eps) rows.push_back({{"epsilon", jnum(e)}, {"eta", jnum(r.eta.eval(e))}});
  return {{"direction", to_string(r.direction)},
          {"outer_p", jnum(r.outer_p)},
          {"eta", r.eta.describe()},
          {"hypotheses_checked", r.hypotheses_checked},
          {"rows", rows}};
}

json to_json(const PsumReport& r) {
  return {{"outer_p", jnum(r.outer_p)}, {"dim", r.dim},           {"nu", jnum(r.nu)},
          {"search_value", jnum(r.search_value)}, {"margin", jnum(r.margin)}, {"attains_one", r.attains_one},
          {"trace", r.trace}};
}

json to_json(const CornerReport& r) {
  json reps = json::array();
  for (const auto& c : r.repairs)
    reps.push_back({{"epsilon", jnum(c.epsilon)},
                    {"trials", c.trials},
                    {"worst_dx", jnum(c.worst_dx)},
                    {"worst_dxstar", jnum(c.worst_dxstar)},
                    {"bound_dx", jnum(c.bound_dx)},
                    {"bound_dxstar", jnum(c.bound_dxstar)},
                    {"states_ok", c.states_ok},
                    {"pass", c.pass}});
  return {{"outer_p", jnum(r.outer_p)},
          {"dim", r.dim},
          {"nu", jnum(r.nu)},
          {"nu_attained", r.nu_attained},
          {"witness", pair_json(r.witness)},
          {"delift_zero", r.delift_zero},
          {"repairs", reps},
          {"pass", r.pass}};
}

json to_json(const ClaimResult& c) { return {{"claim", c.name}, {"pass", c.pass}, {"detail", c.detail}}; }

}  // namespace bl
