#include "bollobas/bollobas.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "bollobas/membership.hpp"
#include "bollobas/parallel.hpp"
#include "bollobas/serialize.hpp"

struct bl_operator {
  bl::Operator op;
};

namespace {

thread_local std::string g_error;

bl_status fail(bl_status s, const std::string& msg) {
  g_error = msg;
  return s;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bl::json parse(const char* text) {
  if (!text || !*text) return bl::json::object();
  return bl::json::parse(text);
}

std::string dump(const bl::json& j) { return j.dump(2); }

template <class F>
bl_status guarded(F&& f) {
  g_error.clear();
  try {
    f();
    return BL_OK;
  } catch (const bl::Error& e) {
    return fail(static_cast<bl_status>(int(e.code())), e.what());
  } catch (const bl::json::parse_error& e) {
    return fail(BL_ERR_PARSE, std::string("malformed JSON: ") + e.what());
  } catch (const bl::json::exception& e) {
    return fail(BL_ERR_PARSE, std::string("unexpected JSON shape: ") + e.what());
  } catch (const std::exception& e) {
    return fail(BL_ERR_INTERNAL, e.what());
  }
}

void need_out(const void* p) {
  if (!p) throw bl::Error(bl::ErrorCode::invalid_input, "null output pointer");
}

const bl::Operator& operator_of(const bl_operator* op) {
  if (!op) throw bl::Error(bl::ErrorCode::invalid_input, "null operator");
  return op->op;
}

std::vector<double> eps_list(const bl::json& j) {
  if (!j.contains("eps")) throw bl::Error(bl::ErrorCode::parse, "missing 'eps'");
  const bl::json& e = j.at("eps");
  std::vector<double> out;
  if (e.is_array()) {
    for (const auto& v : e) out.push_back(bl::num_from_json(v, "eps"));
  } else {
    out.push_back(bl::num_from_json(e, "eps"));
  }
  if (out.empty()) throw bl::Error(bl::ErrorCode::invalid_input, "empty epsilon grid");
  return out;
}

bl::SearchOptions search_options(const bl::json& j) {
  bl::SearchOptions o;
  o.seed = j.value("seed", std::uint64_t(0));
  o.restarts = j.value("restarts", o.restarts);
  o.iterations = j.value("iterations", o.iterations);
  return o;
}

bl::ProbeOptions probe_options(const bl::json& j) {
  bl::ProbeOptions o;
  o.seed = j.value("seed", std::uint64_t(0));
  o.restarts = j.value("restarts", o.restarts);
  o.iterations = j.value("iterations", o.iterations);
  return o;
}

bl::Mode mode_of(const bl::json& j) {
  std::string m = j.value("mode", std::string("norm"));
  if (m == "norm") return bl::Mode::norm;
  if (m == "nu") return bl::Mode::nu;
  throw bl::Error(bl::ErrorCode::parse, "mode must be 'norm' or 'nu'");
}

double outer_of(const bl::json& j, double fallback) {
  return j.contains("outer_p") ? bl::num_from_json(j.at("outer_p"), "outer_p") : fallback;
}

bl::json member(const bl::json& r) {
  using namespace bl;
  const std::string pred = r.value("predicate", std::string());
  Field field = r.value("field", std::string("real")) == "complex" ? Field::complex : Field::real;
  auto fam = [&](const char* key) {
    if (!r.contains(key)) throw Error(ErrorCode::parse, std::string("missing '") + key + "'");
    return SpaceFamily::parse(r.at(key).get<std::string>(), field);
  };
  auto spec = [&] {
    if (!r.contains("spec")) throw Error(ErrorCode::parse, "missing 'spec'");
    return sequence_from_json(r.at("spec"));
  };
  Verdict v;
  std::optional<SequenceSpec> s;
  std::optional<SpaceFamily> f;
  Mode mode = Mode::norm;
  bool functional_kind = false;
  if (pred == "diag_norm") {
    s = spec();
    f = fam("family");
    v = diag_norm_member(*s, *f);
  } else if (pred == "diag_nu") {
    s = spec();
    f = fam("family");
    mode = Mode::nu;
    v = diag_nu_member(*s, *f);
  } else if (pred == "diag_mixed") {
    v = diag_mixed_member(spec(), fam("from"), fam("to"));
  } else if (pred == "projection") {
    if (!r.contains("N")) throw Error(ErrorCode::parse, "missing 'N'");
    v = projection_member(r.at("N").get<int>(), fam("family"), mode_of(r));
  } else if (pred == "functional") {
    s = spec();
    f = fam("family");
    functional_kind = true;
    v = functional_member(*s, *f);
  } else {
    throw Error(ErrorCode::unknown_entity, "unknown predicate: " + pred);
  }
  json out = to_json(v);
  out["predicate"] = pred;
  if (r.contains("materialize") && v.outcome == Verdict::Outcome::not_member && s && f && v.witness &&
      v.witness->kind != WitnessRecipe::Kind::symbolic) {
    json rows = json::array();
    for (const auto& d : r.at("materialize")) {
      int n = d.get<int>();
      MaterializedWitness m = functional_kind ? materialize_functional(v, *s, *f, n)
                                              : materialize_diagonal(v, *s, *f, mode, n);
      rows.push_back({{"dim", n}, {"decay", jnum(m.decay)}, {"gap", jnum(m.gap)}});
    }
    out["materialized"] = rows;
  }
  return out;
}

bl::json transfer(const bl::json& r) {
  using namespace bl;
  const std::string dir = r.value("direction", std::string());
  if (dir == "lift_nu_to_norm" || dir == "norm_to_lift_nu") {
    if (!r.contains("operator")) throw Error(ErrorCode::parse, "missing 'operator'");
    Operator t = operator_from_json(r.at("operator"));
    EtaFunction eta = r.contains("eta") ? eta_from_json(r.at("eta")) : EtaFunction::identity();
    double op = outer_of(r, 1.0);
    SumTransferResult res = dir == "lift_nu_to_norm" ? lift_nu_implies_norm(t, op, eta) : norm_implies_lift_nu(t, op, eta);
    return to_json(res, eps_list(r));
  }
  auto rows = [&](const EtaFunction& e) {
    json out = json::array();
    for (double x : eps_list(r)) out.push_back({{"epsilon", jnum(x)}, {"eta", jnum(e.eval(x))}});
    return json{{"direction", dir}, {"eta", e.describe()}, {"rows", out}};
  };
  if (dir == "adjoint") {
    if (!r.contains("target_dual")) throw Error(ErrorCode::parse, "missing 'target_dual'");
    EtaFunction eta = r.contains("eta") ? eta_from_json(r.at("eta")) : EtaFunction::identity();
    return rows(adjoint_eta(eta, space_from_json(r.at("target_dual"), 2)));
  }
  if (dir == "c0_adjoint_nu") {
    EtaFunction eta = r.contains("eta") ? eta_from_json(r.at("eta")) : EtaFunction::identity();
    return rows(c0_adjoint_nu_eta(eta));
  }
  if (dir == "rank1_l1") return rows(rank1_l1_eta());
  if (dir == "psum") {
    json out = to_json(psum_counterexample(outer_of(r, 2.0), r.value("dim", 1), r.value("seed", std::uint64_t(0))));
    out["direction"] = dir;
    return out;
  }
  if (dir == "corner") {
    json out = to_json(corner_counterexample(outer_of(r, 1.0), r.value("dim", 4), r.value("seed", std::uint64_t(0))));
    out["direction"] = dir;
    return out;
  }
  throw Error(ErrorCode::unknown_entity, "unknown transfer direction: " + dir);
}

}  // namespace

extern "C" {

const char* bl_version(void) { return "1.0.0"; }

const char* bl_last_error(void) { return g_error.c_str(); }

void bl_string_free(char* s) { std::free(s); }

void bl_set_threads(int n) { bl::set_thread_count(n); }

int bl_threads(void) { return bl::thread_count(); }

bl_status bl_operator_from_json(const char* json, int dim, bl_operator** out) {
  return guarded([&] {
    need_out(out);
    if (!json) throw bl::Error(bl::ErrorCode::invalid_input, "null JSON");
    *out = new bl_operator{bl::operator_from_json(bl::json::parse(json), dim)};
  });
}

bl_status bl_operator_from_uri(const char* uri, int dim, bl_operator** out) {
  return guarded([&] {
    need_out(out);
    if (!uri) throw bl::Error(bl::ErrorCode::invalid_input, "null URI");
    *out = new bl_operator{bl::uri_operator(uri, dim)};
  });
}

void bl_operator_free(bl_operator* op) { delete op; }

bl_status bl_operator_describe(const bl_operator* op, char** out_json) {
  return guarded([&] {
    need_out(out_json);
    const bl::Operator& t = operator_of(op);
    bl::json j = {{"description", t.describe()},
                  {"from", bl::to_json(t.from())},
                  {"to", bl::to_json(t.to())},
                  {"realizable", t.realizable()},
                  {"spec", bl::to_json(t)}};
    *out_json = dup(dump(j));
  });
}

int bl_operator_domain_dim(const bl_operator* op) { return op ? op->op.from().dim() : 0; }

int bl_operator_range_dim(const bl_operator* op) { return op ? op->op.to().dim() : 0; }

bl_status bl_operator_apply(const bl_operator* op, const double* x_re, const double* x_im, int n, double* y_re,
                            double* y_im, int m) {
  return guarded([&] {
    const bl::Operator& t = operator_of(op);
    if (!x_re || !y_re) throw bl::Error(bl::ErrorCode::invalid_input, "null vector");
    if (n != t.from().dim() || m != t.to().dim()) throw bl::Error(bl::ErrorCode::dimension, "vector length mismatch");
    bl::Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = bl::cplx(x_re[i], x_im ? x_im[i] : 0.0);
    bl::Vec y = t.apply(x);
    for (int i = 0; i < m; ++i) {
      y_re[i] = y[i].real();
      if (y_im) y_im[i] = y[i].imag();
    }
  });
}

bl_status bl_norm(const bl_operator* op, const char* options_json, char** out_json) {
  return guarded([&] {
    need_out(out_json);
    const bl::Operator& t = operator_of(op);
    bl::json o = parse(options_json);
    bl::SearchOptions so = search_options(o);
    bl::json j = bl::to_json(bl::operator_norm(t, so));
    if (o.value("norming_set", false)) j["norming_set"] = bl::to_json(bl::norming_set(t, so));
    *out_json = dup(dump(j));
  });
}

bl_status bl_numerical_radius(const bl_operator* op, const char* options_json, char** out_json) {
  return guarded([&] {
    need_out(out_json);
    const bl::Operator& t = operator_of(op);
    bl::json o = parse(options_json);
    bl::SearchOptions so = search_options(o);
    bl::json j = bl::to_json(bl::numerical_radius(t, so));
    if (o.value("attaining", false)) j["attaining"] = bl::to_json(bl::nu_attaining_states(t, so));
    *out_json = dup(dump(j));
  });
}

bl_status bl_member(const char* request_json, char** out_json) {
  return guarded([&] {
    need_out(out_json);
    *out_json = dup(dump(member(parse(request_json))));
  });
}

bl_status bl_probe(const bl_operator* op, const char* request_json, char** out) {
  return guarded([&] {
    need_out(out);
    const bl::Operator& t = operator_of(op);
    bl::json r = parse(request_json);
    auto reps = bl::eta_probe(t, eps_list(r), mode_of(r), probe_options(r));
    std::string fmt = r.value("format", std::string("csv"));
    if (fmt == "csv") {
      std::string s = r.value("header", true) ? bl::probe_csv_header() + "\n" : "";
      for (const auto& rep : reps) s += bl::probe_csv_row(rep) + "\n";
      *out = dup(s);
    } else if (fmt == "json") {
      bl::json a = bl::json::array();
      for (const auto& rep : reps) a.push_back(bl::to_json(rep));
      *out = dup(dump(a));
    } else {
      throw bl::Error(bl::ErrorCode::parse, "format must be 'csv' or 'json'");
    }
  });
}

bl_status bl_validate(const bl_operator* op, const char* request_json, char** out_json) {
  return guarded([&] {
    need_out(out_json);
    const bl::Operator& t = operator_of(op);
    bl::json r = parse(request_json);
    if (!r.contains("eta")) throw bl::Error(bl::ErrorCode::parse, "missing 'eta'");
    bl::EtaFunction eta = bl::eta_from_json(r.at("eta"));
    bl::json j = bl::to_json(bl::validate_eta(t, eta, eps_list(r), mode_of(r), probe_options(r)));
    j["eta"] = eta.describe();
    *out_json = dup(dump(j));
  });
}

const char* bl_probe_csv_header(void) {
  static const std::string h = bl::probe_csv_header();
  return h.c_str();
}

bl_status bl_gallery_ids(char** out_json) {
  return guarded([&] {
    need_out(out_json);
    *out_json = dup(dump(bl::json(bl::gallery_ids())));
  });
}

bl_status bl_gallery_run(const char* id, const char* request_json, char** out_json) {
  return guarded([&] {
    need_out(out_json);
    if (!id) throw bl::Error(bl::ErrorCode::invalid_input, "null gallery id");
    bl::json r = parse(request_json);
    bl::gallery_min_dim(id);
    std::vector<int> dims;
    if (r.contains("dims"))
      for (const auto& d : r.at("dims")) dims.push_back(d.get<int>());
    if (dims.empty()) dims.push_back(8);
    bl::GalleryParams gp;
    if (r.contains("p")) gp.p = bl::num_from_json(r.at("p"), "p");
    gp.alpha = r.contains("alpha") ? bl::num_from_json(r.at("alpha"), "alpha") : gp.alpha;
    gp.ell = r.value("ell", gp.ell);
    gp.seed = r.value("seed", std::uint64_t(0));
    bl::json runs = bl::json::array();
    bool all = true;
    for (int d : dims) {
      gp.dim = d;
      bl::GalleryEntry e = bl::gallery(id, gp);
      bl::json claims = bl::json::array();
      bool ok = true;
      for (const auto& c : bl::run_claims(e)) {
        ok = ok && c.pass;
        claims.push_back(bl::to_json(c));
      }
      all = all && ok;
      runs.push_back({{"dim", d}, {"description", e.description}, {"pass", ok}, {"claims", claims}});
    }
    *out_json = dup(dump({{"id", id}, {"pass", all}, {"runs", runs}}));
  });
}

bl_status bl_transfer(const char* request_json, char** out_json) {
  return guarded([&] {
    need_out(out_json);
    *out_json = dup(dump(transfer(parse(request_json))));
  });
}

bl_status bl_moduli(const char* request_json, char** out_json) {
  return guarded([&] {
    need_out(out_json);
    bl::json r = parse(request_json);
    if (!r.contains("space")) throw bl::Error(bl::ErrorCode::parse, "missing 'space'");
    bl::Space s = bl::space_from_json(r.at("space"), 2);
    bl::json rows = bl::json::array();
    for (double e : eps_list(r))
      rows.push_back({{"epsilon", bl::jnum(e)}, {"delta", bl::jnum(bl::modulus_convexity(s, e))}});
    bl::json sp = bl::to_json(s);
    sp.erase("dim");
    *out_json = dup(dump({{"space", sp}, {"rows", rows}}));
  });
}

}  // extern "C"
