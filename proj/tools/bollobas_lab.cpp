// bollobas-lab: command-line front end over the C interface.
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "bollobas/bollobas.h"

using nlohmann::json;

namespace {

struct Failure {
  bl_status status;
  std::string message;
};

int exit_code(bl_status s) {
  switch (s) {
    case BL_OK: return 0;
    case BL_ERR_PARSE: return 2;
    case BL_ERR_GEOMETRY: return 3;
    case BL_ERR_UNKNOWN: return 4;
    case BL_ERR_CLAIM: return 5;
    default: return 1;
  }
}

void check(bl_status s) {
  if (s != BL_OK) throw Failure{s, bl_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  bl_string_free(s);
  return out;
}

struct OpHandle {
  bl_operator* p = nullptr;
  ~OpHandle() { bl_operator_free(p); }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{BL_ERR_PARSE, "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// a gallery URI, inline JSON, or a path to a JSON file
std::string source_text(const std::string& src) {
  if (src.rfind("gallery:", 0) == 0) return json(src).dump();
  if (!src.empty() && (src[0] == '{' || src[0] == '[')) return src;
  return read_file(src);
}

void load(OpHandle& h, const std::string& src, int dim) {
  bl_operator_free(h.p);
  h.p = nullptr;
  check(bl_operator_from_json(source_text(src).c_str(), dim, &h.p));
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      size_t used = 0;
      double v = item == "inf" ? HUGE_VAL : std::stod(item, &used);
      if (item != "inf" && used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Failure{BL_ERR_PARSE, std::string("bad ") + what + " entry: " + item};
    }
  }
  return out;
}

std::vector<int> parse_dims(const std::string& s) {
  std::vector<int> out;
  for (double d : parse_list(s, "dims")) {
    if (d != double(int(d)) || d < 2) throw Failure{BL_ERR_PARSE, "dims must be whole numbers >= 2"};
    out.push_back(int(d));
  }
  return out;
}

struct Common {
  std::string dims, eps, budget, out, format;
  std::uint64_t seed = 0;
  int threads = 0;
};

std::vector<std::pair<CLI::App*, std::string>> default_formats;

void add_common(CLI::App* c, Common& o, const std::string& default_format) {
  default_formats.emplace_back(c, default_format);
  c->add_option("--dims", o.dims, "comma-separated dimensions");
  c->add_option("--eps", o.eps, "comma-separated epsilon grid");
  c->add_option("--seed", o.seed, "random seed");
  c->add_option("--budget", o.budget, "restarts[,iterations]");
  c->add_option("--out", o.out, "write the report here instead of stdout");
  c->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv", "text"}));
  c->add_option("--threads", o.threads, "worker threads (default BOLLOBAS_LAB_THREADS)");
}

void apply_budget(const Common& o, json& req) {
  req["seed"] = o.seed;
  if (o.budget.empty()) return;
  auto b = parse_list(o.budget, "budget");
  if (b.empty() || b.size() > 2) throw Failure{BL_ERR_PARSE, "budget is restarts[,iterations]"};
  req["restarts"] = int(b[0]);
  if (b.size() == 2) req["iterations"] = int(b[1]);
}

void emit(const Common& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Failure{BL_ERR_INVALID, "cannot write " + o.out};
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string csv_field(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

int run_value(const std::string& src, const Common& o, bool nu, bool extra) {
  std::vector<int> dims = o.dims.empty() ? std::vector<int>{0} : parse_dims(o.dims);
  json req;
  apply_budget(o, req);
  req[nu ? "attaining" : "norming_set"] = extra;
  json rows = json::array();
  for (int d : dims) {
    OpHandle h;
    load(h, src, d);
    char* out = nullptr;
    check(nu ? bl_numerical_radius(h.p, req.dump().c_str(), &out) : bl_norm(h.p, req.dump().c_str(), &out));
    json r = json::parse(take(out));
    r["dim"] = bl_operator_domain_dim(h.p);
    rows.push_back(r);
  }
  if (o.format == "csv") {
    std::string s = nu ? "dim,value,upper,certainty,method\n" : "dim,value,certainty,method\n";
    for (const auto& r : rows) {
      s += r["dim"].dump() + "," + csv_field(r["value"]) + ",";
      if (nu) s += csv_field(r["upper"]) + ",";
      s += csv_field(r["certainty"]) + "," + csv_field(r["method"]) + "\n";
    }
    emit(o, s);
  } else {
    emit(o, (rows.size() == 1 ? rows[0] : rows).dump(2));
  }
  return 0;
}

int run_probe(const std::string& src, const Common& o, const std::string& mode) {
  if (o.eps.empty()) throw Failure{BL_ERR_PARSE, "probe needs --eps"};
  std::vector<int> dims = o.dims.empty() ? std::vector<int>{0} : parse_dims(o.dims);
  json req = {{"eps", parse_list(o.eps, "eps")}, {"mode", mode}, {"format", o.format == "csv" ? "csv" : "json"}};
  apply_budget(o, req);
  std::string csv;
  json all = json::array();
  bool first = true;
  for (int d : dims) {
    OpHandle h;
    load(h, src, d);
    req["header"] = first;
    first = false;
    char* out = nullptr;
    check(bl_probe(h.p, req.dump().c_str(), &out));
    std::string text = take(out);
    if (o.format == "csv") {
      csv += text;
    } else {
      for (auto& r : json::parse(text)) all.push_back(r);
    }
  }
  emit(o, o.format == "csv" ? csv : all.dump(2));
  return 0;
}

int run_gallery(const std::string& id, const Common& o, const std::string& p, double alpha, int ell) {
  json req = {{"seed", o.seed}, {"alpha", alpha}, {"ell", ell}};
  if (!o.dims.empty()) req["dims"] = parse_dims(o.dims);
  if (!p.empty()) req["p"] = p == "inf" ? json("inf") : json(parse_list(p, "p").at(0));
  char* out = nullptr;
  check(bl_gallery_run(id.c_str(), req.dump().c_str(), &out));
  json r = json::parse(take(out));
  if (o.format == "json") {
    emit(o, r.dump(2));
  } else if (o.format == "csv") {
    std::string s = "id,dim,claim,pass,detail\n";
    for (const auto& run : r["runs"])
      for (const auto& c : run["claims"])
        s += id + "," + run["dim"].dump() + "," + csv_field(c["claim"]) + "," + (c["pass"].get<bool>() ? "pass" : "FAIL") +
             "," + csv_field(c["detail"]) + "\n";
    emit(o, s);
  } else {
    std::ostringstream s;
    for (const auto& run : r["runs"]) {
      s << id << " dim " << run["dim"].get<int>() << ": " << run["description"].get<std::string>() << "\n";
      for (const auto& c : run["claims"])
        s << "  [" << (c["pass"].get<bool>() ? "pass" : "FAIL") << "] " << c["claim"].get<std::string>() << "  ("
          << c["detail"].get<std::string>() << ")\n";
    }
    s << (r["pass"].get<bool>() ? "all claims pass" : "some claims FAIL") << "\n";
    emit(o, s.str());
  }
  return r["pass"].get<bool>() ? 0 : exit_code(BL_ERR_CLAIM);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bollobas lab: norms, numerical radii, membership verdicts and eta probes"};
  app.require_subcommand(1);

  Common co;
  std::string source, id, mode = "norm", p, predicate, spec, family, from, to, field = "real", direction, eta,
                          outer = "1", request;
  bool extra = false;
  double alpha = 1.0;
  int ell = 2, N = 0;

  auto* norm = app.add_subcommand("norm", "operator norm with its certainty label");
  norm->add_option("source", source, "gallery URI, JSON file or inline JSON")->required();
  norm->add_flag("--norming-set", extra, "also describe the norming set");
  add_common(norm, co, "json");

  auto* nu = app.add_subcommand("nu", "numerical radius with its certainty label");
  nu->add_option("source", source, "gallery URI, JSON file or inline JSON")->required();
  nu->add_flag("--attaining", extra, "also describe the attaining states");
  add_common(nu, co, "json");

  auto* member = app.add_subcommand("member", "membership verdicts for diagonals, projections and functionals");
  member->add_option("request", request, "request JSON file or inline JSON");
  member->add_option("--predicate", predicate, "diag_norm, diag_nu, diag_mixed, projection or functional");
  member->add_option("--spec", spec, "sequence JSON");
  member->add_option("--family", family, "c0, linf, l1, l2, lp:x");
  member->add_option("--from", from, "domain family for diag_mixed");
  member->add_option("--to", to, "range family for diag_mixed");
  member->add_option("--N", N, "projection rank");
  member->add_option("--mode", mode, "norm or nu");
  member->add_option("--field", field, "real or complex");
  add_common(member, co, "json");

  auto* probe = app.add_subcommand("probe", "eta-epsilon curves, one CSV row per (dim, eps)");
  probe->add_option("source", source, "gallery URI, JSON file or inline JSON")->required();
  probe->add_option("--mode", mode, "norm or nu");
  add_common(probe, co, "csv");

  auto* gallery = app.add_subcommand("gallery", "run the claim suite of a gallery entry");
  gallery->add_option("id", id, "gallery id, e.g. G-BLOCK")->required();
  gallery->add_option("--p", p, "inner exponent for G-BLOCK, outer exponent for G-CORNER");
  gallery->add_option("--alpha", alpha, "G-SKEW trailing value");
  gallery->add_option("--ell", ell, "G-SKEW trailing block size");
  add_common(gallery, co, "text");

  auto* transfer = app.add_subcommand("transfer", "eta transfer formulas and the sum counterexamples");
  transfer->add_option("request", request, "request JSON file or inline JSON");
  transfer->add_option("--direction", direction,
                       "lift_nu_to_norm, norm_to_lift_nu, adjoint, c0_adjoint_nu, rank1_l1, psum or corner");
  transfer->add_option("--operator", source, "gallery URI, JSON file or inline JSON");
  transfer->add_option("--outer-p", outer, "1, inf, or the p-sum exponent");
  transfer->add_option("--eta", eta, "eta JSON, default eps");
  add_common(transfer, co, "json");

  auto* moduli = app.add_subcommand("moduli", "moduli of convexity of ell_p");
  moduli->add_option("--p", p, "exponent")->required();
  moduli->add_option("--field", field, "real or complex");
  add_common(moduli, co, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (co.format.empty())
    for (const auto& [c, f] : default_formats)
      if (c->parsed()) co.format = f;

  try {
    if (co.threads > 0) bl_set_threads(co.threads);
    if (*norm) return run_value(source, co, false, extra);
    if (*nu) return run_value(source, co, true, extra);
    if (*probe) return run_probe(source, co, mode);
    if (*gallery) return run_gallery(id, co, p, alpha, ell);
    if (*member) {
      json req = request.empty() ? json::object() : json::parse(source_text(request));
      if (!predicate.empty()) req["predicate"] = predicate;
      if (!spec.empty()) req["spec"] = json::parse(source_text(spec));
      if (!family.empty()) req["family"] = family;
      if (!from.empty()) req["from"] = from;
      if (!to.empty()) req["to"] = to;
      if (N > 0) req["N"] = N;
      if (member->count("--mode")) req["mode"] = mode;
      if (member->count("--field")) req["field"] = field;
      if (!co.dims.empty()) req["materialize"] = parse_dims(co.dims);
      char* out = nullptr;
      check(bl_member(req.dump().c_str(), &out));
      emit(co, take(out));
      return 0;
    }
    if (*transfer) {
      json req = request.empty() ? json::object() : json::parse(source_text(request));
      if (!direction.empty()) req["direction"] = direction;
      if (!source.empty()) req["operator"] = json::parse(source_text(source));
      if (transfer->count("--outer-p")) req["outer_p"] = outer == "inf" ? json("inf") : json(parse_list(outer, "outer-p").at(0));
      if (!eta.empty()) req["eta"] = json::parse(eta);
      if (!co.eps.empty()) req["eps"] = parse_list(co.eps, "eps");
      if (!req.contains("eps")) req["eps"] = {0.1, 0.2, 0.5};
      if (!co.dims.empty()) req["dim"] = parse_dims(co.dims).at(0);
      req["seed"] = co.seed;
      char* out = nullptr;
      check(bl_transfer(req.dump().c_str(), &out));
      std::string text = take(out);
      emit(co, text);
      json r = json::parse(text);
      if (r.contains("pass") && !r["pass"].get<bool>()) return exit_code(BL_ERR_CLAIM);
      return 0;
    }
    if (*moduli) {
      json req = {{"space", {{"p", p == "inf" ? json("inf") : json(parse_list(p, "p").at(0))}, {"field", field}}},
                  {"eps", co.eps.empty() ? std::vector<double>{0.25, 0.5, 1.0, 1.5, 2.0} : parse_list(co.eps, "eps")}};
      char* out = nullptr;
      check(bl_moduli(req.dump().c_str(), &out));
      json r = json::parse(take(out));
      if (co.format == "csv") {
        std::string s = "epsilon,delta\n";
        for (const auto& row : r["rows"]) s += csv_field(row["epsilon"]) + "," + csv_field(row["delta"]) + "\n";
        emit(co, s);
      } else {
        emit(co, r.dump(2));
      }
      return 0;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return exit_code(f.status);
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
