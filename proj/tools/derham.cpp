#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "derham/derham.hpp"
#include "derham/log.hpp"
#include "derham/parse.hpp"

using namespace derham;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kBBound = 2, kInconsistent = 3 };

struct Args {
  std::string vars;
  std::vector<std::string> polys, support_polys, module;
  int max_b_degree = 20;
  int resolution_length = 0;
  std::string format = "json";
  std::string dump_dir;
  std::string presentation;
  bool timings = false;
};

// Reads [{"f": "...", "exponent": e, "annihilator": ["...", ...]}, ...].
std::vector<ProvidedLocalization> read_presentations(const std::string& path, const VarNames& v) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
  if (!j.is_array()) throw InvalidInput(path + ": expected an array of localizations");
  std::vector<ProvidedLocalization> out;
  try {
    for (const auto& e : j) {
      ProvidedLocalization p;
      p.f = parse_polynomial(e.at("f").get<std::string>(), v);
      p.exponent = e.at("exponent").get<long>();
      for (const auto& a : e.at("annihilator")) p.annihilator.push_back(parse_operator(a.get<std::string>(), v));
      out.push_back(std::move(p));
    }
  } catch (const json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
  return out;
}

ProblemSpec make_spec(const Args& a) {
  VarNames v = VarNames::from_list(a.vars);
  ProblemSpec p;
  p.n = v.n();
  p.var_names = v.names;
  for (const auto& s : a.polys) p.F.push_back(parse_polynomial(s, v));
  for (const auto& s : a.support_polys) p.G.push_back(parse_polynomial(s, v));
  if (!a.presentation.empty()) p.provided = read_presentations(a.presentation, v);
  p.options.max_b_degree = a.max_b_degree;
  p.options.resolution_length = a.resolution_length;
  p.options.dump_dir = a.dump_dir;
  p.options.timings_in_json = a.timings;
  return p;
}

void emit(const Args& a, const json& j, const std::string& text) {
  if (a.format == "text")
    std::cout << text;
  else
    std::cout << j.dump(2) << '\n';
}

int run_report(const Args& a, bool support) {
  ProblemSpec p = make_spec(a);
  ResultReport r = support ? compute_derham_support(p) : compute_derham(p);
  emit(a, to_json(r, a.timings), to_text(r));
  return kOk;
}

int run_bfunction(const Args& a) {
  VarNames v = VarNames::from_list(a.vars);
  if (a.module.empty()) throw InvalidInput("bfunction needs at least one --module relation");
  std::vector<WeylElement> rel;
  for (const auto& s : a.module) rel.push_back(parse_operator(s, v));
  DModPresentation M = DModPresentation::cyclic(v.n(), rel);
  FiltrationSpec spec{v.n()};
  ThetaPolynomial b = restriction_b_function_module(M, spec, a.max_b_degree);
  BFunctionCertificate cert = certify_b_function(M, spec, b);
  if (!cert.annihilates) throw Inconsistency("b-function failed its annihilation check");
  json j;
  j["version"] = kReportVersion;
  j["kind"] = "bfunction";
  j["b_function"] = b.to_string();
  j["integer_roots"] = b.integer_roots();
  j["certified"] = {{"annihilates", cert.annihilates}, {"minimal", cert.minimal}};
  emit(a, j, b.to_string() + "\n");
  return kOk;
}

int run_localize(const Args& a) {
  ProblemSpec p = make_spec(a);
  if (p.F.size() != 1) throw InvalidInput("localize takes exactly one --poly");
  p.validate(false);
  LocalizationCache cache;
  for (const auto& e : p.provided) cache.provide(e.f, e.exponent, e.annihilator);
  const LocalizationEntry& e = cache.get(p.F[0]);
  DModPresentation R = localize(p.F[0], cache);
  json j;
  j["version"] = kReportVersion;
  j["kind"] = "localize";
  j["exponent"] = e.s0;
  if (e.data) j["bernstein_sato"] = e.data->b.to_string();
  j["presentation"] = to_json(R);
  std::string text = "exponent " + std::to_string(e.s0) + "\n";
  for (const auto& r : R.relations) text += "  " + r[0].to_string() + "\n";
  emit(a, j, text);
  return kOk;
}

int run_mv(const Args& a) {
  ProblemSpec p = make_spec(a);
  p.validate(false);
  LocalizationCache cache;
  for (const auto& e : p.provided) cache.provide(e.f, e.exponent, e.annihilator);
  LocalizationFamily fam(p.n, p.F);
  LocalizedComplex L = p.G.empty() ? mv_complex(fam, cache) : mv_tensor_cech(fam, p.G, cache);
  json j;
  j["version"] = kReportVersion;
  j["kind"] = "mv";
  j["exponent"] = L.exponent;
  j["complex"] = to_json(L.complex);
  std::string text;
  for (int k = L.complex.lo; k <= L.complex.hi(); ++k) {
    text += "degree " + std::to_string(k) + ":";
    for (const auto& l : L.complex.at(k).generator_labels) text += " " + l;
    text += "\n";
  }
  emit(a, j, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algebraic de Rham cohomology of complements of affine varieties"};
  app.require_subcommand(1);
  Args a;

  auto common = [&](CLI::App* s, bool polys) {
    s->add_option("--vars", a.vars, "comma separated variable names, e.g. x,y")->required();
    if (polys) {
      s->add_option("--poly", a.polys, "defining polynomial of Y (repeatable)");
      s->add_option("--support-poly", a.support_polys, "defining polynomial of Z (repeatable)");
      s->add_option("--presentation", a.presentation, "JSON file of user-supplied localizations");
      s->add_option("--dump-intermediate", a.dump_dir, "directory for serialized stage output");
      s->add_option("--resolution-length", a.resolution_length, "resolution length cap (default 2n+2)");
      s->add_flag("--timings", a.timings, "include stage timings in the JSON report");
    }
    s->add_option("--max-b-degree", a.max_b_degree, "degree bound of the b-function search")
        ->default_val(20);
    s->add_option("--format", a.format, "json or text")
        ->default_val("json")
        ->check(CLI::IsMember({"json", "text"}));
  };
  auto* coh = app.add_subcommand("cohomology", "dims of H^i_dR of C^n minus Var(F)");
  auto* sup = app.add_subcommand("support", "dims of H^i with supports in Var(G)");
  auto* bf = app.add_subcommand("bfunction", "b-function of a cyclic module D/D(relations)");
  auto* loc = app.add_subcommand("localize", "presentation of the localization R_f");
  auto* mv = app.add_subcommand("mv", "localization complex of F (tensor the Cech complex of G)");
  for (auto* s : {coh, sup, loc, mv}) common(s, true);
  common(bf, false);
  bf->add_option("--module", a.module, "relation of the cyclic module (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*coh) return run_report(a, false);
    if (*sup) return run_report(a, true);
    if (*bf) return run_bfunction(a);
    if (*loc) return run_localize(a);
    if (*mv) return run_mv(a);
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const DimensionMismatch& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const BBoundExceeded& e) {
    std::cerr << "b-function bound exceeded: " << e.what() << '\n';
    return kBBound;
  } catch (const Inconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << '\n';
    return kInconsistent;
  } catch (const std::exception& e) {
    std::cerr << "internal inconsistency: " << e.what() << '\n';
    return kInconsistent;
  }
  return kInvalid;
}
