#include "derham/derham.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "derham/log.hpp"
#include "derham/parse.hpp"

namespace derham {

void ProblemSpec::validate(bool support) const {
  if (n < 1) throw InvalidInput("n must be at least 1");
  if (n + 3 > kMaxVars) throw InvalidInput("at most " + std::to_string(kMaxVars - 3) + " variables");
  if (!var_names.empty() && static_cast<int>(var_names.size()) != n)
    throw InvalidInput("variable names do not match n");
  if (F.empty()) throw InvalidInput("F must be nonempty; use F = {1} for an empty Y");
  for (const auto& f : F)
    if (f.is_zero()) throw InvalidInput("F contains the zero polynomial");
  if (support) {
    if (G.empty()) throw InvalidInput("G must be nonempty");
    for (const auto& g : G)
      if (g.is_zero()) throw InvalidInput("G contains the zero polynomial");
  }
  if (options.max_b_degree < 1) throw InvalidInput("max b-degree must be positive");
}

long ResultReport::euler_characteristic() const {
  long chi = 0;
  for (auto [i, d] : dims) chi += (i % 2 ? -d : d);
  return chi;
}

std::vector<long> ResultReport::tuple(int length) const {
  int last = -1;
  for (auto [i, d] : dims)
    if (d != 0) last = std::max(last, i);
  int len = length > 0 ? length : last + 1;
  std::vector<long> out(len, 0);
  for (auto [i, d] : dims)
    if (i >= 0 && i < len) out[i] = d;
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

// Runs one stage, records its time and prefixes errors with the stage name.
template <class Fn>
auto stage(const std::string& name, ResultReport& rep, Fn&& fn) {
  log_info("stage " + name);
  auto t0 = Clock::now();
  auto done = [&] {
    rep.timings[name] = std::chrono::duration<double>(Clock::now() - t0).count();
  };
  try {
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      done();
    } else {
      auto v = fn();
      done();
      return v;
    }
  } catch (const ParseError& e) {
    throw ParseError(name + ": " + e.what());
  } catch (const InvalidInput& e) {
    throw InvalidInput(name + ": " + e.what());
  } catch (const BBoundExceeded& e) {
    throw BBoundExceeded(name + ": " + e.what());
  } catch (const Inconsistency& e) {
    throw Inconsistency(name + ": " + e.what());
  }
}

void dump(const std::string& dir, const std::string& file, const nlohmann::json& j) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / file);
  if (!out) throw InvalidInput("cannot write " + file + " under " + dir);
  out << j.dump(2) << '\n';
}

ResultReport run(const ProblemSpec& spec, bool support) {
  spec.validate(support);
  const int n = spec.n;
  const FiltrationSpec V{n};
  const int length = spec.options.resolution_length > 0 ? spec.options.resolution_length : 2 * n + 2;
  const std::string& dir = spec.options.dump_dir;

  ResultReport rep;
  rep.n = n;
  rep.r = static_cast<int>(spec.F.size());
  rep.s = support ? static_cast<int>(spec.G.size()) : 0;
  rep.support = support;

  LocalizationCache cache;
  for (const auto& p : spec.provided) cache.provide(p.f, p.exponent, p.annihilator);

  LocalizedComplex L = stage("localize", rep, [&] {
    LocalizationFamily fam(n, spec.F);
    return support ? mv_tensor_cech(fam, spec.G, cache) : mv_complex(fam, cache);
  });
  rep.exponent = L.exponent;
  dump(dir, "01_localization_complex.json", to_json(L.complex));

  ChainComplexPres C = stage("fourier", rep, [&] { return fourier_complex(L.complex); });
  dump(dir, "02_fourier_complex.json", to_json(C));

  TwistedComplex tw = stage("strict", rep, [&] { return v_strict_complex(C, V, length); });
  rep.resolutions_complete = tw.resolutions_complete;
  rep.total_lo = tw.total.lo;
  for (const auto& m : tw.total.modules) rep.total_ranks.push_back(m.rank);
  dump(dir, "03_strict_total_complex.json", to_json(tw.total));

  stage("b-function", rep, [&] {
    rep.b_function = UniPoly::constant(1);
    for (std::size_t s = 0; s < tw.summands.size(); ++s) {
      SummandReport sr;
      sr.column = tw.column[s];
      sr.label = tw.summands[s].generator_labels.empty() ? "" : tw.summands[s].generator_labels[0];
      for (int q = 0; q >= tw.resolutions[s].lo; --q) sr.resolution_ranks.push_back(tw.resolutions[s].at(q).rank);
      sr.shift_constant = tw.shift_constant[s];
      ThetaPolynomial b0 = restriction_b_function_module(tw.summands[s], V, spec.options.max_b_degree);
      sr.b = b0.shifted(-sr.shift_constant);
      sr.window = integer_root_window(sr.b);
      rep.window = hull(rep.window, sr.window);
      rep.b_function = lcm(rep.b_function, sr.b);
      rep.summands.push_back(std::move(sr));
    }
  });

  TruncatedComplex T = stage("truncate", rep, [&] { return omega_tensor_truncate(tw.total, rep.window); });
  dump(dir, "04_truncated_complex.json", to_json(T));

  std::map<int, long> raw = stage("cohomology", rep, [&] { return cohomology_dims(T); });

  // Degree t of the total complex carries H^{t+n}.
  int top = std::max(2 * n, n + rep.r + rep.s - 1);
  for (int i = 0; i <= top; ++i) rep.dims[i] = 0;
  for (auto [t, d] : raw) {
    if (d == 0) continue;
    int i = t + n;
    if (i < 0 || i > top)
      throw Inconsistency("cohomology: nonzero dimension " + std::to_string(d) + " at degree " +
                          std::to_string(i) + " outside [0, " + std::to_string(top) + "]");
    rep.dims[i] = d;
  }
  for (auto [i, d] : rep.dims)
    if (!support && i >= n + rep.r && d != 0)
      throw Inconsistency("cohomology: vanishing bound violated at degree " + std::to_string(i));
  return rep;
}

std::string window_text(const TruncationWindow& w) {
  return w.empty() ? "empty" : "[" + std::to_string(w.k0) + ", " + std::to_string(w.k1) + "]";
}

}  // namespace

ResultReport compute_derham(const ProblemSpec& spec) { return run(spec, false); }
ResultReport compute_derham_support(const ProblemSpec& spec) { return run(spec, true); }

nlohmann::json to_json(const ResultReport& r, bool with_timings) {
  using nlohmann::json;
  json j;
  j["version"] = kReportVersion;
  j["kind"] = r.support ? "support" : "cohomology";
  j["n"] = r.n;
  j["r"] = r.r;
  j["s"] = r.s;
  json dims = json::object();
  for (auto [i, d] : r.dims) dims[std::to_string(i)] = d;
  j["dims"] = dims;
  j["euler_characteristic"] = r.euler_characteristic();
  j["b_function"] = r.b_function.to_string();
  j["window"] = r.window.empty() ? json(nullptr) : json::array({r.window.k0, r.window.k1});
  j["localization_exponent"] = r.exponent;
  json sums = json::array();
  for (const auto& s : r.summands) {
    sums.push_back({{"column", s.column},
                    {"label", s.label},
                    {"resolution_ranks", s.resolution_ranks},
                    {"shift_constant", s.shift_constant},
                    {"b", s.b.to_string()},
                    {"window", s.window.empty() ? json(nullptr) : json::array({s.window.k0, s.window.k1})}});
  }
  j["summands"] = sums;
  j["metadata"] = {
      {"indexing", "dims[i] is H^i; it is read off the truncated total complex at degree i - n"},
      {"filtration", "V-filtration along the origin, weights -1 on x_i and +1 on d_i, all n variables"},
      {"term_order", "homogenized degree, then shifted V-degree, total degree, reverse lexicographic, position"},
      {"total_complex_lo", r.total_lo},
      {"total_complex_ranks", r.total_ranks},
      {"resolutions_complete", r.resolutions_complete}};
  if (with_timings) j["timings"] = r.timings;
  return j;
}

std::string to_text(const ResultReport& r) {
  std::ostringstream out;
  out << (r.support ? "support cohomology" : "de Rham cohomology") << "  n=" << r.n << " r=" << r.r;
  if (r.support) out << " s=" << r.s;
  out << "\n";
  for (auto [i, d] : r.dims) out << "  H^" << i << "  " << d << "\n";
  out << "  euler characteristic  " << r.euler_characteristic() << "\n";
  out << "  b-function            " << r.b_function.to_string() << "\n";
  out << "  window                " << window_text(r.window) << "\n";
  return out.str();
}

}  // namespace derham
