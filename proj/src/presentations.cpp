#include "derham/presentations.hpp"

#include <algorithm>

#include "derham/groebner.hpp"
#include "derham/log.hpp"

namespace derham {

int MVIndex::sign_exponent(int j) const {
  return static_cast<int>(std::count_if(I.begin(), I.end(), [j](int i) { return i > j; }));
}

MVIndex MVIndex::with(int j) const {
  if (contains(j)) throw InvalidInput("MVIndex: index already present");
  MVIndex out{I};
  out.I.insert(std::upper_bound(out.I.begin(), out.I.end(), j), j);
  return out;
}

bool MVIndex::contains(int j) const { return std::binary_search(I.begin(), I.end(), j); }

// ---- localization ----

std::string LocalizationCache::key(const WeylElement& f) {
  return std::to_string(f.nvars()) + ":" + monic(f).to_string();
}

const LocalizationEntry& LocalizationCache::get(const WeylElement& f) {
  if (f.is_zero()) throw InvalidInput("localization of the zero polynomial");
  auto k = key(f);
  auto it = entries_.find(k);
  if (it != entries_.end()) return it->second;
  LocalizationEntry e;
  e.f = f;
  e.data = bernstein_data(f);
  e.s0 = e.data->s0;
  return entries_.emplace(k, std::move(e)).first->second;
}

void LocalizationCache::provide(const WeylElement& f, long e, std::vector<WeylElement> annihilator) {
  if (f.is_zero()) throw InvalidInput("localization of the zero polynomial");
  LocalizationEntry entry;
  entry.f = f;
  entry.s0 = e;
  entry.provided = std::move(annihilator);
  entries_[key(f)] = std::move(entry);
}

std::vector<WeylElement> LocalizationCache::annihilator(const WeylElement& f, long e) {
  const LocalizationEntry& entry = get(f);
  if (entry.data) return annihilator_of_power(*entry.data, e);
  if (e != entry.s0)
    throw InvalidInput("supplied presentation of R_f for f = " + f.to_string() + " uses exponent " +
                       std::to_string(entry.s0) + ", but exponent " + std::to_string(e) +
                       " is required");
  return entry.provided;
}

namespace {

std::string power_label(const WeylElement& f, long e) {
  return "(" + f.to_string() + ")^" + std::to_string(e);
}

DModPresentation cyclic_localization(const WeylElement& f, long e, LocalizationCache& cache) {
  DModPresentation p = DModPresentation::cyclic(f.nvars(), cache.annihilator(f, e));
  p.generator_labels = {power_label(f, e)};
  return p;
}

}  // namespace

DModPresentation localize(const WeylElement& f, LocalizationCache& cache) {
  return cyclic_localization(f, cache.get(f).s0, cache);
}

DModPresentation localize(const WeylElement& f) {
  LocalizationCache cache;
  return localize(f, cache);
}

LocalizationFamily::LocalizationFamily(int n, std::vector<WeylElement> polys)
    : n_(n), polys_(std::move(polys)) {
  if (n < 1) throw InvalidInput("at least one variable is required");
  if (polys_.empty()) throw InvalidInput("empty polynomial list; use {1} for the empty variety");
  for (const auto& f : polys_) {
    if (f.is_zero()) throw InvalidInput("the zero polynomial is not allowed");
    if (f.nvars() != n || !f.is_polynomial()) throw InvalidInput("expected polynomials in n variables");
  }
}

WeylElement LocalizationFamily::product(const std::vector<int>& I) const {
  WeylElement p = WeylElement::constant(n_, 1);
  for (int i : I) p = p * polys_.at(i);
  return p;
}

// ---- Mayer-Vietoris and Cech complexes ----

namespace {

std::vector<std::vector<int>> subsets(int m, bool allow_empty) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = allow_empty ? 0 : 1; mask < (1u << m); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

struct Summand {
  MVIndex I;
  MVIndex K;
  WeylElement product;
};

}  // namespace

LocalizedComplex mv_tensor_cech(const LocalizationFamily& F, const std::vector<WeylElement>& G,
                                LocalizationCache& cache) {
  const int n = F.n();
  const int r = F.size(), s = static_cast<int>(G.size());
  if (r + s > 16) throw InvalidInput("too many polynomials");
  for (const auto& g : G) {
    if (g.is_zero()) throw InvalidInput("the zero polynomial is not allowed");
    if (g.nvars() != n || !g.is_polynomial()) throw InvalidInput("expected polynomials in n variables");
  }
  const int top = r - 1 + s;
  std::vector<std::vector<Summand>> deg(top + 1);
  for (const auto& I : subsets(r, false))
    for (const auto& K : subsets(s, true)) {
      WeylElement h = F.product(I);
      for (int k : K) h = h * G[k];
      deg[I.size() - 1 + K.size()].push_back({MVIndex{I}, MVIndex{K}, h});
    }
  for (auto& v : deg)
    std::stable_sort(v.begin(), v.end(), [](const Summand& a, const Summand& b) {
      if (a.I.I != b.I.I) return a.I.I < b.I.I;
      return a.K.I < b.K.I;
    });

  long e = 0;
  for (const auto& v : deg)
    for (const auto& sm : v) e = std::min(e, cache.get(sm.product).s0);
  log_info("localization exponent " + std::to_string(e));

  LocalizedComplex out;
  out.exponent = e;
  out.complex.n = n;
  out.complex.lo = 0;
  for (const auto& v : deg) {
    std::vector<DModPresentation> parts;
    std::vector<WeylElement> prods;
    for (const auto& sm : v) {
      parts.push_back(cyclic_localization(sm.product, e, cache));
      prods.push_back(sm.product);
    }
    out.complex.modules.push_back(direct_sum(parts, n));
    out.products.push_back(std::move(prods));
  }

  auto find = [&](int t, const MVIndex& I, const MVIndex& K) {
    for (std::size_t i = 0; i < deg[t].size(); ++i)
      if (deg[t][i].I.I == I.I && deg[t][i].K.I == K.I) return static_cast<int>(i);
    throw Inconsistency("mv_tensor_cech: missing summand");
  };
  for (int t = 0; t < top; ++t) {
    OperatorMatrix m(static_cast<int>(deg[t].size()), static_cast<int>(deg[t + 1].size()), n);
    for (std::size_t a = 0; a < deg[t].size(); ++a) {
      const Summand& sm = deg[t][a];
      for (int j = 0; j < r; ++j) {
        if (sm.I.contains(j)) continue;
        int b = find(t + 1, sm.I.with(j), sm.K);
        WeylElement P = pow(F.polys()[j], static_cast<unsigned>(-e));
        m.at(static_cast<int>(a), b) = sm.I.sign_exponent(j) % 2 ? -P : P;
      }
      for (int k = 0; k < s; ++k) {
        if (sm.K.contains(k)) continue;
        int b = find(t + 1, sm.I, sm.K.with(k));
        WeylElement P = pow(G[k], static_cast<unsigned>(-e));
        int before = static_cast<int>(std::count_if(sm.K.I.begin(), sm.K.I.end(), [k](int l) { return l < k; }));
        int sign = static_cast<int>(sm.I.I.size()) - 1 + before;
        m.at(static_cast<int>(a), b) = sign % 2 ? -P : P;
      }
    }
    out.complex.differentials.push_back(DModMap{std::move(m)});
  }
  return out;
}

LocalizedComplex mv_complex(const LocalizationFamily& F, LocalizationCache& cache) {
  return mv_tensor_cech(F, {}, cache);
}

LocalizedComplex cech_complex(int n, const std::vector<WeylElement>& G, LocalizationCache& cache) {
  if (G.empty()) throw InvalidInput("cech_complex: empty polynomial list");
  return mv_tensor_cech(LocalizationFamily(n, {WeylElement::constant(n, 1)}), G, cache);
}

ChainComplexPres mv_complex(const LocalizationFamily& F) {
  LocalizationCache cache;
  return mv_complex(F, cache).complex;
}

ChainComplexPres cech_complex(int n, const std::vector<WeylElement>& G) {
  LocalizationCache cache;
  return cech_complex(n, G, cache).complex;
}

ChainComplexPres mv_tensor_cech(const LocalizationFamily& F, const std::vector<WeylElement>& G) {
  LocalizationCache cache;
  return mv_tensor_cech(F, G, cache).complex;
}

// ---- cohomology and consistency checks ----

namespace {

bool in_span(const std::vector<ModuleElement>& gens, int rank, int n, const ModuleElement& y) {
  if (y.is_zero()) return true;
  if (gens.empty()) return false;
  return Lifter(gens, rank, n).contains(y);
}

std::vector<ModuleElement> stacked_kernel(const std::vector<ModuleElement>& rows, int cols, int n,
                                          int keep) {
  OperatorMatrix phi(rows, cols, n);
  std::vector<ModuleElement> out;
  for (const auto& k : kernel_of_map(phi)) {
    ModuleElement head = k.slice(0, keep);
    if (!head.is_zero()) out.push_back(head);
  }
  return out;
}

}  // namespace

CohomologyPresentation cohomology_presentation(const ChainComplexPres& c, int k) {
  if (k < c.lo || k > c.hi()) throw InvalidInput("cohomology_presentation: degree out of range");
  const int n = c.n;
  const DModPresentation& C = c.at(k);
  CohomologyPresentation out;
  if (k == c.hi()) {
    for (int i = 0; i < C.rank; ++i) out.cycles.push_back(ModuleElement::unit(C.rank, n, i));
  } else {
    const DModPresentation& T = c.at(k + 1);
    std::vector<ModuleElement> rows = c.d(k).row_vectors();
    for (const auto& rel : T.relations) rows.push_back(rel);
    if (T.rank == 0) {
      for (int i = 0; i < C.rank; ++i) out.cycles.push_back(ModuleElement::unit(C.rank, n, i));
    } else {
      // a with a*M + b*N = 0 for some b
      out.cycles = stacked_kernel(rows, T.rank, n, C.rank);
    }
  }
  if (k > c.lo) out.boundaries = c.d(k - 1).row_vectors();

  out.H.n = n;
  out.H.rank = static_cast<int>(out.cycles.size());
  if (out.H.rank == 0) return out;
  std::vector<ModuleElement> rows = out.cycles;
  for (const auto& b : out.boundaries) rows.push_back(b);
  for (const auto& rel : C.relations) rows.push_back(rel);
  out.H.relations = stacked_kernel(rows, C.rank, n, out.H.rank);
  return out;
}

bool is_zero_module(const DModPresentation& p) {
  for (int i = 0; i < p.rank; ++i)
    if (!in_span(p.relations, p.rank, p.n, ModuleElement::unit(p.rank, p.n, i))) return false;
  return true;
}

bool map_well_defined(const DModPresentation& src, const DModPresentation& tgt,
                      const OperatorMatrix& m) {
  if (m.rows() != src.rank || m.cols() != tgt.rank) return false;
  if (src.relations.empty()) return true;
  std::vector<ModuleElement> images;
  for (const auto& r : src.relations) images.push_back(m.apply(r));
  if (std::all_of(images.begin(), images.end(), [](const ModuleElement& v) { return v.is_zero(); }))
    return true;
  if (tgt.relations.empty()) return false;
  Lifter L(tgt.relations, tgt.rank, tgt.n);
  return std::all_of(images.begin(), images.end(),
                     [&](const ModuleElement& v) { return v.is_zero() || L.contains(v); });
}

bool delta_squared_vanishes(const ChainComplexPres& c) {
  for (int k = c.lo; k + 2 <= c.hi(); ++k) {
    OperatorMatrix comp = c.d(k).then(c.d(k + 1));
    if (comp.is_zero()) continue;
    const DModPresentation& T = c.at(k + 2);
    if (T.relations.empty()) return false;
    Lifter L(T.relations, T.rank, T.n);
    for (const auto& row : comp.row_vectors())
      if (!row.is_zero() && !L.contains(row)) return false;
  }
  return true;
}

// ---- serialization ----

nlohmann::json to_json(const DModPresentation& p) {
  nlohmann::json j;
  j["rank"] = p.rank;
  j["shift"] = p.shift_or_zero();
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : p.relations) {
    nlohmann::json row = nlohmann::json::array();
    for (int i = 0; i < r.rank(); ++i) row.push_back(r[i].to_string());
    rels.push_back(row);
  }
  j["relations"] = rels;
  if (!p.blocks.empty()) j["blocks"] = p.blocks;
  if (!p.generator_labels.empty()) j["generators"] = p.generator_labels;
  return j;
}

nlohmann::json to_json(const OperatorMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(m.at(i, k).to_string());
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json to_json(const ChainComplexPres& c) {
  nlohmann::json j;
  j["n"] = c.n;
  j["lo"] = c.lo;
  j["hi"] = c.hi();
  nlohmann::json mods = nlohmann::json::array();
  for (const auto& m : c.modules) mods.push_back(to_json(m));
  j["modules"] = mods;
  nlohmann::json ds = nlohmann::json::array();
  for (const auto& d : c.differentials) ds.push_back(to_json(d.matrix));
  j["differentials"] = ds;
  return j;
}

}  // namespace derham
