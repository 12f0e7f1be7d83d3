#include "derham/groebner.hpp"

#include <algorithm>
#include <sstream>

#include "derham/log.hpp"

namespace derham {

using engine::EngineOrder;
using engine::GPoly;
using engine::GTerm;

namespace {

constexpr int kNormalFormSteps = 20000;

long max_degree(const ModuleElement& v) {
  long best = 0;
  for (int i = 0; i < v.rank(); ++i)
    for (const auto& t : v[i].terms()) best = std::max<long>(best, t.mono.degree());
  return best;
}

EngineOrder base_order(int n) {
  EngineOrder o;
  o.nvars = n;
  o.nweyl = n;
  return o;
}

std::vector<GPoly> to_gpolys(const std::vector<ModuleElement>& v, const EngineOrder& ord) {
  std::vector<GPoly> out;
  for (const auto& e : v) {
    GPoly p = engine::to_gpoly(e, ord);
    if (!p.empty()) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::string describe(const TermOrder& order) {
  std::ostringstream os;
  os << "V_" << order.filtration.d << "-degree with shift [";
  for (std::size_t i = 0; i < order.shift.size(); ++i) os << (i ? "," : "") << order.shift[i];
  os << "], then total degree, reverse lexicographic on (x1..xn, d1..dn), then position";
  return os.str();
}

EngineOrder make_engine_order(int n, int rank, const TermOrder& order, bool homogenized) {
  EngineOrder o = base_order(n);
  o.homogenized = homogenized;
  o.d = order.filtration.d;
  if (!order.shift.empty()) {
    if (static_cast<int>(order.shift.size()) != rank)
      throw DimensionMismatch("term order shift length differs from rank");
    o.vshift = order.shift;
  }
  return o;
}

GroebnerBasis groebner_basis(const std::vector<ModuleElement>& gens, const TermOrder& order,
                             int rank, int n) {
  GroebnerBasis gb;
  gb.n = n;
  gb.rank = rank;
  gb.order = order;
  bool homog = order.filtration.d > 0;
  gb.elements = engine::groebner(gens, rank, make_engine_order(n, rank, order, homog));
  return gb;
}

GroebnerBasis groebner_basis(const std::vector<ModuleElement>& gens, const TermOrder& order) {
  if (gens.empty()) throw InvalidInput("groebner_basis: empty generator list needs a rank");
  return groebner_basis(gens, order, gens[0].rank(), gens[0].nvars());
}

ModuleElement normal_form(const ModuleElement& e, const GroebnerBasis& gb) {
  if (e.rank() != gb.rank) throw DimensionMismatch("normal_form: rank mismatch");
  EngineOrder ord = make_engine_order(gb.n, gb.rank, gb.order, false);
  std::vector<GPoly> basis = to_gpolys(gb.elements, ord);
  GPoly p = engine::to_gpoly(e, ord);
  GPoly r;
  int steps = 0;
  while (!p.empty()) {
    const GPoly* g = nullptr;
    for (const auto& b : basis)
      if (b.front().pos == p.front().pos && b.front().m.divides(p.front().m)) {
        g = &b;
        break;
      }
    if (!g || ++steps > kNormalFormSteps) {
      if (g) {
        log_warn("normal_form: reduction step cap reached; tail left partially reduced");
        r.insert(r.end(), p.begin(), p.end());
        break;
      }
      r.push_back(p.front());
      p.erase(p.begin());
      continue;
    }
    Mono q = mono_quotient(p.front().m, g->front().m);
    Scalar c = p.front().c / g->front().c;
    p = engine::add_scaled(p, engine::mul_term(q, c, *g, ord), -1, ord);
  }
  return engine::to_module(r, gb.rank, gb.n, gb.n);
}

bool submodule_membership(const ModuleElement& e, const GroebnerBasis& gb) {
  if (e.rank() != gb.rank) throw DimensionMismatch("submodule_membership: rank mismatch");
  if (e.is_zero()) return true;
  if (gb.order.filtration.d == 0) return normal_form(e, gb).is_zero();
  // a graded basis decides membership with a terminating reduction
  std::shared_ptr<const std::vector<ModuleElement>> graded = gb.graded;
  if (!graded) {
    TermOrder plain;
    graded = std::make_shared<const std::vector<ModuleElement>>(
        engine::groebner(gb.elements, gb.rank, make_engine_order(gb.n, gb.rank, plain, false)));
  }
  EngineOrder ord = base_order(gb.n);
  return engine::reduce(engine::to_gpoly(e, ord), to_gpolys(*graded, ord), ord, false).empty();
}

KernelImage kernel_and_image(const std::vector<ModuleElement>& rows, int cols, int n,
                             FiltrationSpec spec, const ShiftVector& source_shift,
                             const ShiftVector& target_shift) {
  int k = static_cast<int>(rows.size());
  EngineOrder ord = base_order(n);
  ord.homogenized = spec.d > 0;
  ord.d = spec.d;
  ord.block.assign(cols + k, 1);
  std::fill(ord.block.begin(), ord.block.begin() + cols, 0);
  ord.vshift.assign(cols + k, 0);
  ord.tdshift.assign(cols + k, 0);
  for (int j = 0; j < cols; ++j) ord.vshift[j] = target_shift.empty() ? 0 : target_shift[j];
  for (int i = 0; i < k; ++i) {
    ord.vshift[cols + i] = source_shift.empty() ? 0 : source_shift[i];
    ord.tdshift[cols + i] = max_degree(rows[i]);
  }
  std::vector<GPoly> input;
  for (int i = 0; i < k; ++i) {
    if (rows[i].rank() != cols) throw DimensionMismatch("kernel_and_image: row length");
    ModuleElement e = rows[i].concat(ModuleElement::unit(k, n, i));
    input.push_back(ord.homogenized ? engine::homogenize(e, ord) : engine::to_gpoly(e, ord));
  }
  std::vector<GPoly> G = engine::buchberger(std::move(input), ord);
  if (ord.homogenized) G = engine::dehomogenize_prune(std::move(G), ord);
  KernelImage out;
  for (const auto& g : G) {
    ModuleElement full = engine::to_module(g, cols + k, n, n);
    if (g.front().pos >= cols) {
      out.kernel.push_back(full.slice(cols, cols + k));
    } else {
      out.image.push_back(full.slice(0, cols));
      out.image_cofactors.push_back(full.slice(cols, cols + k));
    }
  }
  return out;
}

std::vector<ModuleElement> kernel_of_map(const OperatorMatrix& phi) {
  return kernel_and_image(phi.row_vectors(), phi.cols(), phi.n(), FiltrationSpec{0}, {}, {})
      .kernel;
}

std::vector<ModuleElement> syzygies(const GroebnerBasis& gb) {
  return kernel_and_image(gb.elements, gb.rank, gb.n, FiltrationSpec{0}, {}, {}).kernel;
}

ShiftVector obvious_shift(const OperatorMatrix& phi, const ShiftVector& target_shift,
                          FiltrationSpec spec) {
  ShiftVector out(phi.rows());
  for (int i = 0; i < phi.rows(); ++i) {
    long v = v_degree(phi.row(i), spec, target_shift);
    if (v == kMinusInfinity) {
      log_warn("obvious_shift: generator " + std::to_string(i) +
               " maps to zero; assigning shift 0");
      v = 0;
    }
    out[i] = v;
  }
  return out;
}

ChainComplexPres v_strict_resolution(const DModPresentation& pres, const ShiftVector& m0,
                                     int length, FiltrationSpec spec) {
  if (length < 1) throw InvalidInput("v_strict_resolution: length must be at least 1");
  int n = pres.n;
  ShiftVector shift = m0.empty() ? ShiftVector(pres.rank, 0) : m0;
  if (static_cast<int>(shift.size()) != pres.rank)
    throw DimensionMismatch("v_strict_resolution: shift length differs from rank");

  // modules built from degree 0 downward, reversed at the end
  std::vector<DModPresentation> mods{DModPresentation::free(n, pres.rank, shift)};
  std::vector<OperatorMatrix> maps;
  TermOrder order{spec, shift};
  std::vector<ModuleElement> rows =
      groebner_basis(pres.relations, order, pres.rank, n).elements;
  int cols = pres.rank;
  ShiftVector tgt = shift;
  while (!rows.empty() && static_cast<int>(maps.size()) < length) {
    OperatorMatrix phi(rows, cols, n);
    ShiftVector src = obvious_shift(phi, tgt, spec);
    phi.source_shift = src;
    phi.target_shift = tgt;
    maps.push_back(phi);
    mods.push_back(DModPresentation::free(n, phi.rows(), src));
    if (static_cast<int>(maps.size()) == length) break;
    rows = kernel_and_image(rows, cols, n, spec, src, tgt).kernel;
    cols = phi.rows();
    tgt = src;
  }
  ChainComplexPres c;
  c.n = n;
  c.lo = -static_cast<int>(maps.size());
  c.modules.assign(mods.rbegin(), mods.rend());
  for (auto it = maps.rbegin(); it != maps.rend(); ++it) c.differentials.push_back({*it});
  return c;
}

ChainComplexPres v_strict_resolution(const DModPresentation& pres, const ShiftVector& m0,
                                     int length) {
  return v_strict_resolution(pres, m0, length, FiltrationSpec{pres.n});
}

Lifter::Lifter(std::vector<ModuleElement> gens, int rank, int n)
    : gens_(std::move(gens)), rank_(rank), n_(n), ord_(base_order(n)), cord_(base_order(n)) {
  std::vector<engine::Tracked> input;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].rank() != rank) throw DimensionMismatch("Lifter: generator rank");
    GPoly p = engine::to_gpoly(gens_[i], ord_);
    if (p.empty()) continue;
    input.push_back({std::move(p), GPoly{{Mono{}, static_cast<int>(i), Scalar(1)}}});
  }
  basis_ = engine::buchberger_tracked(std::move(input), ord_, cord_);
  for (const auto& b : basis_) bare_.push_back({b.p, {}});
}

std::optional<ModuleElement> Lifter::lift(const ModuleElement& y) const {
  if (y.rank() != rank_) throw DimensionMismatch("Lifter::lift: rank mismatch");
  std::vector<const engine::Tracked*> view;
  for (const auto& b : basis_) view.push_back(&b);
  engine::Tracked t{engine::to_gpoly(y, ord_), {}};
  engine::reduce_tracked(t, view, ord_, cord_, false);
  if (!t.p.empty()) return std::nullopt;
  return -engine::to_module(t.cof, size(), n_, n_);
}

bool Lifter::contains(const ModuleElement& y) const {
  if (y.rank() != rank_) throw DimensionMismatch("Lifter::contains: rank mismatch");
  std::vector<const engine::Tracked*> view;
  for (const auto& b : bare_) view.push_back(&b);
  engine::Tracked t{engine::to_gpoly(y, ord_), {}};
  engine::reduce_tracked(t, view, ord_, cord_, false);
  return t.p.empty();
}

ModuleElement reduce_v_degree(const ModuleElement& y, const std::vector<ModuleElement>& vgb,
                              FiltrationSpec spec, const ShiftVector& shift, long target,
                              ModuleElement* cofactor) {
  EngineOrder ord = base_order(y.nvars());
  ord.d = spec.d;
  ord.vshift = shift;
  std::vector<GPoly> basis;
  for (const auto& g : vgb) basis.push_back(engine::to_gpoly(g, ord));
  std::vector<GPoly> quot(vgb.size());
  GPoly p = engine::to_gpoly(y, ord);
  while (!p.empty()) {
    const GTerm& lt = p.front();
    if (v_degree(lt.m, spec.d) + ord.vs(lt.pos) <= target) break;
    int found = -1;
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (!basis[j].empty() && basis[j].front().pos == lt.pos &&
          basis[j].front().m.divides(lt.m)) {
        found = static_cast<int>(j);
        break;
      }
    if (found < 0) break;
    const GPoly& g = basis[found];
    Mono q = mono_quotient(lt.m, g.front().m);
    Scalar c = lt.c / g.front().c;
    if (cofactor) quot[found] = engine::add_scaled(quot[found], GPoly{{q, 0, c}}, 1, ord);
    p = engine::add_scaled(p, engine::mul_term(q, c, g, ord), -1, ord);
  }
  if (cofactor) {
    std::vector<WeylElement> comps;
    for (const auto& qv : quot) comps.push_back(engine::to_module(qv, 1, y.nvars(), y.nweyl())[0]);
    *cofactor = comps.empty() ? ModuleElement(0, y.nvars(), y.nweyl()) : ModuleElement(comps);
  }
  return engine::to_module(p, y.rank(), y.nvars(), y.nweyl());
}

long minimal_v_degree(const ModuleElement& y, const std::vector<ModuleElement>& vgb,
                      FiltrationSpec spec, const ShiftVector& shift, long floor) {
  ModuleElement r = reduce_v_degree(y, vgb, spec, shift, floor);
  if (r.is_zero()) return kMinusInfinity;
  return std::max(v_degree(r, spec, shift), floor);
}

}  // namespace derham
