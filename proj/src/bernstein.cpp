#include "derham/bernstein.hpp"

#include <algorithm>

#include "derham/engine.hpp"
#include "derham/log.hpp"

namespace derham {

namespace {

using engine::EngineOrder;

std::vector<WeylElement> eliminate(const std::vector<WeylElement>& gens, int nvars, int nweyl,
                                   const std::array<int, 2 * kMaxVars>& weight) {
  EngineOrder ord;
  ord.nvars = nvars;
  ord.nweyl = nweyl;
  ord.weights.push_back(weight);
  std::vector<ModuleElement> in;
  for (const auto& g : gens)
    if (!g.is_zero()) in.push_back(ModuleElement(std::vector<WeylElement>{g}));
  std::vector<WeylElement> out;
  for (const auto& e : engine::groebner(in, 1, ord)) {
    bool free_of = true;
    for (const auto& t : e[0].terms())
      for (int i = 0; i < 2 * kMaxVars; ++i)
        if (weight[i] && t.mono.e[i]) free_of = false;
    if (free_of) out.push_back(e[0]);
  }
  return out;
}

// prod_{i<p} (-s - 1 - i): image of t^p d_t^p under t d_t = -s - 1
WeylElement falling_theta(int nvars, int nweyl, int p) {
  WeylElement s = WeylElement::monomial(nvars, nweyl, [&] {
    Mono m;
    m.x(nvars - 1) = 1;
    return m;
  }(), 1);
  WeylElement acc = WeylElement::constant(nvars, nweyl, 1);
  for (int i = 0; i < p; ++i) acc = acc * (-s - WeylElement::constant(nvars, nweyl, 1 + i));
  return acc;
}

}  // namespace

BernsteinData bernstein_data(const WeylElement& f_in) {
  if (f_in.is_zero()) throw InvalidInput("bernstein_data: f must be nonzero");
  if (!f_in.is_polynomial() || f_in.nvars() != f_in.nweyl())
    throw InvalidInput("bernstein_data: f must be a polynomial");
  const int n = f_in.nvars();
  if (n + 3 > kMaxVars) throw InvalidInput("bernstein_data: too many variables");
  BernsteinData out;
  out.n = n;
  out.f = f_in;
  if (f_in.is_constant()) {
    out.ann_s = {};
    for (int i = 0; i < n; ++i) out.ann_s.push_back(embed(WeylElement::d(n, i), n + 1, n));
    out.b = UniPoly::constant(1);
    out.s0 = 0;
    return out;
  }

  // ring x_1..x_n, t (Weyl), u, v (central)
  const int NV = n + 3, NW = n + 1;
  const int t = n, u = n + 1, v = n + 2;
  auto var = [&](int i) {
    Mono m;
    m.x(i) = 1;
    return WeylElement::monomial(NV, NW, m, 1);
  };
  auto dvar = [&](int i) {
    Mono m;
    m.d(i) = 1;
    return WeylElement::monomial(NV, NW, m, 1);
  };
  WeylElement F = embed(f_in, NV, NW);
  std::vector<WeylElement> gens;
  gens.push_back(var(t) - var(u) * F);
  for (int i = 0; i < n; ++i) gens.push_back(dvar(i) + var(u) * embed(partial(f_in, i), NV, NW) * dvar(t));
  gens.push_back(var(u) * var(v) - WeylElement::constant(NV, NW, 1));
  std::array<int, 2 * kMaxVars> w{};
  w[u] = 1;
  w[v] = 1;
  std::vector<WeylElement> I = eliminate(gens, NV, NW, w);
  log_debug("bernstein: " + std::to_string(I.size()) + " elements after eliminating u, v");

  // weight t = 1, d_t = -1; each element is homogeneous
  std::vector<WeylElement> ann;
  for (const auto& P : I) {
    WeylElement Q = restrict_ring(P, n + 1, n + 1);
    long k = 0;
    bool first = true;
    for (const auto& term : Q.terms()) {
      long wt = long(term.mono.x(t)) - long(term.mono.d(t));
      if (first) k = wt, first = false;
      else if (wt != k) throw Inconsistency("bernstein: eliminated element is not t-homogeneous");
    }
    Mono shift;
    if (k > 0) shift.d(t) = static_cast<std::uint16_t>(k);
    else shift.x(t) = static_cast<std::uint16_t>(-k);
    Q = WeylElement::monomial(n + 1, n + 1, shift, 1) * Q;
    std::vector<WeylTerm> parts;
    WeylElement acc(n + 1, n);
    for (const auto& term : Q.terms()) {
      Mono m = term.mono;
      int p = m.x(t);
      if (m.d(t) != p) throw Inconsistency("bernstein: weight-zero normalization failed");
      m.x(t) = 0;
      m.d(t) = 0;
      acc += WeylElement::monomial(n + 1, n, m, term.coeff) * falling_theta(n + 1, n, p);
    }
    if (!acc.is_zero()) ann.push_back(monic(acc));
  }
  out.ann_s = ann;

  // b-function: eliminate x and d from Ann + D[s] f
  std::vector<WeylElement> bg = ann;
  bg.push_back(embed(f_in, n + 1, n));
  std::array<int, 2 * kMaxVars> wx{};
  for (int i = 0; i < n; ++i) {
    wx[i] = 1;
    wx[kMaxVars + i] = 1;
  }
  std::vector<WeylElement> bs = eliminate(bg, n + 1, n, wx);
  UniPoly b;
  for (const auto& e : bs) {
    std::vector<Scalar> c;
    for (const auto& term : e.terms()) {
      int k = term.mono.x(n);
      if (static_cast<int>(c.size()) <= k) c.resize(k + 1);
      c[k] += term.coeff;
    }
    b = gcd(b, UniPoly(std::move(c)));
  }
  if (b.is_zero()) throw Inconsistency("bernstein: b-function elimination returned nothing");
  out.b = b.monic();
  auto roots = out.b.integer_roots();
  out.s0 = roots.empty() ? 0 : roots.front();
  log_info("b-function of " + f_in.to_string() + ": " + out.b.to_string());
  return out;
}

std::vector<WeylElement> annihilator_of_power(const BernsteinData& data, long e) {
  if (e > data.s0)
    throw InvalidInput("annihilator_of_power: exponent above the smallest integer root");
  std::vector<WeylElement> out;
  for (const auto& P : data.ann_s) {
    WeylElement q = substitute_last(P, Scalar(e));
    if (!q.is_zero()) out.push_back(q);
  }
  return out;
}

}  // namespace derham
