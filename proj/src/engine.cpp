#include "derham/engine.hpp"

#include "derham/log.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace derham::engine {

int EngineOrder::compare(const Mono& a, int pa, const Mono& b, int pb) const {
  if (homogenized) {
    long da = a.degree() + a.h() + ts(pa), db = b.degree() + b.h() + ts(pb);
    if (da != db) return da < db ? -1 : 1;
  }
  int ba = blk(pa), bb = blk(pb);
  if (ba != bb) return ba < bb ? 1 : -1;
  for (const auto& w : weights) {
    long wa = 0, wb = 0;
    for (int i = 0; i < 2 * kMaxVars; ++i) {
      wa += long(w[i]) * a.e[i];
      wb += long(w[i]) * b.e[i];
    }
    if (wa != wb) return wa < wb ? -1 : 1;
  }
  if (d > 0) {
    long va = v_degree(a, d) + vs(pa), vb = v_degree(b, d) + vs(pb);
    if (va != vb) return va < vb ? -1 : 1;
  }
  long ta = a.degree() + ts(pa), tb = b.degree() + ts(pb);
  if (ta != tb) return ta < tb ? -1 : 1;
  for (int i = nweyl - 1; i >= 0; --i)
    if (a.d(i) != b.d(i)) return a.d(i) < b.d(i) ? 1 : -1;
  for (int i = nvars - 1; i >= 0; --i)
    if (a.x(i) != b.x(i)) return a.x(i) < b.x(i) ? 1 : -1;
  if (a.h() != b.h()) return a.h() < b.h() ? 1 : -1;
  if (pa != pb) return pa < pb ? 1 : -1;
  return 0;
}

namespace {

void sort_and_merge(GPoly& p, const EngineOrder& ord) {
  std::sort(p.begin(), p.end(),
            [&](const GTerm& a, const GTerm& b) { return ord.greater(a, b); });
  std::size_t out = 0;
  for (std::size_t i = 0; i < p.size();) {
    std::size_t j = i + 1;
    Scalar c = p[i].c;
    while (j < p.size() && p[j].m == p[i].m && p[j].pos == p[i].pos) c += p[j++].c;
    if (sgn(c) != 0) {
      p[out].m = p[i].m;
      p[out].pos = p[i].pos;
      p[out].c = std::move(c);
      ++out;
    }
    i = j;
  }
  p.resize(out);
}

long total_degree(const GTerm& t, const EngineOrder& ord) {
  return t.m.degree() + t.m.h() + ord.ts(t.pos);
}

}  // namespace

void sort_poly(GPoly& p, const EngineOrder& ord) { sort_and_merge(p, ord); }

GPoly to_gpoly(const ModuleElement& v, const EngineOrder& ord) {
  GPoly p;
  for (int i = 0; i < v.rank(); ++i)
    for (const auto& t : v[i].terms()) p.push_back({t.mono, i, t.coeff});
  sort_and_merge(p, ord);
  return p;
}

GPoly homogenize(const ModuleElement& v, const EngineOrder& ord) {
  GPoly p;
  long top = std::numeric_limits<long>::min();
  for (int i = 0; i < v.rank(); ++i)
    for (const auto& t : v[i].terms()) top = std::max(top, long(t.mono.degree()) + ord.ts(i));
  for (int i = 0; i < v.rank(); ++i)
    for (const auto& t : v[i].terms()) {
      Mono m = t.mono;
      m.h() = static_cast<std::uint16_t>(top - m.degree() - ord.ts(i));
      p.push_back({m, i, t.coeff});
    }
  sort_and_merge(p, ord);
  return p;
}

ModuleElement to_module(const GPoly& p, int rank, int nvars, int nweyl) {
  std::vector<std::vector<WeylTerm>> comps(rank);
  for (const auto& t : p) {
    Mono m = t.m;
    m.h() = 0;
    comps[t.pos].push_back({m, t.c});
  }
  ModuleElement v(rank, nvars, nweyl);
  for (int i = 0; i < rank; ++i) v[i] = WeylElement::from_terms(nvars, nweyl, std::move(comps[i]));
  return v;
}

GPoly add_scaled(const GPoly& a, const GPoly& b, const Scalar& c, const EngineOrder& ord) {
  GPoly r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int cmp = i == a.size()   ? -1
              : j == b.size() ? 1
                              : ord.compare(a[i].m, a[i].pos, b[j].m, b[j].pos);
    if (cmp > 0) {
      r.push_back(a[i++]);
    } else if (cmp < 0) {
      r.push_back({b[j].m, b[j].pos, c * b[j].c});
      ++j;
    } else {
      Scalar s = a[i].c + c * b[j].c;
      if (sgn(s) != 0) r.push_back({a[i].m, a[i].pos, std::move(s)});
      ++i;
      ++j;
    }
  }
  return r;
}

GPoly mul_term(const Mono& m, const Scalar& c, const GPoly& p, const EngineOrder& ord) {
  GPoly r;
  std::vector<std::pair<Mono, mpz_class>> buf;
  bool trivial = true;
  for (int i = 0; i < ord.nweyl; ++i)
    if (m.d(i)) trivial = false;
  for (const auto& t : p) {
    buf.clear();
    mul_monomials(m, t.m, ord.nweyl, ord.homogenized, buf);
    for (auto& [mm, k] : buf) r.push_back({mm, t.pos, c * t.c * Scalar(k)});
  }
  // x-only and central left factors preserve the order and create no collisions
  if (!trivial) sort_and_merge(r, ord);
  return r;
}

void make_monic(GPoly& p) {
  if (p.empty() || p[0].c == 1) return;
  Scalar inv = 1 / p[0].c;
  for (auto& t : p) t.c *= inv;
}

GPoly reduce(GPoly p, const std::vector<GPoly>& basis, const EngineOrder& ord, bool full,
             std::vector<GPoly>* quotients) {
  GPoly r;
  std::size_t start = 0;
  while (start < p.size()) {
    const GTerm& lt = p[start];
    int found = -1;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const GTerm& lb = basis[j].front();
      if (lb.pos == lt.pos && lb.m.divides(lt.m)) {
        found = static_cast<int>(j);
        break;
      }
    }
    if (found < 0) {
      if (!full) break;
      r.push_back(lt);
      ++start;
      continue;
    }
    const GPoly& g = basis[found];
    Mono q = mono_quotient(lt.m, g.front().m);
    Scalar c = lt.c / g.front().c;
    if (quotients) {
      GPoly qt{{q, 0, c}};
      (*quotients)[found] = add_scaled((*quotients)[found], qt, 1, ord);
    }
    GPoly tail(p.begin() + start, p.end());
    p = add_scaled(tail, mul_term(q, c, g, ord), -1, ord);
    start = 0;
  }
  r.insert(r.end(), p.begin() + start, p.end());
  return r;
}

namespace {

struct Pair {
  long deg;
  long seq;
  int i, j;
  Mono lcm;
  bool operator<(const Pair& o) const { return std::tie(deg, seq) < std::tie(o.deg, o.seq); }
};

}  // namespace

void reduce_tracked(Tracked& t, const std::vector<const Tracked*>& basis, const EngineOrder& ord,
                    const EngineOrder& cord, bool full) {
  GPoly r;
  GPoly& p = t.p;
  std::size_t start = 0;
  while (start < p.size()) {
    const GTerm& lt = p[start];
    const Tracked* found = nullptr;
    for (const Tracked* b : basis) {
      const GTerm& lb = b->p.front();
      if (lb.pos == lt.pos && lb.m.divides(lt.m)) {
        found = b;
        break;
      }
    }
    if (!found) {
      if (!full) break;
      r.push_back(lt);
      ++start;
      continue;
    }
    Mono q = mono_quotient(lt.m, found->p.front().m);
    Scalar c = lt.c / found->p.front().c;
    if (!found->cof.empty()) t.cof = add_scaled(t.cof, mul_term(q, c, found->cof, cord), -1, cord);
    GPoly tail(p.begin() + start, p.end());
    p = add_scaled(tail, mul_term(q, c, found->p, ord), -1, ord);
    start = 0;
  }
  r.insert(r.end(), p.begin() + start, p.end());
  p = std::move(r);
}

namespace {

void make_monic(Tracked& t) {
  if (t.p.empty() || t.p[0].c == 1) return;
  Scalar inv = 1 / t.p[0].c;
  for (auto& x : t.p) x.c *= inv;
  for (auto& x : t.cof) x.c *= inv;
}

}  // namespace

std::vector<Tracked> buchberger_tracked(std::vector<Tracked> input, const EngineOrder& ord,
                                        const EngineOrder& cord, const EngineOptions& opt) {
  std::vector<Tracked> G;
  std::vector<const Tracked*> view;
  std::vector<bool> redundant;
  std::set<Pair> pairs;
  long seq = 0;
  long processed = 0;
  G.reserve(64);

  // sugar degree: exact for homogeneous input, a proxy otherwise
  auto sugar_of = [&](const GPoly& p) {
    long best = 0;
    for (const auto& t : p) best = std::max(best, long(t.m.degree()) + t.m.h() + ord.ts(t.pos));
    return best;
  };
  auto pair_degree = [&](const Mono& l, int i, int k) {
    long a = G[i].sugar + mono_quotient(l, G[i].p.front().m).degree() +
             mono_quotient(l, G[i].p.front().m).h();
    long b = G[k].sugar + mono_quotient(l, G[k].p.front().m).degree() +
             mono_quotient(l, G[k].p.front().m).h();
    return std::max(a, b);
  };
  auto refresh_view = [&] {
    view.clear();
    for (const auto& g : G) view.push_back(&g);
  };

  auto add = [&](Tracked g) {
    make_monic(g);
    if (g.sugar < 0) g.sugar = sugar_of(g.p);
    int k = static_cast<int>(G.size());
    const GTerm lk = g.p.front();
    if (opt.chain_criterion) {
      for (auto it = pairs.begin(); it != pairs.end();) {
        const GTerm& li = G[it->i].p.front();
        const GTerm& lj = G[it->j].p.front();
        if (li.pos == lk.pos && lk.m.divides(it->lcm) &&
            !(mono_lcm(li.m, lk.m) == it->lcm) && !(mono_lcm(lj.m, lk.m) == it->lcm))
          it = pairs.erase(it);
        else
          ++it;
      }
    }
    G.push_back(std::move(g));
    redundant.push_back(false);
    for (int i = 0; i < k; ++i) {
      if (opt.chain_criterion && redundant[i]) continue;
      const GTerm& li = G[i].p.front();
      if (li.pos != lk.pos) continue;
      Mono l = mono_lcm(li.m, lk.m);
      pairs.insert({pair_degree(l, i, k), seq++, i, k, l});
    }
    for (int i = 0; i < k; ++i)
      if (!redundant[i] && G[i].p.front().pos == lk.pos && lk.m.divides(G[i].p.front().m))
        redundant[i] = true;
    refresh_view();
  };

  for (auto& f : input) {
    reduce_tracked(f, view, ord, cord, false);
    if (!f.p.empty()) add(std::move(f));
  }
  while (!pairs.empty()) {
    Pair pr = *pairs.begin();
    pairs.erase(pairs.begin());
    ++processed;
    if (opt.max_pairs > 0 && processed > opt.max_pairs)
      throw Inconsistency("Groebner basis computation exceeded the pair budget");
    if (processed % 200 == 0 && log_threshold() >= LogLevel::Debug)
      log_debug("buchberger: " + std::to_string(processed) + " pairs, basis " +
                std::to_string(G.size()) + ", queue " + std::to_string(pairs.size()) +
                ", degree " + std::to_string(pr.deg));
    const Tracked& gi = G[pr.i];
    const Tracked& gj = G[pr.j];
    Mono qi = mono_quotient(pr.lcm, gi.p.front().m);
    Mono qj = mono_quotient(pr.lcm, gj.p.front().m);
    Tracked s;
    s.sugar = pr.deg;
    s.p = add_scaled(mul_term(qi, 1, gi.p, ord), mul_term(qj, 1, gj.p, ord), -1, ord);
    if (!gi.cof.empty() || !gj.cof.empty())
      s.cof = add_scaled(mul_term(qi, 1, gi.cof, cord), mul_term(qj, 1, gj.cof, cord), -1, cord);
    reduce_tracked(s, view, ord, cord, false);
    if (!s.p.empty()) add(std::move(s));
  }

  std::vector<bool> drop(G.size(), false);
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = 0; j < G.size() && !drop[i]; ++j) {
      if (i == j || G[j].p.front().pos != G[i].p.front().pos) continue;
      const Mono& mj = G[j].p.front().m;
      const Mono& mi = G[i].p.front().m;
      if (mj.divides(mi) && (!(mj == mi) || j < i)) drop[i] = true;
    }
  std::vector<Tracked> minimal;
  for (std::size_t i = 0; i < G.size(); ++i)
    if (!drop[i]) minimal.push_back(std::move(G[i]));
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<const Tracked*> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(&minimal[j]);
    Tracked tail;
    tail.p.assign(minimal[i].p.begin() + 1, minimal[i].p.end());
    tail.cof = minimal[i].cof;
    reduce_tracked(tail, others, ord, cord, true);
    tail.p.insert(tail.p.begin(), minimal[i].p.front());
    minimal[i] = std::move(tail);
  }
  return minimal;
}

std::vector<GPoly> buchberger(std::vector<GPoly> input, const EngineOrder& ord,
                              const EngineOptions& opt) {
  std::vector<Tracked> in;
  for (auto& p : input) in.push_back({std::move(p), {}});
  std::vector<GPoly> out;
  for (auto& t : buchberger_tracked(std::move(in), ord, ord, opt)) out.push_back(std::move(t.p));
  return out;
}

std::vector<GPoly> dehomogenize_prune(std::vector<GPoly> G, const EngineOrder& ord) {
  EngineOrder plain = ord;
  plain.homogenized = false;
  std::vector<GPoly> deh;
  for (auto& g : G) {
    for (auto& t : g) t.m.h() = 0;
    sort_and_merge(g, plain);
    make_monic(g);
    deh.push_back(std::move(g));
  }
  // Drop an element only when a bounded top-reduction by the others
  // certifies that it lies in their span.
  std::vector<bool> keep(deh.size(), true);
  for (std::size_t i = deh.size(); i-- > 0;) {
    std::vector<const GPoly*> others;
    bool divisible = false;
    for (std::size_t j = 0; j < deh.size(); ++j) {
      if (j == i || !keep[j]) continue;
      others.push_back(&deh[j]);
      if (deh[j].front().pos == deh[i].front().pos && deh[j].front().m.divides(deh[i].front().m))
        divisible = true;
    }
    if (!divisible) continue;
    GPoly p = deh[i];
    for (int step = 0; step < 64 && !p.empty(); ++step) {
      const GPoly* found = nullptr;
      for (const GPoly* o : others)
        if (o->front().pos == p.front().pos && o->front().m.divides(p.front().m)) {
          found = o;
          break;
        }
      if (!found) break;
      Mono q = mono_quotient(p.front().m, found->front().m);
      Scalar c = p.front().c;
      p = add_scaled(p, mul_term(q, c, *found, plain), -1, plain);
    }
    if (p.empty()) keep[i] = false;
  }
  std::vector<GPoly> out;
  for (std::size_t i = 0; i < deh.size(); ++i)
    if (keep[i]) out.push_back(std::move(deh[i]));
  return out;
}

GTerm leading(const ModuleElement& v, const EngineOrder& ord) {
  EngineOrder plain = ord;
  plain.homogenized = false;
  GPoly p = to_gpoly(v, plain);
  if (p.empty()) throw std::invalid_argument("leading term of zero");
  return p.front();
}

std::vector<ModuleElement> groebner(const std::vector<ModuleElement>& gens, int rank,
                                    const EngineOrder& ord, const EngineOptions& opt) {
  std::vector<GPoly> input;
  for (const auto& g : gens) {
    if (g.rank() != rank) throw DimensionMismatch("generator rank differs from ambient rank");
    GPoly p = ord.homogenized ? homogenize(g, ord) : to_gpoly(g, ord);
    if (!p.empty()) input.push_back(std::move(p));
  }
  std::stable_sort(input.begin(), input.end(), [&](const GPoly& a, const GPoly& b) {
    return total_degree(a.front(), ord) < total_degree(b.front(), ord);
  });
  std::vector<GPoly> G = buchberger(std::move(input), ord, opt);

  std::vector<ModuleElement> out;
  if (!ord.homogenized) {
    for (const auto& g : G) out.push_back(to_module(g, rank, ord.nvars, ord.nweyl));
    return out;
  }
  for (const auto& g : dehomogenize_prune(std::move(G), ord))
    out.push_back(to_module(g, rank, ord.nvars, ord.nweyl));
  return out;
}

}  // namespace derham::engine
