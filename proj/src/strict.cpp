#include "derham/strict.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <tuple>

#include "derham/groebner.hpp"
#include "derham/log.hpp"

namespace derham {

StrictnessReport verify_v_strict(const ChainComplexPres& A, FiltrationSpec spec,
                                 std::optional<TruncationWindow> window) {
  if (!A.is_free()) throw InvalidInput("verify_v_strict expects a free complex");
  StrictnessReport rep;
  if (window) {
    rep.window = *window;
  } else {
    long lo = 0, hi = 0;
    bool any = false;
    for (const auto& m : A.modules)
      for (long s : m.shift_or_zero()) {
        lo = any ? std::min(lo, s) : s;
        hi = any ? std::max(hi, s) : s;
        any = true;
      }
    rep.window = {lo - 2, hi + 2};
  }
  for (int k = A.lo + 1; k <= A.hi(); ++k) {
    const auto& phi = A.d(k - 1);
    auto src = A.at(k - 1).shift_or_zero(), tgt = A.at(k).shift_or_zero();
    for (int i = 0; i < phi.rows(); ++i) {
      const auto& row = phi.row(i);
      if (!row.is_zero() && v_degree(row, spec, tgt) > src[i]) {
        rep.adapted = false;
        rep.failures.push_back({k, src[i], row, "row raises the shifted V-degree"});
      }
    }
    if (phi.is_zero()) continue;
    KernelImage ki = kernel_and_image(phi.row_vectors(), phi.cols(), A.n, spec, src, tgt);
    for (std::size_t j = 0; j < ki.image.size(); ++j) {
      long deg = v_degree(ki.image[j], spec, tgt);
      if (deg < rep.window.k0 || deg > rep.window.k1) continue;
      long md = minimal_v_degree(ki.image_cofactors[j], ki.kernel, spec, src, deg);
      if (md > deg) {
        rep.strict = false;
        rep.failures.push_back({k, deg, ki.image[j], "no preimage of the same degree"});
      }
    }
  }
  std::stable_sort(rep.failures.begin(), rep.failures.end(),
                   [](const StrictnessFailure& a, const StrictnessFailure& b) {
                     return std::tie(a.position, a.degree) < std::tie(b.position, b.degree);
                   });
  return rep;
}

ChainComplexPres strictness_counterexample() {
  const int n = 1;
  WeylElement d = WeylElement::d(1, 0), one = WeylElement::constant(1, 1);
  OperatorMatrix m({ModuleElement(std::vector<WeylElement>{d}),
                    ModuleElement(std::vector<WeylElement>{d - one})},
                   1, n);
  m.source_shift = {1, 1};
  m.target_shift = {0};
  ChainComplexPres c;
  c.n = n;
  c.lo = -1;
  c.modules = {DModPresentation::free(n, 2, {1, 1}), DModPresentation::free(n, 1, {0})};
  c.differentials = {DModMap{m}};
  return c;
}

// ---- twisted total complex ----

namespace {

OperatorMatrix add(const OperatorMatrix& a, const OperatorMatrix& b) {
  std::vector<ModuleElement> rows;
  for (int i = 0; i < a.rows(); ++i) rows.push_back(a.row(i) + b.row(i));
  return OperatorMatrix(rows, a.cols(), a.n());
}

OperatorMatrix negate(const OperatorMatrix& a) {
  std::vector<ModuleElement> rows;
  for (int i = 0; i < a.rows(); ++i) rows.push_back(-a.row(i));
  return OperatorMatrix(rows, a.cols(), a.n());
}

}  // namespace

TwistedComplex v_strict_complex(const ChainComplexPres& c, FiltrationSpec spec, int max_length) {
  const int n = c.n;
  TwistedComplex tw;
  std::vector<int> offset;  // generator offset of the summand inside its degree
  std::vector<std::vector<int>> by_column(c.modules.size());
  for (int t = c.lo; t <= c.hi(); ++t) {
    const auto& M = c.at(t);
    for (int b = 0; b < M.block_count(); ++b) {
      DModPresentation p = M.block(b);
      p.shift.clear();
      by_column[t - c.lo].push_back(static_cast<int>(tw.summands.size()));
      tw.summands.push_back(p);
      tw.column.push_back(t);
      offset.push_back(M.blocks.empty() ? 0 : M.block_offset(b));
    }
  }
  const int S = static_cast<int>(tw.summands.size());
  for (int s = 0; s < S; ++s) {
    auto r = v_strict_resolution(tw.summands[s], ShiftVector(tw.summands[s].rank, 0),
                                 max_length + 1, spec);
    if (-r.lo > max_length) {
      tw.resolutions_complete = false;
      log_warn("resolution of summand " + std::to_string(s) + " did not terminate within " +
               std::to_string(max_length) + " steps");
    }
    log_debug("summand " + std::to_string(s) + ": resolution length " + std::to_string(-r.lo));
    tw.resolutions.push_back(std::move(r));
  }

  auto rank = [&](int s, int q) {
    const auto& r = tw.resolutions[s];
    return (q >= r.lo && q <= 0) ? r.at(q).rank : 0;
  };
  std::map<std::tuple<int, int, int>, OperatorMatrix> piece;  // (sigma, q, tau)
  std::map<std::pair<int, int>, std::unique_ptr<Lifter>> lifters;
  auto get_piece = [&](int s, int q, int t) -> const OperatorMatrix* {
    auto it = piece.find({s, q, t});
    return it == piece.end() ? nullptr : &it->second;
  };

  int max_jump = c.hi() - c.lo;
  for (int k = 1; k <= max_jump; ++k) {
    for (int s = 0; s < S; ++s) {
      int pt = tw.column[s] + k;
      if (pt > c.hi()) continue;
      for (int t : by_column[pt - c.lo]) {
        for (int q = 0; q >= tw.resolutions[s].lo; --q) {
          int qt = q + 1 - k;
          if (rank(s, q) == 0 || rank(t, qt) == 0) continue;
          if (k == 1 && q == 0) {
            const OperatorMatrix& d = c.d(tw.column[s]);
            OperatorMatrix m(rank(s, 0), rank(t, 0), n);
            for (int i = 0; i < m.rows(); ++i)
              for (int j = 0; j < m.cols(); ++j) m.at(i, j) = d.at(offset[s] + i, offset[t] + j);
            if (!m.is_zero()) piece.emplace(std::make_tuple(s, q, t), std::move(m));
            continue;
          }
          // D_k D_0 + D_0 D_k + sum D_a D_{k-a} = 0 solved for D_k
          OperatorMatrix Y(rank(s, q), rank(t, qt + 1), n);
          if (q + 1 <= 0)
            if (const auto* up = get_piece(s, q + 1, t))
              Y = add(Y, tw.resolutions[s].d(q).then(*up));
          for (int a = 1; a < k; ++a)
            for (int rho : by_column[tw.column[s] + a - c.lo]) {
              const auto* first = get_piece(s, q, rho);
              if (!first) continue;
              const auto* second = get_piece(rho, q + 1 - a, t);
              if (!second) continue;
              Y = add(Y, first->then(*second));
            }
          if (Y.is_zero()) continue;
          Y = negate(Y);
          if (qt < tw.resolutions[t].lo)
            throw Inconsistency("v_strict_complex: homotopy needs a longer resolution");
          auto key = std::make_pair(t, qt);
          if (!lifters.count(key))
            lifters[key] = std::make_unique<Lifter>(tw.resolutions[t].d(qt).row_vectors(),
                                                    rank(t, qt + 1), n);
          std::vector<ModuleElement> rows;
          for (int i = 0; i < Y.rows(); ++i) {
            if (Y.row(i).is_zero()) {
              rows.push_back(ModuleElement(rank(t, qt), n));
              continue;
            }
            auto l = lifters[key]->lift(Y.row(i));
            if (!l) throw Inconsistency("v_strict_complex: lift of a comparison map failed");
            rows.push_back(*l);
          }
          piece.emplace(std::make_tuple(s, q, t), OperatorMatrix(rows, rank(t, qt), n));
        }
      }
    }
  }

  // shift constants, highest column first
  tw.shift_constant.assign(S, 0);
  std::vector<int> order(S);
  for (int s = 0; s < S; ++s) order[s] = s;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return tw.column[a] > tw.column[b]; });
  for (int s : order) {
    bool any = false;
    long need = 0;
    for (const auto& [key, m] : piece) {
      auto [src, q, t] = key;
      if (src != s) continue;
      int qt = q + 1 - (tw.column[t] - tw.column[s]);
      ShiftVector tshift = tw.resolutions[t].at(qt).shift_or_zero();
      for (auto& v : tshift) v += tw.shift_constant[t];
      ShiftVector sshift = tw.resolutions[s].at(q).shift_or_zero();
      for (int i = 0; i < m.rows(); ++i) {
        if (m.row(i).is_zero()) continue;
        long req = v_degree(m.row(i), spec, tshift) - sshift[i];
        need = any ? std::max(need, req) : req;
        any = true;
      }
    }
    tw.shift_constant[s] = any ? need : 0;
  }

  // assemble the total complex
  int tlo = 0, thi = c.hi();
  for (int s = 0; s < S; ++s) tlo = std::min(tlo, tw.column[s] + tw.resolutions[s].lo);
  tlo = std::min(tlo, c.lo);
  ChainComplexPres& T = tw.total;
  T.n = n;
  T.lo = tlo;
  std::vector<std::vector<std::pair<int, int>>> parts;  // (summand, offset) per degree
  for (int deg = tlo; deg <= thi; ++deg) {
    DModPresentation M;
    M.n = n;
    std::vector<std::pair<int, int>> here;
    for (int s = 0; s < S; ++s) {
      int q = deg - tw.column[s];
      if (rank(s, q) == 0) continue;
      here.push_back({s, M.rank});
      M.blocks.push_back(rank(s, q));
      for (long v : tw.resolutions[s].at(q).shift_or_zero()) M.shift.push_back(v + tw.shift_constant[s]);
      for (int i = 0; i < rank(s, q); ++i)
        M.generator_labels.push_back("s" + std::to_string(s) + ":q" + std::to_string(q) + ":" +
                                     std::to_string(i));
      M.rank += rank(s, q);
    }
    T.modules.push_back(std::move(M));
    parts.push_back(std::move(here));
  }
  for (int deg = tlo; deg < thi; ++deg) {
    const auto& src = T.modules[deg - tlo];
    const auto& tgt = T.modules[deg + 1 - tlo];
    OperatorMatrix m(src.rank, tgt.rank, n);
    auto place = [&](const OperatorMatrix& blk, int ro, int co) {
      for (int i = 0; i < blk.rows(); ++i)
        for (int j = 0; j < blk.cols(); ++j)
          if (!blk.at(i, j).is_zero()) m.at(ro + i, co + j) = blk.at(i, j);
    };
    for (auto [s, ro] : parts[deg - tlo]) {
      int q = deg - tw.column[s];
      for (auto [t, co] : parts[deg + 1 - tlo]) {
        if (t == s) {
          place(tw.resolutions[s].d(q), ro, co);
        } else if (const auto* p = get_piece(s, q, t)) {
          place(*p, ro, co);
        }
      }
    }
    m.source_shift = src.shift;
    m.target_shift = tgt.shift;
    T.differentials.push_back(DModMap{std::move(m)});
  }
  for (int deg = tlo; deg + 1 < thi; ++deg)
    if (!T.d(deg).then(T.d(deg + 1)).is_zero())
      throw Inconsistency("v_strict_complex: total differential does not square to zero at degree " +
                          std::to_string(deg));
  return tw;
}

}  // namespace derham
