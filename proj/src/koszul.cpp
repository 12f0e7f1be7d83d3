#include "derham/koszul.hpp"

#include <array>
#include <functional>

#include "derham/engine.hpp"
#include "derham/groebner.hpp"

namespace derham {

int GradedComplexData::dimension(int i, long j) const {
  auto it = dim.find({i, j});
  return it == dim.end() ? 0 : it->second;
}

RationalMatrix GradedComplexData::delta_at(int i, long j) const {
  auto it = delta.find({i, j});
  return it != delta.end() ? it->second : RationalMatrix(dimension(i, j), dimension(i + 1, j));
}

RationalMatrix GradedComplexData::x_at(int l, int i, long j) const {
  auto it = x.find({l, i, j});
  return it != x.end() ? it->second : RationalMatrix(dimension(i, j), dimension(i, j - 1));
}

namespace {

using Exps = std::array<std::uint16_t, 2 * kMaxVars + 1>;
using Key = std::pair<int, Exps>;

struct Piece {
  std::vector<std::pair<int, Mono>> basis;
  std::map<Key, int> index;
};

long graded_degree(const Mono& m, int d) {
  long s = 0;
  for (int i = 0; i < d; ++i) s += long(m.d(i)) - long(m.x(i));
  return s;
}

struct GradedModule {
  int n = 0, rank = 0, d = 0;
  ShiftVector shift;
  GroebnerBasis gb;
  std::map<long, Piece> pieces;

  // Coordinates of e (homogeneous of grading j) in piece j.
  std::vector<Scalar> coords(const ModuleElement& e, long j) const {
    const Piece& p = pieces.at(j);
    std::vector<Scalar> v(p.basis.size());
    ModuleElement r = gb.elements.empty() ? e : normal_form(e, gb);
    for (int c = 0; c < r.rank(); ++c)
      for (const auto& t : r[c].terms()) {
        auto it = p.index.find({c, t.mono.e});
        if (it == p.index.end()) {
          if (graded_degree(t.mono, d) + shift[c] != j)
            throw InvalidInput("graded_pieces: map or relation is not V-homogeneous");
          throw InvalidInput("graded_pieces: exponent bound too small for grading " + std::to_string(j));
        }
        v[it->second] += t.coeff;
      }
    return v;
  }

  ModuleElement basis_element(long j, int b) const {
    const auto& [pos, m] = pieces.at(j).basis[b];
    ModuleElement e(rank, n);
    e[pos] = WeylElement::monomial(n, n, m, 1);
    return e;
  }
};

GradedModule build_module(const DModPresentation& p, FiltrationSpec spec, long jlo, long jhi, int E) {
  GradedModule g;
  g.n = p.n;
  g.rank = p.rank;
  g.d = spec.d;
  g.shift = p.shift_or_zero();
  for (const auto& r : p.relations) {
    long deg = 0;
    bool first = true;
    for (int c = 0; c < r.rank(); ++c)
      for (const auto& t : r[c].terms()) {
        long dd = graded_degree(t.mono, spec.d) + g.shift[c];
        if (!first && dd != deg) throw InvalidInput("graded_pieces: relation is not V-homogeneous");
        deg = dd;
        first = false;
      }
  }
  TermOrder plain{FiltrationSpec{0}, {}};
  g.gb = groebner_basis(p.relations, plain, p.rank, p.n);
  auto ord = make_engine_order(p.n, p.rank, plain, false);
  std::vector<engine::GTerm> leads;
  for (const auto& e : g.gb.elements) leads.push_back(engine::leading(e, ord));
  for (long j = jlo; j <= jhi; ++j) g.pieces[j];

  const int slots = 2 * p.n;
  Mono m;
  std::function<void(int)> rec = [&](int k) {
    if (k == slots) {
      for (int pos = 0; pos < p.rank; ++pos) {
        long j = graded_degree(m, spec.d) + g.shift[pos];
        if (j < jlo || j > jhi) continue;
        bool standard = true;
        for (const auto& l : leads)
          if (l.pos == pos && l.m.divides(m)) standard = false;
        if (!standard) continue;
        for (int i = 0; i < 2 * kMaxVars; ++i)
          if (m.e[i] + 1 >= E)
            throw InvalidInput("graded_pieces: piece " + std::to_string(j) +
                               " reaches the exponent bound; it may be infinite");
        Piece& pc = g.pieces[j];
        pc.index[{pos, m.e}] = static_cast<int>(pc.basis.size());
        pc.basis.push_back({pos, m});
      }
      return;
    }
    std::uint16_t& slot = k < p.n ? m.x(k) : m.d(k - p.n);
    for (int a = 0; a < E; ++a) {
      slot = static_cast<std::uint16_t>(a);
      rec(k + 1);
    }
    slot = 0;
  };
  rec(0);
  return g;
}

RationalMatrix from_rows(const std::vector<std::vector<Scalar>>& rows, int cols) {
  RationalMatrix M(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < cols; ++j) M.at(i, j) = rows[i][j];
  return M;
}

// Basis of {v : v M = 0}.
std::vector<std::vector<Scalar>> left_kernel(const RationalMatrix& M) {
  const int R = M.rows(), C = M.cols();
  // reduced row echelon form of M^T
  std::vector<std::vector<Scalar>> a(C, std::vector<Scalar>(R));
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j) a[j][i] = M.at(i, j);
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < R && row < C; ++col) {
    int p = -1;
    for (int i = row; i < C; ++i)
      if (a[i][col] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[row]);
    Scalar inv = 1 / a[row][col];
    for (auto& v : a[row]) v *= inv;
    for (int i = 0; i < C; ++i)
      if (i != row && a[i][col] != 0) {
        Scalar f = a[i][col];
        for (int k = 0; k < R; ++k) a[i][k] -= f * a[row][k];
      }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(R, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> out;
  for (int f = 0; f < R; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(R);
    v[f] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Scalar> times(const std::vector<Scalar>& v, const RationalMatrix& M) {
  std::vector<Scalar> out(M.cols());
  for (int i = 0; i < M.rows(); ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < M.cols(); ++j) out[j] += v[i] * M.at(i, j);
  }
  return out;
}

// Minimal monic p with v p(T) in span(sub); sub is T-stable.
UniPoly relative_minimal_polynomial(const std::vector<Scalar>& v, const RationalMatrix& T,
                                    const std::vector<std::vector<Scalar>>& sub) {
  struct Row {
    std::vector<Scalar> v;
    std::vector<Scalar> combo;
    int pivot;
  };
  std::vector<Row> ech;
  auto reduce = [&](std::vector<Scalar>& w, std::vector<Scalar>& combo) {
    for (const auto& r : ech) {
      if (w[r.pivot] == 0) continue;
      Scalar f = w[r.pivot] / r.v[r.pivot];
      for (std::size_t k = 0; k < w.size(); ++k) w[k] -= f * r.v[k];
      for (std::size_t k = 0; k < r.combo.size(); ++k) {
        if (combo.size() < r.combo.size()) combo.resize(r.combo.size());
        combo[k] -= f * r.combo[k];
      }
    }
  };
  auto insert = [&](std::vector<Scalar> w, std::vector<Scalar> combo) -> std::optional<std::vector<Scalar>> {
    reduce(w, combo);
    for (std::size_t k = 0; k < w.size(); ++k)
      if (w[k] != 0) {
        ech.push_back({std::move(w), std::move(combo), static_cast<int>(k)});
        return std::nullopt;
      }
    return combo;
  };
  for (const auto& s : sub) insert(s, {});
  std::vector<Scalar> w = v;
  for (std::size_t t = 0;; ++t) {
    std::vector<Scalar> combo(t + 1);
    combo[t] = 1;
    if (auto dep = insert(w, combo)) {
      dep->resize(t + 1);
      return UniPoly(*dep);
    }
    w = times(w, T);
  }
}

}  // namespace

GradedComplexData graded_pieces(const ChainComplexPres& c, FiltrationSpec spec, long jlo, long jhi,
                                int exponent_bound) {
  if (spec.d < 1 || spec.d > c.n) throw InvalidInput("graded_pieces: need 1 <= d <= n");
  GradedComplexData L;
  L.d = spec.d;
  L.lo = c.lo;
  L.hi = c.hi();
  L.jlo = jlo;
  L.jhi = jhi;
  std::vector<GradedModule> mods;
  for (const auto& p : c.modules) mods.push_back(build_module(p, spec, jlo, jhi, exponent_bound));
  WeylElement th = theta(c.n, spec);
  for (int i = c.lo; i <= c.hi(); ++i) {
    const GradedModule& M = mods[i - c.lo];
    for (long j = jlo; j <= jhi; ++j) {
      int dim = static_cast<int>(M.pieces.at(j).basis.size());
      L.dim[{i, j}] = dim;
      std::vector<std::vector<Scalar>> rows;
      for (int b = 0; b < dim; ++b) rows.push_back(M.coords(th * M.basis_element(j, b), j));
      L.theta[{i, j}] = from_rows(rows, dim);
      if (j > jlo) {
        int dim_below = static_cast<int>(M.pieces.at(j - 1).basis.size());
        for (int l = 0; l < spec.d; ++l) {
          rows.clear();
          WeylElement xl = WeylElement::x(c.n, l);
          for (int b = 0; b < dim; ++b) rows.push_back(M.coords(xl * M.basis_element(j, b), j - 1));
          L.x[{l, i, j}] = from_rows(rows, dim_below);
        }
      }
      if (i < c.hi()) {
        const GradedModule& T = mods[i + 1 - c.lo];
        const OperatorMatrix& phi = c.d(i);
        rows.clear();
        for (int b = 0; b < dim; ++b) {
          const auto& [pos, m] = M.pieces.at(j).basis[b];
          ModuleElement out(T.rank, c.n);
          WeylElement mono = WeylElement::monomial(c.n, c.n, m, 1);
          for (int col = 0; col < T.rank; ++col) out[col] = mono * phi.at(pos, col);
          rows.push_back(T.coords(out, j));
        }
        L.delta[{i, j}] = from_rows(rows, static_cast<int>(T.pieces.at(j).basis.size()));
      }
    }
  }
  return L;
}

std::map<int, long> GradedKoszulComplex::cohomology() const {
  std::map<int, long> h;
  for (std::size_t t = 0; t < dims.size(); ++t) {
    long out = t < maps.size() ? maps[t].rank() : 0;
    long in = t > 0 ? maps[t - 1].rank() : 0;
    h[lo + static_cast<int>(t)] = dims[t] - out - in;
  }
  return h;
}

bool GradedKoszulComplex::exact() const {
  for (auto [t, v] : cohomology())
    if (v != 0) return false;
  return true;
}

GradedKoszulComplex graded_koszul(const GradedComplexData& L0, FiltrationSpec spec, long k) {
  if (spec.d != L0.d) throw InvalidInput("graded_koszul: filtration does not match the data");
  if (k < L0.jlo || k + spec.d > L0.jhi)
    throw InvalidInput("graded_koszul: gradings [" + std::to_string(k) + ", " +
                       std::to_string(k + spec.d) + "] are not all known");
  GradedComplexData K = L0;
  K.theta.clear();
  for (int l = 0; l < spec.d; ++l) {
    // cone of x_l: K'^t_j = K^t_{j+1} (+) K^{t-1}_j
    GradedComplexData N;
    N.d = K.d;
    N.lo = K.lo;
    N.hi = K.hi + 1;
    N.jlo = K.jlo;
    N.jhi = K.jhi - 1;
    for (int t = N.lo; t <= N.hi; ++t)
      for (long j = N.jlo; j <= N.jhi; ++j) N.dim[{t, j}] = K.dimension(t, j + 1) + K.dimension(t - 1, j);
    for (int t = N.lo; t <= N.hi; ++t)
      for (long j = N.jlo; j <= N.jhi; ++j) {
        int a0 = K.dimension(t, j + 1), a1 = K.dimension(t - 1, j);
        int b0 = K.dimension(t + 1, j + 1);
        RationalMatrix D(N.dimension(t, j), N.dimension(t + 1, j));
        RationalMatrix d00 = K.delta_at(t, j + 1), x01 = K.x_at(l, t, j + 1), d11 = K.delta_at(t - 1, j);
        Scalar sign = t % 2 == 0 ? 1 : -1;
        for (int r = 0; r < a0; ++r) {
          for (int c = 0; c < d00.cols(); ++c) D.at(r, c) = d00.at(r, c);
          for (int c = 0; c < x01.cols(); ++c) D.at(r, b0 + c) = sign * x01.at(r, c);
        }
        for (int r = 0; r < a1; ++r)
          for (int c = 0; c < d11.cols(); ++c) D.at(a0 + r, b0 + c) = d11.at(r, c);
        N.delta[{t, j}] = std::move(D);
        if (j - 1 < N.jlo) continue;
        for (int m = l + 1; m < spec.d; ++m) {
          RationalMatrix X(N.dimension(t, j), N.dimension(t, j - 1));
          RationalMatrix x0 = K.x_at(m, t, j + 1), x1 = K.x_at(m, t - 1, j);
          int c0 = K.dimension(t, j);
          for (int r = 0; r < a0; ++r)
            for (int c = 0; c < x0.cols(); ++c) X.at(r, c) = x0.at(r, c);
          for (int r = 0; r < a1; ++r)
            for (int c = 0; c < x1.cols(); ++c) X.at(a0 + r, c0 + c) = x1.at(r, c);
          N.x[{m, t, j}] = std::move(X);
        }
      }
    K = std::move(N);
  }
  GradedKoszulComplex out;
  out.lo = K.lo;
  for (int t = K.lo; t <= K.hi; ++t) {
    out.dims.push_back(K.dimension(t, k));
    if (t < K.hi) out.maps.push_back(K.delta_at(t, k));
  }
  for (std::size_t t = 0; t + 1 < out.maps.size(); ++t)
    if (!(out.maps[t] * out.maps[t + 1]).is_zero())
      throw Inconsistency("graded_koszul: slice differential does not square to zero");
  return out;
}

ThetaPolynomial graded_b_function(const GradedComplexData& L) {
  UniPoly b = UniPoly::constant(1);
  for (int i = L.lo; i <= L.hi; ++i)
    for (long j = L.jlo; j <= L.jhi; ++j) {
      auto th = L.theta.find({i, j});
      if (th == L.theta.end() || L.dimension(i, j) == 0) continue;
      auto ker = left_kernel(L.delta_at(i, j));
      std::vector<std::vector<Scalar>> im;
      RationalMatrix in = L.delta_at(i - 1, j);
      for (int r = 0; r < in.rows(); ++r) {
        std::vector<Scalar> row(in.cols());
        for (int c = 0; c < in.cols(); ++c) row[c] = in.at(r, c);
        im.push_back(std::move(row));
      }
      for (const auto& v : ker) b = lcm(b, relative_minimal_polynomial(v, th->second, im).shifted(-j));
    }
  return b;
}

}  // namespace derham
