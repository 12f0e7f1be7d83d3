#include "derham/restriction.hpp"

#include <algorithm>
#include <functional>

#include "derham/engine.hpp"
#include "derham/groebner.hpp"
#include "derham/log.hpp"

namespace derham {

TruncationWindow integer_root_window(const ThetaPolynomial& b) {
  auto roots = b.integer_roots();
  if (roots.empty()) return {};
  return {roots.front(), roots.back()};
}

TruncationWindow hull(const TruncationWindow& a, const TruncationWindow& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return {std::min(a.k0, b.k0), std::max(a.k1, b.k1)};
}

namespace {

// scales so the first nonzero component has canonical leading coefficient 1
ModuleElement normalize(const ModuleElement& v) {
  for (int i = 0; i < v.rank(); ++i)
    if (!v[i].is_zero()) {
      Scalar c = 1 / v[i].terms().front().coeff;
      ModuleElement out = v;
      for (int k = 0; k < out.rank(); ++k) out[k] = out[k] * c;
      return out;
    }
  return v;
}

}  // namespace

ChainComplexPres fourier_complex(const ChainComplexPres& c) {
  ChainComplexPres out = c;
  for (auto& m : out.modules) {
    for (auto& r : m.relations) r = normalize(fourier(r));
    for (auto& l : m.generator_labels) l = "F[" + l + "]";
  }
  for (auto& d : out.differentials) {
    OperatorMatrix f = fourier(d.matrix);
    f.source_shift = d.matrix.source_shift;
    f.target_shift = d.matrix.target_shift;
    d.matrix = std::move(f);
  }
  return out;
}

// ---- b-functions ----

namespace {

using engine::GPoly;

// Full reduction of V-homogeneous elements by the leading forms of a V-GB.
class GrReducer {
 public:
  GrReducer(const std::vector<ModuleElement>& vgb, FiltrationSpec spec, const ShiftVector& shift,
            int rank, int n)
      : rank_(rank), n_(n) {
    TermOrder order{spec, shift};
    ord_ = make_engine_order(n, rank, order, false);
    for (const auto& g : vgb) {
      if (g.is_zero()) continue;
      GPoly p = engine::to_gpoly(v_leading_form(g, spec, shift), ord_);
      engine::make_monic(p);
      basis_.push_back(std::move(p));
    }
  }
  GPoly nf(const ModuleElement& w) const {
    return engine::reduce(engine::to_gpoly(w, ord_), basis_, ord_, true);
  }
  ModuleElement back(const GPoly& p) const { return engine::to_module(p, rank_, n_, n_); }
  const engine::EngineOrder& order() const { return ord_; }

 private:
  int rank_;
  int n_;
  engine::EngineOrder ord_;
  std::vector<GPoly> basis_;
};

ModuleElement apply_theta_poly(const UniPoly& p, const WeylElement& th, const ModuleElement& w) {
  ModuleElement acc(w.rank(), w.nvars());
  for (int i = p.degree(); i >= 0; --i) {
    acc = th * acc;
    ModuleElement c = w;
    for (int k = 0; k < c.rank(); ++k) c[k] = c[k] * p.coeffs()[i];
    acc += c;
  }
  return acc;
}

}  // namespace

UniPoly theta_minimal_polynomial(const ModuleElement& kappa, const std::vector<ModuleElement>& vgb,
                                 FiltrationSpec spec, const ShiftVector& shift, int max_degree) {
  const int n = kappa.nvars(), rank = kappa.rank();
  if (spec.d <= 0 || spec.d > n) throw InvalidInput("theta_minimal_polynomial: bad filtration");
  const long lambda = v_degree(kappa, spec, shift);
  if (lambda == kMinusInfinity) return UniPoly::constant(1);
  GrReducer R(vgb, spec, shift, rank, n);
  const auto& ord = R.order();
  WeylElement th = theta(n, spec);
  ModuleElement top = v_leading_form(kappa, spec, shift);

  struct Row {
    GPoly v;
    std::vector<Scalar> combo;
  };
  std::vector<Row> echelon;
  GPoly w = R.nf(top);
  for (int t = 0; t <= max_degree; ++t) {
    GPoly v = w;
    std::vector<Scalar> combo(t + 1);
    combo[t] = 1;
    // echelon rows have distinct leading terms; eliminate until v vanishes or is new
    bool changed = true;
    while (!v.empty() && changed) {
      changed = false;
      for (const auto& row : echelon) {
        const auto& a = v.front();
        const auto& b = row.v.front();
        if (a.pos == b.pos && a.m == b.m) {
          Scalar c = -a.c / b.c;
          v = engine::add_scaled(v, row.v, c, ord);
          for (std::size_t i = 0; i < row.combo.size(); ++i) combo[i] += c * row.combo[i];
          changed = true;
          break;
        }
      }
    }
    if (v.empty()) {
      UniPoly p(combo);
      return p.monic();
    }
    echelon.push_back({v, combo});
    w = R.nf(th * R.back(w));
  }
  throw BBoundExceeded("b-function degree exceeds " + std::to_string(max_degree) +
                       " (module not specializable or bound too low)");
}

namespace {

std::vector<ModuleElement> relation_vgb(const DModPresentation& pres, FiltrationSpec spec) {
  if (pres.relations.empty()) return {};
  return groebner_basis(pres.relations, TermOrder{spec, pres.shift_or_zero()}, pres.rank, pres.n)
      .elements;
}

}  // namespace

ThetaPolynomial restriction_b_function_module(const DModPresentation& pres, FiltrationSpec spec,
                                              int max_degree) {
  if (spec.d <= 0) throw InvalidInput("restriction b-function needs d > 0");
  auto shift = pres.shift_or_zero();
  auto gb = relation_vgb(pres, spec);
  UniPoly b = UniPoly::constant(1);
  for (int i = 0; i < pres.rank; ++i) {
    UniPoly p = theta_minimal_polynomial(ModuleElement::unit(pres.rank, pres.n, i), gb, spec,
                                         shift, max_degree);
    b = lcm(b, p.shifted(Scalar(-shift[i])));
  }
  return b;
}

BFunctionCertificate certify_b_function(const DModPresentation& pres, FiltrationSpec spec,
                                        const ThetaPolynomial& b) {
  auto shift = pres.shift_or_zero();
  auto gb = relation_vgb(pres, spec);
  GrReducer R(gb, spec, shift, pres.rank, pres.n);
  WeylElement th = theta(pres.n, spec);
  auto kills = [&](const UniPoly& cand) {
    for (int i = 0; i < pres.rank; ++i) {
      ModuleElement e = ModuleElement::unit(pres.rank, pres.n, i);
      // b(theta + lambda) e, taken in gr^lambda
      ModuleElement y = apply_theta_poly(cand.shifted(Scalar(shift[i])), th, e);
      ModuleElement top(pres.rank, pres.n);
      if (!y.is_zero() && v_degree(y, spec, shift) >= shift[i]) {
        if (v_degree(y, spec, shift) > shift[i]) return false;
        top = v_leading_form(y, spec, shift);
      }
      if (!R.nf(top).empty()) return false;
    }
    return true;
  };
  BFunctionCertificate cert;
  cert.annihilates = kills(b);
  cert.minimal = true;
  for (long k : b.integer_roots()) {
    UniPoly q, r;
    b.divmod(UniPoly::linear_root(Scalar(k)), q, r);
    if (kills(q)) cert.minimal = false;
  }
  return cert;
}

ComplexBFunction b_function_of_complex(const ChainComplexPres& A, FiltrationSpec spec,
                                       int max_degree) {
  if (!A.is_free()) throw InvalidInput("b_function_of_complex expects a free complex");
  const int n = A.n;
  ComplexBFunction out;
  out.b = UniPoly::constant(1);
  std::vector<KernelImage> ki;
  for (int k = A.lo; k < A.hi(); ++k) {
    const auto& src = A.at(k);
    const auto& tgt = A.at(k + 1);
    ki.push_back(kernel_and_image(A.d(k).row_vectors(), tgt.rank, n, spec, src.shift_or_zero(),
                                  tgt.shift_or_zero()));
  }
  for (int k = A.lo; k <= A.hi(); ++k) {
    const auto& M = A.at(k);
    auto shift = M.shift_or_zero();
    KernelGeneratorSet set;
    set.position = k;
    if (k < A.hi()) {
      set.kappa = ki[k - A.lo].kernel;
    } else {
      for (int i = 0; i < M.rank; ++i) set.kappa.push_back(ModuleElement::unit(M.rank, n, i));
    }
    const std::vector<ModuleElement> none;
    const auto& im = k > A.lo ? ki[k - 1 - A.lo].image : none;
    for (const auto& kap : set.kappa) {
      long lam = v_degree(kap, spec, shift);
      UniPoly p = theta_minimal_polynomial(kap, im, spec, shift, max_degree);
      set.lambda.push_back(lam);
      set.b.push_back(p);
      out.b = lcm(out.b, p.shifted(Scalar(-lam)));
    }
    out.kernels.push_back(std::move(set));
  }
  return out;
}

// ---- truncation ----

namespace {

void monomials_of_degree(int n, int total, std::vector<Mono>& out) {
  Mono m;
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      m.d(i) = static_cast<std::uint16_t>(left);
      out.push_back(m);
      return;
    }
    for (int a = left; a >= 0; --a) {
      m.d(i) = static_cast<std::uint16_t>(a);
      rec(i + 1, left - a);
    }
  };
  rec(0, total);
}

struct MonoKeyLess {
  bool operator()(const RestrictedMonomial& a, const RestrictedMonomial& b) const {
    if (a.generator != b.generator) return a.generator < b.generator;
    return a.beta.e < b.beta.e;
  }
};

}  // namespace

TruncatedComplex omega_tensor_truncate(const ChainComplexPres& A, const TruncationWindow& w) {
  if (!A.is_free()) throw InvalidInput("omega_tensor_truncate expects a free complex");
  const int n = A.n;
  TruncatedComplex out;
  out.lo = A.lo;
  std::vector<std::map<RestrictedMonomial, int, MonoKeyLess>> index;
  for (int k = A.lo; k <= A.hi(); ++k) {
    const auto& M = A.at(k);
    auto shift = M.shift_or_zero();
    std::vector<RestrictedMonomial> basis;
    if (!w.empty()) {
      for (int j = 0; j < M.rank; ++j) {
        long lo = std::max<long>(0, w.k0 - shift[j]), hi = w.k1 - shift[j];
        for (long t = lo; t <= hi; ++t) {
          std::vector<Mono> ms;
          monomials_of_degree(n, static_cast<int>(t), ms);
          for (const auto& m : ms) basis.push_back({j, m});
        }
      }
    }
    std::map<RestrictedMonomial, int, MonoKeyLess> idx;
    for (std::size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = static_cast<int>(i);
    index.push_back(std::move(idx));
    out.bases.push_back(std::move(basis));
  }
  for (int k = A.lo; k < A.hi(); ++k) {
    const auto& src = out.bases[k - A.lo];
    const auto& tgt_index = index[k + 1 - A.lo];
    auto tshift = A.at(k + 1).shift_or_zero();
    const OperatorMatrix& d = A.d(k);
    RationalMatrix m(static_cast<int>(src.size()), static_cast<int>(out.bases[k + 1 - A.lo].size()));
    for (std::size_t r = 0; r < src.size(); ++r) {
      const Mono& beta = src[r].beta;
      for (int l = 0; l < d.cols(); ++l) {
        for (const auto& term : d.at(src[r].generator, l).terms()) {
          // d^beta x^a d^b modulo x D keeps only the fully contracted part
          Scalar c = term.coeff;
          Mono g;
          bool ok = true;
          for (int i = 0; i < n && ok; ++i) {
            int a = term.mono.x(i), b = beta.d(i);
            if (a > b) {
              ok = false;
              break;
            }
            for (int q = 0; q < a; ++q) c *= (b - q);
            g.d(i) = static_cast<std::uint16_t>(b - a + term.mono.d(i));
          }
          if (!ok) continue;
          long deg = g.degree() + tshift[l];
          if (deg > w.k1)
            throw Inconsistency("omega_tensor_truncate: differential raises the V-degree");
          if (deg < w.k0) continue;
          auto it = tgt_index.find({l, g});
          if (it == tgt_index.end()) throw Inconsistency("omega_tensor_truncate: basis lookup failed");
          m.at(static_cast<int>(r), it->second) += c;
        }
      }
    }
    out.maps.push_back(std::move(m));
  }
  return out;
}

std::map<int, long> cohomology_dims(const TruncatedComplex& t) {
  std::vector<int> ranks;
  for (std::size_t i = 0; i < t.maps.size(); ++i) {
    if (i + 1 < t.maps.size() && !(t.maps[i] * t.maps[i + 1]).is_zero())
      throw Inconsistency("cohomology_dims: consecutive maps do not compose to zero");
    ranks.push_back(t.maps[i].rank());
  }
  std::map<int, long> dims;
  for (int k = t.lo; k <= t.hi(); ++k) {
    std::size_t i = k - t.lo;
    long dim = static_cast<long>(t.bases[i].size());
    if (i < ranks.size()) dim -= ranks[i];
    if (i > 0) dim -= ranks[i - 1];
    dims[k] = dim;
  }
  return dims;
}

nlohmann::json to_json(const TruncatedComplex& t) {
  nlohmann::json j;
  j["lo"] = t.lo;
  nlohmann::json bases = nlohmann::json::array();
  for (const auto& b : t.bases) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : b) {
      int n = 0;
      for (int i = 0; i < kMaxVars; ++i)
        if (m.beta.d(i)) n = i + 1;
      arr.push_back({{"generator", m.generator},
                     {"monomial", WeylElement::monomial(std::max(n, 1), std::max(n, 1), m.beta, 1).to_string()}});
    }
    bases.push_back(arr);
  }
  j["bases"] = bases;
  nlohmann::json maps = nlohmann::json::array();
  for (const auto& m : t.maps) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).get_str());
      rows.push_back(row);
    }
    maps.push_back(rows);
  }
  j["maps"] = maps;
  return j;
}

}  // namespace derham
