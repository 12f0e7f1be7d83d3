#pragma once

// Buchberger engine over (homogenized) Weyl algebras with central variables.
// Everything above this layer speaks ModuleElement; the engine speaks GPoly.

#include <array>
#include <vector>

#include "derham/module.hpp"

namespace derham::engine {

struct GTerm {
  Mono m;
  int pos = 0;
  Scalar c;
};

/// Terms sorted strictly decreasing under the active EngineOrder.
using GPoly = std::vector<GTerm>;

/// Module term order. Comparison sequence:
///   homogenized total degree + tdshift (homogenized mode only),
///   block (smaller block dominates), weight vectors, shifted V_d-degree,
///   |alpha|+|beta| + tdshift, reverse lexicographic on (x.., d..), position.
struct EngineOrder {
  int nvars = 0;
  int nweyl = 0;
  bool homogenized = false;
  int d = 0;                                // V-weight on the first d pairs
  std::vector<long> vshift;                 // per position
  std::vector<long> tdshift;                // per position
  std::vector<int> block;                   // per position
  std::vector<std::array<int, 2 * kMaxVars>> weights;  // x slots then d slots

  long vs(int pos) const { return vshift.empty() ? 0 : vshift[pos]; }
  long ts(int pos) const { return tdshift.empty() ? 0 : tdshift[pos]; }
  int blk(int pos) const { return block.empty() ? 0 : block[pos]; }

  /// <0, 0, >0 as a is smaller, equal, greater than b.
  int compare(const Mono& a, int pa, const Mono& b, int pb) const;
  bool greater(const GTerm& a, const GTerm& b) const {
    return compare(a.m, a.pos, b.m, b.pos) > 0;
  }
};

struct EngineOptions {
  bool chain_criterion = true;
  /// Abort with Inconsistency after this many S-pair reductions (0 = no cap).
  long max_pairs = 0;
};

void sort_poly(GPoly& p, const EngineOrder& ord);

GPoly to_gpoly(const ModuleElement& v, const EngineOrder& ord);
/// Homogenizes so that every term has h-degree + |alpha|+|beta| + tdshift equal.
GPoly homogenize(const ModuleElement& v, const EngineOrder& ord);
ModuleElement to_module(const GPoly& p, int rank, int nvars, int nweyl);

/// a + c * b
GPoly add_scaled(const GPoly& a, const GPoly& b, const Scalar& c, const EngineOrder& ord);
/// (c * m) * p with m on the left.
GPoly mul_term(const Mono& m, const Scalar& c, const GPoly& p, const EngineOrder& ord);
void make_monic(GPoly& p);

/// Division with remainder. `full` also reduces non-leading terms.
/// When `quotients` is non-null, records q with p = sum q_i * basis_i + r,
/// each q_i a GPoly at position 0 in the same ring.
GPoly reduce(GPoly p, const std::vector<GPoly>& basis, const EngineOrder& ord, bool full,
             std::vector<GPoly>* quotients = nullptr);

/// Polynomial with its cofactor vector over the input generators
/// (positions of `cof` index the inputs).
struct Tracked {
  GPoly p;
  GPoly cof;
  long sugar = -1;  // filled in by the engine when negative
};

/// Division that keeps t.p - (original) = -sum(...) in step with t.cof.
void reduce_tracked(Tracked& t, const std::vector<const Tracked*>& basis, const EngineOrder& ord,
                    const EngineOrder& cord, bool full);

/// Buchberger with cofactor tracking; `cord` orders cofactor vectors.
std::vector<Tracked> buchberger_tracked(std::vector<Tracked> input, const EngineOrder& ord,
                                        const EngineOrder& cord, const EngineOptions& opt = {});

/// Reduced-leading-term Groebner basis of the input (already converted).
std::vector<GPoly> buchberger(std::vector<GPoly> input, const EngineOrder& ord,
                              const EngineOptions& opt = {});

/// Sets h := 1, re-sorts under the plain order, normalizes, and drops
/// elements certified redundant by a bounded top-reduction.
std::vector<GPoly> dehomogenize_prune(std::vector<GPoly> G, const EngineOrder& ord);

/// Full pipeline on module elements: homogenizes when ord.homogenized,
/// runs Buchberger, dehomogenizes and minimalizes the leading monomials.
std::vector<ModuleElement> groebner(const std::vector<ModuleElement>& gens, int rank,
                                    const EngineOrder& ord, const EngineOptions& opt = {});

/// Leading (mono, position) of a nonzero element after dehomogenization.
GTerm leading(const ModuleElement& v, const EngineOrder& ord);

}  // namespace derham::engine
