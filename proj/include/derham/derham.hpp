#pragma once

// Top-level pipelines: cohomology of C^n minus Var(F), and its variant with
// supports in Var(G).

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "derham/presentations.hpp"
#include "derham/restriction.hpp"
#include "derham/strict.hpp"

namespace derham {

inline constexpr const char* kReportVersion = "1.0";

struct ProvidedLocalization {
  WeylElement f;
  long exponent = 0;
  std::vector<WeylElement> annihilator;
};

struct PipelineOptions {
  int max_b_degree = 20;
  int resolution_length = 0;  // 0 selects 2n + 2
  std::string dump_dir;       // empty: no dumps
  bool timings_in_json = false;
};

struct ProblemSpec {
  int n = 0;
  std::vector<std::string> var_names;  // empty: x1..xn
  std::vector<WeylElement> F;
  std::vector<WeylElement> G;          // only read by the support pipeline
  std::vector<ProvidedLocalization> provided;
  PipelineOptions options;

  /// Throws InvalidInput unless n >= 1, F is nonempty and no entry is zero.
  void validate(bool support) const;
};

struct SummandReport {
  int column = 0;
  std::string label;
  std::vector<int> resolution_ranks;  // degree 0 first
  long shift_constant = 0;
  ThetaPolynomial b;
  TruncationWindow window;
};

struct ResultReport {
  int n = 0, r = 0, s = 0;
  bool support = false;
  std::map<int, long> dims;  // dims[i] = dim H^i
  ThetaPolynomial b_function;
  TruncationWindow window;
  long exponent = 0;         // common localization exponent
  std::vector<SummandReport> summands;
  std::vector<int> total_ranks;
  int total_lo = 0;
  std::map<std::string, double> timings;  // seconds per stage
  bool resolutions_complete = true;

  long euler_characteristic() const;
  /// dims as a tuple 0..last, padded or cut to `length` when positive.
  std::vector<long> tuple(int length = 0) const;
};

ResultReport compute_derham(const ProblemSpec& spec);
ResultReport compute_derham_support(const ProblemSpec& spec);

nlohmann::json to_json(const ResultReport& r, bool with_timings = false);
std::string to_text(const ResultReport& r);

}  // namespace derham
