#pragma once

#include "corruga/analysis.hpp"
#include "corruga/warping.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace corruga {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  std::vector<std::pair<std::string, double>> metrics;
};

struct VerifyOptions {
  int resolution = 64;
  std::vector<int> refinement{32, 64, 128};
  int lemma_resolution = 128;
  int lemma_fields = 20;
  int lemma_harmonics = 5;
  std::uint64_t seed = 20240917;
  /// Values below this are treated as round-off when judging O(h^2) decay.
  double roundoff_floor = 1e-10;
};

/// Memoized analyses of built-in surfaces, shared between criteria.
class VerificationContext {
 public:
  explicit VerificationContext(VerifyOptions options = {}) : options_(std::move(options)) {}
  const VerifyOptions& options() const { return options_; }
  const Analysis& analysis(const std::string& surface, int resolution);

 private:
  VerifyOptions options_;
  std::map<std::pair<std::string, int>, std::unique_ptr<Analysis>> cache_;
};

struct DecayCheck {
  bool passed = false;
  double order = 0;  // fitted slope of log value against log resolution, NaN if not fitted
};

/// Second-order decay under refinement: values above `floor` must decrease
/// strictly and their fitted order must reach `min_order`. Values at or
/// below the floor are round-off and pass.
DecayCheck check_decay(const std::vector<double>& values, const std::vector<int>& resolutions,
                       double floor, double min_order = 1.5);

/// Element of a bending space with chi_12 = 0, normalized to chi_11 = 1
/// (or chi_22 = 1 when chi_11 vanishes). Empty when not unique.
std::optional<Mat2> untwisted_bending(const std::vector<Mat2>& chi_basis);

/// Surfaces the sweeps run over: the five families plus the curved hybrids.
std::vector<std::string> sweep_surfaces();

CriterionResult check_plane(VerificationContext& ctx);                 // 1
CriterionResult check_simple_corrugation(VerificationContext& ctx);    // 2
CriterionResult check_eggbox(VerificationContext& ctx);                // 3
CriterionResult check_miura(VerificationContext& ctx);                 // 4
CriterionResult check_translation(VerificationContext& ctx);           // 5
CriterionResult check_orthogonality_sweep(VerificationContext& ctx);   // 6
CriterionResult check_dimension_bound(VerificationContext& ctx);       // 7
CriterionResult check_growth_identities(VerificationContext& ctx);     // 8
CriterionResult check_symmetry_lemma(VerificationContext& ctx);        // 9
CriterionResult check_scaling_limit(VerificationContext& ctx);         // 10
CriterionResult check_warping(VerificationContext& ctx);               // 11
CriterionResult check_oracle_projection(VerificationContext& ctx);     // 12
CriterionResult check_reparametrization(VerificationContext& ctx);     // 13

/// Criterion ids of a suite: examples, lemma, scaling, warping or all.
std::vector<int> suite_criteria(const std::string& suite);
CriterionResult run_criterion(int id, VerificationContext& ctx);
std::vector<CriterionResult> run_suite(const std::string& suite, VerificationContext& ctx);

std::string format_line(const CriterionResult& r);
std::string summary_json(const std::vector<CriterionResult>& results, int indent = 2);

}  // namespace corruga
