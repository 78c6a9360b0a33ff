#pragma once

#include "corruga/oracle.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace corruga {

struct AnalysisOptions {
  std::array<int, 2> resolution{32, 32};
  ThresholdPolicy policy = ThresholdPolicy::automatic();
  FilterOptions filter;
  std::uint64_t seed = 1;
};

struct PairResidual {
  int membrane = 0, bending = 0;  // indices into E_basis / chi_basis
  double index_form = 0;          // E11 chi22 - 2 E12 chi12 + E22 chi11
  double adjugate_form = 0;       // tr(adj(E) chi)
  double relative = 0;            // |index_form| / (|E|_F |chi|_F)
};

struct OracleComparison {
  std::string example;
  double projection_residual = 0;  // |u - F^k u| / |u|
  double fit_residual = 0;         // |u - P u| / |u| onto the extracted modes
  std::optional<Mat2> E_predicted, E_measured;
  std::optional<Mat2> chi_predicted, chi_measured;
  double E_error = 0;    // relative Frobenius error
  double chi_error = 0;
};

struct Timings {
  double grid = 0, assemble = 0, factor = 0, nullspace = 0, classify = 0, oracle = 0, total = 0;
};

/// One run of the full pipeline on a chart.
struct Analysis {
  Analysis(SurfaceChart c, AnalysisOptions o) : chart(std::move(c)), options(o) {}

  SurfaceChart chart;
  AnalysisOptions options;
  std::shared_ptr<const PeriodicGrid> grid;
  ConstraintSystem system;
  PeriodGeometry geometry;
  std::shared_ptr<const NullspaceFilter> filter;
  NullspaceResult nullspace;
  std::optional<StrainSpaces> spaces;  // empty when the rank was ambiguous
  std::vector<PairResidual> pairs;
  std::vector<PoissonRatios> poisson;  // one per E basis element
  std::vector<OracleComparison> oracle;
  double corner_residual = 0;  // max over modes of |A_corner u| / |u|
  double max_sigma = 0;
  Timings timings;

  bool ambiguous() const { return nullspace.decision.ambiguous || !spaces || spaces->ambiguous(); }
  std::array<int, 2> dims() const { return spaces ? spaces->dims : std::array<int, 2>{-1, -1}; }
  double max_pair_residual() const;
};

Analysis analyze(const SurfaceChart& chart, const AnalysisOptions& options = {});

/// Analytic modes that apply to a chart.
std::vector<ExampleId> examples_for(const SurfaceChart& chart);
OracleComparison compare_with_oracle(const Analysis& analysis, ExampleId id);

std::string report_json(const Analysis& analysis, int indent = 2);
void write_spectrum_csv(std::ostream& out, const Analysis& analysis);
/// Writes modes/base.obj and one deflected mesh per non-constant mode;
/// returns the display amplitude used (0.2 * sqrt(mean cell area)).
double write_mode_meshes(const Analysis& analysis, const std::string& directory);

}  // namespace corruga
