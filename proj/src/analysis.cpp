#include "corruga/analysis.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace corruga {

using json = nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double relative_error(const Mat2& measured, const Mat2& predicted) {
  const double scale = predicted.norm();
  return scale > 0 ? (measured - predicted).norm() / scale : measured.norm();
}

json mat_json(const Mat2& m) { return json::array({{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}}); }
json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }
json vec_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v[k]);
  return a;
}

json decision_json(const RankDecision& d) {
  return {{"rank", d.rank},
          {"gap_ratio", std::isfinite(d.gap_ratio) ? json(d.gap_ratio) : json("inf")},
          {"cut", d.cut},
          {"ambiguous", d.ambiguous}};
}

}  // namespace

double Analysis::max_pair_residual() const {
  double r = 0;
  for (const PairResidual& p : pairs) r = std::max(r, p.relative);
  return r;
}

std::vector<ExampleId> examples_for(const SurfaceChart& chart) {
  switch (chart.family()) {
    case Family::plane:
      return {ExampleId::plane_bend, ExampleId::translation_twist};
    case Family::simple_corrugation:
      return {ExampleId::corrugation_membrane, ExampleId::corrugation_bend,
              ExampleId::translation_twist};
    case Family::double_corrugation:
      return {ExampleId::eggbox_membrane, ExampleId::translation_twist};
    case Family::miura_like:
      if (chart.curve(1).profile->kind() == ProfileKind::piecewise_linear) {
        return {ExampleId::miura_membrane};
      }
      return {};
    case Family::translation_surface:
      return {ExampleId::translation_twist};
    case Family::sheared_double_corrugation:
      return {ExampleId::sheared_membrane};
  }
  return {};
}

OracleComparison compare_with_oracle(const Analysis& a, ExampleId id) {
  const PeriodicGrid& grid = *a.grid;
  const AnalyticMode mode = analytic_mode(id, a.chart);
  const Eigen::VectorXd u = to_unknowns(sample_rotation(mode, grid), grid);
  OracleComparison out;
  out.example = to_string(id);
  out.projection_residual = a.filter->projection_residual(u);
  out.E_predicted = mode.E;
  out.chi_predicted = mode.chi;
  if (!a.spaces) return out;

  // Least-squares fit of the sampled mode by the extracted modes; membrane
  // examples only use the periodic (W = 0) ones.
  const bool membrane = mode.W1.isZero() && mode.W2.isZero();
  std::vector<const ClassifiedMode*> basis;
  for (const ClassifiedMode& m : a.spaces->modes) {
    if (!membrane || m.label != "bending") basis.push_back(&m);
  }
  if (basis.empty()) {
    out.fit_residual = 1;
    return out;
  }
  Eigen::MatrixXd B(u.size(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) B.col(k) = to_unknowns(basis[k]->mode, grid);
  const Eigen::VectorXd c = B.colPivHouseholderQr().solve(u);
  out.fit_residual = (u - B * c).norm() / u.norm();
  Mat2 E = Mat2::Zero(), chi = Mat2::Zero();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    E += c[k] * basis[k]->E;
    chi += c[k] * basis[k]->chi;
  }
  if (mode.E) {
    out.E_measured = E;
    out.E_error = relative_error(E, *mode.E);
  }
  if (mode.chi) {
    out.chi_measured = chi;
    out.chi_error = relative_error(chi, *mode.chi);
  }
  return out;
}

Analysis analyze(const SurfaceChart& chart, const AnalysisOptions& options) {
  const auto t_start = Clock::now();
  Analysis a(chart, options);
  auto t0 = Clock::now();
  a.grid = std::make_shared<const PeriodicGrid>(chart, options.resolution[0], options.resolution[1]);
  a.geometry = period_geometry(chart);
  a.timings.grid = seconds_since(t0);

  t0 = Clock::now();
  a.system = assemble_system(*a.grid);
  a.timings.assemble = seconds_since(t0);

  t0 = Clock::now();
  a.filter = std::make_shared<const NullspaceFilter>(a.system, options.filter);
  a.timings.factor = seconds_since(t0);

  t0 = Clock::now();
  a.nullspace = nullspace(a.system, *a.grid, *a.filter, options.policy);
  a.timings.nullspace = seconds_since(t0);

  t0 = Clock::now();
  if (!a.nullspace.decision.ambiguous) {
    a.spaces = strain_space_dims(a.nullspace.modes, a.system, *a.grid, a.geometry, options.policy);
    const auto Es = a.spaces->membrane_strains();
    const auto Cs = a.spaces->bending_strains();
    for (std::size_t i = 0; i < Es.size(); ++i) {
      for (std::size_t j = 0; j < Cs.size(); ++j) {
        PairResidual p;
        p.membrane = static_cast<int>(i);
        p.bending = static_cast<int>(j);
        p.index_form = orthogonality_residual(Es[i], Cs[j]);
        p.adjugate_form = orthogonality_residual_adjugate(Es[i], Cs[j]);
        p.relative = std::abs(p.index_form) / (Es[i].norm() * Cs[j].norm());
        a.pairs.push_back(p);
      }
    }
    const Mat2 metric = parameter_metric(a.geometry);
    for (const Mat2& E : Es) a.poisson.push_back(poisson_ratios(E, Cs, metric));
  }
  std::vector<int> corner_rows;
  for (int r = 0; r < a.system.rows(); ++r) {
    if (a.system.row_at_corner[r]) corner_rows.push_back(r);
  }
  for (const RotationMode& m : a.nullspace.modes) {
    const Eigen::VectorXd u = to_unknowns(m, *a.grid);
    const Eigen::VectorXd Au = a.system.matrix * u;
    double corner = 0;
    for (int r : corner_rows) corner += Au[r] * Au[r];
    a.corner_residual = std::max(a.corner_residual, std::sqrt(corner) / u.norm());
    a.max_sigma = std::max(a.max_sigma, m.sigma);
  }
  a.timings.classify = seconds_since(t0);

  t0 = Clock::now();
  for (ExampleId id : examples_for(chart)) {
    if (id == ExampleId::sheared_membrane) continue;
    a.oracle.push_back(compare_with_oracle(a, id));
  }
  a.timings.oracle = seconds_since(t0);
  a.timings.total = seconds_since(t_start);
  return a;
}

std::string report_json(const Analysis& a, int indent) {
  json r;
  r["surface"] = json::parse(chart_to_json(a.chart));
  r["resolution"] = {a.options.resolution[0], a.options.resolution[1]};
  r["seed"] = a.options.seed;
  r["grid"] = {{"nodes", a.grid->size()},
               {"max_spacing", a.grid->max_spacing()},
               {"unknowns", a.system.unknowns()},
               {"rows", a.system.rows()},
               {"interior_rows", a.system.interior_rows()},
               {"crease_rows", a.system.crease_rows()},
               {"crease_pairs", a.grid->crease_pairs().size()},
               {"crease_edges", a.grid->crease_edges().size()}};
  r["geometry"] = {{"p1", vec_json(a.geometry.p1)},
                   {"p2", vec_json(a.geometry.p2)},
                   {"n", vec_json(a.geometry.n)}};
  r["threshold"] = {{"policy", a.nullspace.policy.describe()},
                    {"decision", decision_json(a.nullspace.decision)}};
  r["filter"] = {{"tau", a.nullspace.filter.tau},
                 {"passes", a.nullspace.filter.passes},
                 {"refinement_steps", a.nullspace.filter.refinement_steps}};
  r["sigma_spectrum_ref"] = "spectrum.csv";
  r["null_dim"] = a.nullspace.decision.ambiguous ? json(nullptr) : json(a.nullspace.decision.rank);
  r["ambiguous"] = a.ambiguous();
  r["corner_residual"] = a.corner_residual;
  r["max_sigma"] = a.max_sigma;

  if (a.spaces) {
    const StrainSpaces& s = *a.spaces;
    r["dims"] = {s.dims[0], s.dims[1]};
    r["constant_dim"] = s.constant_dim;
    r["flat_bending"] = s.flat_bending;
    r["dimension_bound_holds"] = s.dimension_bound_holds();
    json eb = json::array(), cb = json::array();
    for (const Mat2& m : s.E_basis) eb.push_back(mat_json(m));
    for (const Mat2& m : s.chi_basis) cb.push_back(mat_json(m));
    r["E_basis"] = eb;
    r["chi_basis"] = cb;
    r["singular_values"] = {{"E", vec_json(s.E_singular)},
                            {"chi", vec_json(s.chi_singular)},
                            {"W", vec_json(s.W_singular)}};
    r["decisions"] = {{"E", decision_json(s.E_decision)},
                      {"chi", decision_json(s.chi_decision)},
                      {"W", decision_json(s.W_decision)}};
    json modes = json::array();
    for (const ClassifiedMode& m : s.modes) {
      json jm = {{"label", m.label},
                 {"sigma", m.mode.sigma},
                 {"W1", vec_json(m.mode.W1)},
                 {"W2", vec_json(m.mode.W2)},
                 {"E", mat_json(m.E)},
                 {"chi", mat_json(m.chi)}};
      if (m.label == "bending") {
        jm["det_chi"] = m.chi.determinant();
        jm["E_note"] = "window-dependent, informative only";
      }
      modes.push_back(jm);
    }
    r["modes"] = modes;
  } else {
    r["dims"] = nullptr;
  }
  json pairs = json::array();
  const auto Es = a.spaces ? a.spaces->membrane_strains() : std::vector<Mat2>{};
  const auto Cs = a.spaces ? a.spaces->bending_strains() : std::vector<Mat2>{};
  for (const PairResidual& p : a.pairs) {
    pairs.push_back({{"E", mat_json(Es[p.membrane])},
                     {"chi", mat_json(Cs[p.bending])},
                     {"residual", p.index_form},
                     {"residual_adjugate", p.adjugate_form},
                     {"relative", p.relative}});
  }
  r["pairs"] = pairs;
  json poisson = json::array();
  for (const PoissonRatios& p : a.poisson) {
    json jp = {{"basis", mat_json(p.basis)},
               {"E_principal", mat_json(p.E_principal)},
               {"chi_principal", mat_json(p.chi_principal)},
               {"degenerate", p.degenerate},
               {"note", p.note}};
    jp["in_plane"] = p.in_plane ? json(*p.in_plane) : json(nullptr);
    jp["out_of_plane"] = p.out_of_plane ? json(*p.out_of_plane) : json(nullptr);
    const auto id = p.identity_residual();
    jp["identity_residual"] = id ? json(*id) : json(nullptr);
    poisson.push_back(jp);
  }
  r["poisson"] = poisson;
  json oracle = json::array();
  for (const OracleComparison& o : a.oracle) {
    json jo = {{"example", o.example},
               {"projection_residual", o.projection_residual},
               {"fit_residual", o.fit_residual}};
    if (o.E_predicted) jo["E_predicted"] = mat_json(*o.E_predicted);
    if (o.E_measured) {
      jo["E_measured"] = mat_json(*o.E_measured);
      jo["E_error"] = o.E_error;
    }
    if (o.chi_predicted) jo["chi_predicted"] = mat_json(*o.chi_predicted);
    if (o.chi_measured) {
      jo["chi_measured"] = mat_json(*o.chi_measured);
      jo["chi_error"] = o.chi_error;
    }
    oracle.push_back(jo);
  }
  r["oracle"] = oracle;
  r["timings"] = {{"grid", a.timings.grid},           {"assemble", a.timings.assemble},
                  {"factor", a.timings.factor},       {"nullspace", a.timings.nullspace},
                  {"classify", a.timings.classify},   {"oracle", a.timings.oracle},
                  {"total", a.timings.total}};
  r["reproducibility"] =
      "deterministic for a fixed config, resolution and seed; sparse factorization order may "
      "change trailing digits across compilers and thread counts";
  return r.dump(indent);
}

void write_spectrum_csv(std::ostream& out, const Analysis& a) {
  out << "index,relative_singular_value,eigenvalue,kept\n" << std::setprecision(17);
  for (Eigen::Index k = 0; k < a.nullspace.spectrum.size(); ++k) {
    out << k << ',' << a.nullspace.spectrum[k] << ',' << a.nullspace.eigenvalues[k] << ','
        << (k < a.nullspace.decision.rank && !a.nullspace.decision.ambiguous ? 1 : 0) << '\n';
  }
}

double write_mode_meshes(const Analysis& a, const std::string& directory) {
  namespace fs = std::filesystem;
  const fs::path dir(directory);
  fs::create_directories(dir);
  const PeriodicGrid& grid = *a.grid;
  double mean_area = 0;
  for (const GridCell& c : grid.cells()) mean_area += c.area;
  mean_area /= static_cast<double>(grid.cells().size());
  const double amplitude = 0.2 * std::sqrt(mean_area);
  {
    std::ofstream out(dir / "base.obj");
    write_obj(out, grid);
  }
  if (!a.spaces) return amplitude;
  int k = 0;
  for (const ClassifiedMode& m : a.spaces->modes) {
    ++k;
    if (m.label == "constant") continue;
    const DeflectionField d = recover_deflection(m.mode, grid);
    double peak = 0;
    for (const Vec3& v : d.base()) peak = std::max(peak, v.norm());
    if (peak <= 0) continue;
    std::ostringstream name;
    name << "mode_" << std::setw(2) << std::setfill('0') << k << '_' << m.label << ".obj";
    std::ofstream out(dir / name.str());
    write_obj(out, grid, [&](const NodeRef& r) { return d.at(r); }, amplitude / peak);
  }
  return amplitude;
}

}  // namespace corruga
