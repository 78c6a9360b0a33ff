#include "corruga/verification.hpp"

#include "json.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace corruga {

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(3) << v;
  return s.str();
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + fmt(v[k]);
  return out + "]";
}

Mat2 diag(double a, double b) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

double relative_error(const Mat2& measured, const Mat2& predicted) {
  return (measured - predicted).norm() / predicted.norm();
}

const OracleComparison* find_oracle(const Analysis& a, ExampleId id) {
  for (const OracleComparison& o : a.oracle) {
    if (o.example == to_string(id)) return &o;
  }
  return nullptr;
}

std::vector<const ClassifiedMode*> bending_modes(const Analysis& a) {
  std::vector<const ClassifiedMode*> out;
  if (!a.spaces) return out;
  for (const ClassifiedMode& m : a.spaces->modes) {
    if (m.label == "bending") out.push_back(&m);
  }
  return out;
}

/// Largest eigenvalue of the quadratic form det(chi) on an orthonormal basis.
double max_det_form(const std::vector<Mat2>& basis) {
  const int k = static_cast<int>(basis.size());
  if (k == 0) return 0;
  Eigen::MatrixXd Q(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const Mat2& A = basis[i];
      const Mat2& B = basis[j];
      Q(i, j) = 0.5 * (A(0, 0) * B(1, 1) + B(0, 0) * A(1, 1)) - A(0, 1) * B(0, 1);
    }
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Q).eigenvalues().maxCoeff();
}

/// sup over the span of the basis of |chi_22| / |chi|_F.
double max_chi22_fraction(const std::vector<Mat2>& basis) {
  double s = 0;
  for (const Mat2& c : basis) s += c(1, 1) * c(1, 1);
  return std::sqrt(s);
}

}  // namespace

const Analysis& VerificationContext::analysis(const std::string& surface, int resolution) {
  auto key = std::make_pair(surface, resolution);
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    AnalysisOptions o;
    o.resolution = {resolution, resolution};
    o.seed = options_.seed;
    it = cache_.emplace(key, std::make_unique<Analysis>(analyze(builtin_chart(surface), o))).first;
  }
  return *it->second;
}

DecayCheck check_decay(const std::vector<double>& values, const std::vector<int>& resolutions,
                       double floor, double min_order) {
  DecayCheck out;
  out.order = std::nan("");
  std::vector<std::pair<double, double>> pts;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] > floor) pts.emplace_back(std::log(double(resolutions[k])), std::log(values[k]));
    if (k > 0 && values[k] > floor && !(values[k] < values[k - 1])) return out;
  }
  if (pts.size() < 2) {
    out.passed = true;
    return out;
  }
  double mx = 0, my = 0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= double(pts.size());
  my /= double(pts.size());
  double sxy = 0, sxx = 0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  out.order = -sxy / sxx;
  out.passed = out.order >= min_order;
  return out;
}

std::optional<Mat2> untwisted_bending(const std::vector<Mat2>& chi_basis) {
  if (chi_basis.size() != 2) return std::nullopt;
  const Mat2& A = chi_basis[0];
  const Mat2& B = chi_basis[1];
  const double scale = std::max(A.norm(), B.norm());
  if (std::abs(A(0, 1)) < 1e-12 * scale && std::abs(B(0, 1)) < 1e-12 * scale) return std::nullopt;
  Mat2 c = B(0, 1) * A - A(0, 1) * B;
  if (std::abs(c(0, 0)) > 1e-12 * c.norm()) return Mat2(c / c(0, 0));
  if (std::abs(c(1, 1)) > 1e-12 * c.norm()) return Mat2(c / c(1, 1));
  return std::nullopt;
}

std::vector<std::string> sweep_surfaces() {
  return {"plane", "corrugation", "eggbox", "eggbox-hybrid", "miura", "miura-hybrid", "translation"};
}

// ---------------------------------------------------------------- 1

CriterionResult check_plane(VerificationContext& ctx) {
  CriterionResult r{1, "plane: dims (0,3), pair residuals < 1e-8", false, "", {}};
  const Analysis& a = ctx.analysis("plane", ctx.options().resolution);
  const auto d = a.dims();
  const double worst = a.max_pair_residual();
  r.passed = !a.ambiguous() && d[0] == 0 && d[1] == 3 && worst < 1e-8;
  r.detail = "dims (" + std::to_string(d[0]) + "," + std::to_string(d[1]) + "), " +
             std::to_string(a.pairs.size()) + " pairs, max residual " + fmt(worst);
  r.metrics = {{"dim_E", d[0]}, {"dim_chi", d[1]}, {"pairs", double(a.pairs.size())},
               {"max_pair_residual", worst}};
  return r;
}

// ---------------------------------------------------------------- 2

CriterionResult check_simple_corrugation(VerificationContext& ctx) {
  CriterionResult r{2, "simple corrugation: E ~ diag(1,0), chi22 -> 0", false, "", {}};
  const int N = ctx.options().resolution;
  const Analysis& a = ctx.analysis("corrugation", N);
  const OracleComparison* o = find_oracle(a, ExampleId::corrugation_membrane);
  const double e_err = (o && o->E_measured) ? relative_error(*o->E_measured, diag(1, 0)) : 1.0;
  std::vector<double> chi22;
  for (int n : ctx.options().refinement) {
    const Analysis& b = ctx.analysis("corrugation", n);
    chi22.push_back(b.spaces ? max_chi22_fraction(b.spaces->chi_basis) : 1.0);
  }
  const double at_n = a.spaces ? max_chi22_fraction(a.spaces->chi_basis) : 1.0;
  const DecayCheck decay = check_decay(chi22, ctx.options().refinement, ctx.options().roundoff_floor);
  r.passed = !a.ambiguous() && a.dims()[0] == 1 && e_err <= 0.02 && at_n <= 1e-2 && decay.passed;
  r.detail = "dim E " + std::to_string(a.dims()[0]) + ", E error " + fmt(e_err) +
             ", max |chi22|/|chi| over refinement " + fmt_list(chi22);
  r.metrics = {{"dim_E", a.dims()[0]}, {"E_error", e_err}, {"chi22_fraction", at_n}};
  return r;
}

// ---------------------------------------------------------------- 3

CriterionResult check_eggbox(VerificationContext& ctx) {
  CriterionResult r{3, "eggbox: E ~ diag(1,-1), chi22/chi11 = 1; hybrid ratio 3", false, "", {}};
  const int N = ctx.options().resolution;
  const Analysis& a = ctx.analysis("eggbox", N);
  const Analysis& h = ctx.analysis("eggbox-hybrid", N);
  const OracleComparison* o = find_oracle(a, ExampleId::eggbox_membrane);
  const double e_err = (o && o->E_measured) ? relative_error(*o->E_measured, diag(1, -1)) : 1.0;
  auto ratio = [](const Analysis& x) {
    if (!x.spaces) return std::nan("");
    const auto c = untwisted_bending(x.spaces->chi_basis);
    return c ? (*c)(1, 1) / (*c)(0, 0) : std::nan("");
  };
  const double ra = ratio(a), rh = ratio(h);
  const double fh = h.chart.curve(0).profile->mean_slope_squared();
  const double gh = h.chart.curve(1).profile->mean_slope_squared();
  r.passed = !a.ambiguous() && !h.ambiguous() && e_err <= 0.02 && std::abs(ra - 1.0) <= 0.05 &&
             std::abs(rh / (gh / fh) - 1.0) <= 0.05;
  r.detail = "E error " + fmt(e_err) + ", ratio " + fmt(ra) + ", hybrid ratio " + fmt(rh) +
             " (expected " + fmt(gh / fh) + ")";
  r.metrics = {{"E_error", e_err}, {"ratio", ra}, {"hybrid_ratio", rh}, {"hybrid_expected", gh / fh}};
  return r;
}

// ---------------------------------------------------------------- 4

CriterionResult check_miura(VerificationContext& ctx) {
  CriterionResult r{4, "miura: chi22/chi11 = -1, det chi < 0 on all bending modes", false, "", {}};
  const Analysis& a = ctx.analysis("miura", ctx.options().resolution);
  double ratio = std::nan(""), det_max = 1;
  if (a.spaces) {
    if (const auto c = untwisted_bending(a.spaces->chi_basis)) ratio = (*c)(1, 1) / (*c)(0, 0);
    det_max = max_det_form(a.spaces->chi_basis);
  }
  double det_modes = -INFINITY;
  for (const ClassifiedMode* m : bending_modes(a)) {
    det_modes = std::max(det_modes, m->chi.determinant() / m->chi.squaredNorm());
  }
  r.passed = !a.ambiguous() && std::abs(ratio + 1.0) <= 0.05 && det_max < 0 && det_modes < 0;
  r.detail = "ratio " + fmt(ratio) + ", max of det form on the bending space " + fmt(det_max);
  r.metrics = {{"ratio", ratio}, {"det_form_max", det_max}, {"det_modes_max", det_modes}};
  return r;
}

// ---------------------------------------------------------------- 5

CriterionResult check_translation(VerificationContext& ctx) {
  CriterionResult r{5, "translation surface: pure twist mode, no membrane shear", false, "", {}};
  const Analysis& a = ctx.analysis("translation", ctx.options().resolution);
  const Vec3 t1 = a.chart.lattice_vector(0) / a.chart.period(0);
  const Vec3 t2 = a.chart.lattice_vector(1) / a.chart.period(1);
  const double expected = t1.cross(t2).norm();
  const auto modes = bending_modes(a);
  Mat2 chi = Mat2::Zero();
  if (!modes.empty()) {
    // Minimal combination with chi11 = chi22 = 0 and <W1, p1> = |p1|^2.
    const int k = static_cast<int>(modes.size());
    Eigen::MatrixXd M(3, k);
    for (int i = 0; i < k; ++i) {
      M(0, i) = modes[i]->chi(0, 0);
      M(1, i) = modes[i]->chi(1, 1);
      M(2, i) = modes[i]->mode.W1.dot(a.geometry.p1) / a.geometry.p1.squaredNorm();
    }
    const Eigen::VectorXd c = M.completeOrthogonalDecomposition().solve(Eigen::Vector3d(0, 0, 1));
    for (int i = 0; i < k; ++i) chi += c[i] * modes[i]->chi;
  }
  const double twist = std::abs(chi(0, 1));
  const double off = std::max(std::abs(chi(0, 0)), std::abs(chi(1, 1))) / std::max(twist, 1e-300);
  const double twist_err = std::abs(twist - expected) / expected;
  double shear = 0;
  if (a.spaces) {
    for (const Mat2& E : a.spaces->E_basis) shear = std::max(shear, std::abs(E(0, 1)) / E.norm());
  }
  r.passed = !a.ambiguous() && !modes.empty() && off <= 1e-2 && twist_err <= 0.02 &&
             !a.spaces->E_basis.empty() && shear <= 1e-6;
  r.detail = "max(|chi11|,|chi22|)/|chi12| " + fmt(off) + ", chi12 " + fmt(twist) + " vs " +
             fmt(expected) + ", max |E12|/|E| " + fmt(shear);
  r.metrics = {{"diag_over_twist", off}, {"chi12", twist}, {"expected", expected},
               {"twist_error", twist_err}, {"membrane_shear", shear}};
  return r;
}

// ---------------------------------------------------------------- 6

CriterionResult check_orthogonality_sweep(VerificationContext& ctx) {
  CriterionResult r{6, "orthogonality sweep: residual <= 1e-2, O(h^2), two forms agree", true, "", {}};
  const int N = ctx.options().resolution;
  double worst_at_n = 0, worst_form = 0;
  std::ostringstream d;
  for (const std::string& s : sweep_surfaces()) {
    std::vector<double> seq;
    for (int n : ctx.options().refinement) {
      const Analysis& a = ctx.analysis(s, n);
      if (a.ambiguous()) r.passed = false;
      seq.push_back(a.max_pair_residual());
      const auto Es = a.spaces ? a.spaces->membrane_strains() : std::vector<Mat2>{};
      const auto Cs = a.spaces ? a.spaces->bending_strains() : std::vector<Mat2>{};
      for (const PairResidual& p : a.pairs) {
        const double scale = Es[p.membrane].norm() * Cs[p.bending].norm();
        worst_form = std::max(worst_form, std::abs(p.index_form - p.adjugate_form) / scale);
      }
      if (n == N) worst_at_n = std::max(worst_at_n, a.max_pair_residual());
    }
    const DecayCheck decay = check_decay(seq, ctx.options().refinement, ctx.options().roundoff_floor);
    if (!decay.passed) r.passed = false;
    d << s << ' ' << fmt_list(seq);
    if (std::isfinite(decay.order)) d << " order " << fmt(decay.order);
    d << (decay.passed ? "" : " (no decay)") << "; ";
  }
  r.passed = r.passed && worst_at_n <= 1e-2 && worst_form <= 1e-14;
  d << "forms agree to " << fmt(worst_form);
  r.detail = d.str();
  r.metrics = {{"max_residual", worst_at_n}, {"form_disagreement", worst_form}};
  return r;
}

// ---------------------------------------------------------------- 7

CriterionResult check_dimension_bound(VerificationContext& ctx) {
  CriterionResult r{7, "dim E + dim chi <= 3, equality on all built-in families", true, "", {}};
  std::ostringstream d;
  for (const std::string& s : sweep_surfaces()) {
    const Analysis& a = ctx.analysis(s, ctx.options().resolution);
    const auto dims = a.dims();
    const int sum = dims[0] + dims[1];
    if (a.ambiguous() || sum != 3) r.passed = false;
    d << s << " (" << dims[0] << "," << dims[1] << ") ";
    r.metrics.emplace_back(s, sum);
  }
  r.detail = d.str();
  return r;
}

// ---------------------------------------------------------------- 8

CriterionResult check_growth_identities(VerificationContext& ctx) {
  CriterionResult r{8, "bending modes: W2^p1 - W1^p2 = 0 and W in-plane", true, "", {}};
  double worst_cross = 0, worst_normal = 0;
  for (const std::string& s : sweep_surfaces()) {
    const Analysis& a = ctx.analysis(s, ctx.options().resolution);
    const Vec3& p1 = a.geometry.p1;
    const Vec3& p2 = a.geometry.p2;
    const double pn = std::sqrt(p1.squaredNorm() + p2.squaredNorm());
    const auto modes = bending_modes(a);
    if (modes.empty()) continue;
    // Operator norms over the span of the bending modes' growth vectors.
    const int k = static_cast<int>(modes.size());
    Eigen::MatrixXd W(6, k), C(3, k), Nn(2, k);
    for (int i = 0; i < k; ++i) {
      const Vec3& W1 = modes[i]->mode.W1;
      const Vec3& W2 = modes[i]->mode.W2;
      W.col(i) << W1, W2;
      C.col(i) = W2.cross(p1) - W1.cross(p2);
      Nn.col(i) << W1.dot(a.geometry.n), W2.dot(a.geometry.n);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(W, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd sv = svd.singularValues();
    int rank = 0;
    while (rank < sv.size() && sv[rank] > 1e-12 * sv[0]) ++rank;
    const Eigen::MatrixXd T = svd.matrixV().leftCols(rank) *
                              sv.head(rank).cwiseInverse().asDiagonal();
    const double cross = Eigen::JacobiSVD<Eigen::MatrixXd>(C * T).singularValues()[0] / pn;
    const double normal = Eigen::JacobiSVD<Eigen::MatrixXd>(Nn * T).singularValues()[0];
    worst_cross = std::max(worst_cross, cross);
    worst_normal = std::max(worst_normal, normal);
    r.metrics.emplace_back(s + ".cross", cross);
    r.metrics.emplace_back(s + ".normal", normal);
  }
  // Normal components are compared at |p| = 1 scale: |<W, n>| <= 1e-2 |W| |p| / |p|.
  r.passed = worst_cross <= 1e-2 && worst_normal <= 1e-2;
  r.detail = "max |W2^p1 - W1^p2|/(|W||p|) " + fmt(worst_cross) + ", max |<W,n>|/|W| " +
             fmt(worst_normal);
  return r;
}

// ---------------------------------------------------------------- 9

CriterionResult check_symmetry_lemma(VerificationContext& ctx) {
  const VerifyOptions& o = ctx.options();
  CriterionResult r{9, "symmetry lemma by quadrature on a smooth corrugation", false, "", {}};
  const SurfaceChart chart = builtin_chart("sinusoidal-corrugation");
  const PeriodicGrid grid(chart, o.lemma_resolution, o.lemma_resolution);
  std::mt19937_64 rng(o.seed);
  const std::array<double, 2> period{chart.period(0), chart.period(1)};
  double worst = 0;
  for (int k = 0; k < o.lemma_fields; ++k) {
    const TrigField omega = TrigField::random(rng, o.lemma_harmonics, period);
    const TrigField w = TrigField::random(rng, o.lemma_harmonics, period);
    const LemmaCheck c = symmetry_lemma_check(grid, omega, w);
    worst = std::max(worst, c.discrepancy() / c.scale);
  }
  r.passed = worst <= 1e-6;
  r.detail = std::to_string(o.lemma_fields) + " field pairs at N=" +
             std::to_string(o.lemma_resolution) + ", seed " + std::to_string(o.seed) +
             ", max |lhs-rhs|/scale " + fmt(worst);
  r.metrics = {{"max_relative_discrepancy", worst}, {"seed", double(o.seed)}};
  return r;
}

// ---------------------------------------------------------------- 10

CriterionResult check_scaling_limit(VerificationContext&) {
  CriterionResult r{10, "scaling limit: O(eps) for the corrugation, exact for the plane", false, "", {}};
  const std::vector<double> eps{1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32};
  const SurfaceChart corr = builtin_chart("corrugation");
  const ScalingCheck c = scaling_limit_check(analytic_mode(ExampleId::corrugation_bend, corr),
                                             period_geometry(corr), eps);
  const SurfaceChart plane = builtin_chart("plane");
  Mat2 chi;
  chi << 1.0, 0.3, 0.3, -0.5;
  const ScalingCheck p = scaling_limit_check(analytic_mode(ExampleId::plane_bend, plane, chi),
                                             period_geometry(plane), eps);
  // The plane mode is quadratic: eps^2 xdot(xi/eps) reproduces the limit up to
  // rounding of the same products (|limit| <= 2 on the probe square).
  const double plane_err = *std::max_element(p.error.begin(), p.error.end());
  r.passed = c.monotone && c.fitted_rate >= 0.9 && plane_err <= 8 * DBL_EPSILON;
  r.detail = "corrugation errors " + fmt_list(c.error) + ", rate " + fmt(c.fitted_rate) +
             ", plane max error " + fmt(plane_err);
  r.metrics = {{"rate", c.fitted_rate}, {"monotone", c.monotone ? 1.0 : 0.0}, {"plane_error", plane_err}};
  return r;
}

// ---------------------------------------------------------------- 11

CriterionResult check_warping(VerificationContext&) {
  CriterionResult r{11, "warping: circle and square dislocations, L-section warping", false, "", {}};
  const double circle = dislocation(circle_section(1.0, 1024), 1.0);
  const double circle_err = std::abs(circle + 2 * M_PI) / (2 * M_PI);
  const SectionCurve sq = square_section(1.0);
  const double square = dislocation(sq, 1.0);
  const double shoelace = -2.0 * shoelace_area(sq);
  const double reversed = dislocation(circle_section(1.0, 1024).reversed(), 1.0);
  const double a = 1.5, b = 2.0, alpha = 0.7;
  const WarpingResult w = warping_function(l_section(a, b, 6), alpha);
  double l_err = 0;
  for (std::size_t k = 0; k < w.w.size(); ++k) {
    const double y = k < 6 ? 0.0 : b * double(k - 5) / 5.0;
    l_err = std::max(l_err, std::abs(w.w[k] - (-alpha * a * y)));
  }
  r.passed = circle_err <= 1e-3 && std::abs(square + 2.0) <= 4 * DBL_EPSILON &&
             square == shoelace &&
             std::abs(reversed + circle) <= 1e-12 * std::abs(circle) && l_err <= 1e-6;
  r.detail = "circle " + fmt(circle) + " (rel err " + fmt(circle_err) + "), square " + fmt(square) +
             ", L-section max error " + fmt(l_err);
  r.metrics = {{"circle", circle}, {"circle_error", circle_err}, {"square", square},
               {"l_section_error", l_err}};
  return r;
}

// ---------------------------------------------------------------- 12

CriterionResult check_oracle_projection(VerificationContext& ctx) {
  CriterionResult r{12, "analytic modes lie in the numerical null space", true, "", {}};
  const int N = ctx.options().resolution;
  std::ostringstream d;
  double worst = 0;
  for (const std::string& s : sweep_surfaces()) {
    for (ExampleId id : examples_for(builtin_chart(s))) {
      std::vector<double> seq;
      for (int n : ctx.options().refinement) {
        const Analysis& a = ctx.analysis(s, n);
        const OracleComparison* o = find_oracle(a, id);
        seq.push_back(o ? o->projection_residual : 1.0);
        if (n == N && o) worst = std::max(worst, o->projection_residual);
      }
      const DecayCheck decay = check_decay(seq, ctx.options().refinement, ctx.options().roundoff_floor);
      if (!decay.passed) r.passed = false;
      d << s << '/' << to_string(id) << ' ' << fmt_list(seq);
      if (std::isfinite(decay.order)) d << " order " << fmt(decay.order);
      d << (decay.passed ? "" : " (no decay)") << "; ";
    }
  }
  r.passed = r.passed && worst <= 1e-2;
  r.detail = d.str();
  r.metrics = {{"max_projection_residual", worst}};
  return r;
}

// ---------------------------------------------------------------- 13

CriterionResult check_reparametrization(VerificationContext&) {
  CriterionResult r{13, "sheared eggbox: congruence and transformed orthogonality", false, "", {}};
  double congruence = 0, transformed = 0, rearranged = 0, printed = 0;
  const std::vector<std::pair<Profile, Profile>> pairs{
      {sgn_cos_profile(), sgn_cos_profile()}, {triangle_slope_profile(), sgn_cos_profile()}};
  for (const auto& [f, g] : pairs) {
    for (double gamma : {1.0, -1.0, 2.0}) {
      const ReparametrizationCheck c = reparametrization_check(f, g, gamma);
      const double En = c.E_congruence.norm();
      congruence = std::max(congruence, c.congruence_error / En);
      for (std::size_t k = 0; k < c.chi_sheared.size(); ++k) {
        const double scale = En * c.chi_sheared[k].norm();
        transformed = std::max(transformed, std::abs(c.residual_sheared[k]) / scale);
        rearranged = std::max(rearranged, std::abs(c.residual_rearranged[k]) / scale);
        printed = std::max(printed, std::abs(c.residual_printed_sign[k]) / scale);
      }
    }
  }
  r.passed = congruence <= 1e-12 && transformed <= 1e-12 && rearranged <= 1e-12;
  r.detail = "congruence " + fmt(congruence) + ", transformed residual " + fmt(transformed) +
             ", rearranged " + fmt(rearranged) + " (with +2 gamma chi12: " + fmt(printed) + ")";
  r.metrics = {{"congruence_error", congruence}, {"transformed_residual", transformed},
               {"rearranged_residual", rearranged}, {"plus_sign_residual", printed}};
  return r;
}

// ---------------------------------------------------------------- suites

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "examples") return {1, 2, 3, 4, 5, 6, 7, 8, 12, 13};
  if (suite == "lemma") return {9};
  if (suite == "scaling") return {10};
  if (suite == "warping") return {11};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  throw std::invalid_argument("unknown suite '" + suite + "' (examples, lemma, scaling, warping, all)");
}

CriterionResult run_criterion(int id, VerificationContext& ctx) {
  switch (id) {
    case 1: return check_plane(ctx);
    case 2: return check_simple_corrugation(ctx);
    case 3: return check_eggbox(ctx);
    case 4: return check_miura(ctx);
    case 5: return check_translation(ctx);
    case 6: return check_orthogonality_sweep(ctx);
    case 7: return check_dimension_bound(ctx);
    case 8: return check_growth_identities(ctx);
    case 9: return check_symmetry_lemma(ctx);
    case 10: return check_scaling_limit(ctx);
    case 11: return check_warping(ctx);
    case 12: return check_oracle_projection(ctx);
    case 13: return check_reparametrization(ctx);
  }
  throw std::invalid_argument("unknown criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_suite(const std::string& suite, VerificationContext& ctx) {
  std::vector<CriterionResult> out;
  for (int id : suite_criteria(suite)) {
    try {
      out.push_back(run_criterion(id, ctx));
    } catch (const std::exception& e) {
      out.push_back({id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what(), {}});
    }
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.passed ? "PASS" : "FAIL") << " [" << std::setw(2) << r.id << "] " << r.title << ": "
    << r.detail;
  return s.str();
}

std::string summary_json(const std::vector<CriterionResult>& results, int indent) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const CriterionResult& r : results) {
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.metrics) m[k] = std::isfinite(v) ? nlohmann::ordered_json(v) : nullptr;
    j.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail},
                 {"metrics", m}});
  }
  nlohmann::ordered_json out = {{"passed", std::all_of(results.begin(), results.end(),
                                                       [](const auto& r) { return r.passed; })},
                                {"criteria", j}};
  return out.dump(indent);
}

}  // namespace corruga
