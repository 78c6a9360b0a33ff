#include "corruga/oracle.hpp"

#include <cmath>
#include <numbers>

namespace corruga {

std::string to_string(ExampleId id) {
  switch (id) {
    case ExampleId::plane_bend:
      return "plane-bend";
    case ExampleId::corrugation_membrane:
      return "corrugation-membrane";
    case ExampleId::eggbox_membrane:
      return "eggbox-membrane";
    case ExampleId::miura_membrane:
      return "miura-membrane";
    case ExampleId::translation_twist:
      return "translation-twist";
    case ExampleId::sheared_membrane:
      return "sheared-membrane";
    case ExampleId::corrugation_bend:
      return "corrugation-bend";
  }
  return "unknown";
}

ExampleId example_from_string(const std::string& name) {
  for (ExampleId id : {ExampleId::plane_bend, ExampleId::corrugation_membrane,
                       ExampleId::eggbox_membrane, ExampleId::miura_membrane,
                       ExampleId::translation_twist, ExampleId::sheared_membrane,
                       ExampleId::corrugation_bend}) {
    if (name == to_string(id)) return id;
  }
  throw std::invalid_argument("unknown example id '" + name + "'");
}

namespace {

void require_family(const SurfaceChart& chart, std::initializer_list<Family> ok, ExampleId id) {
  for (Family f : ok) {
    if (chart.family() == f) return;
  }
  throw std::invalid_argument(to_string(id) + " does not apply to a " + to_string(chart.family()) +
                              " chart");
}

}  // namespace

AnalyticMode analytic_mode(ExampleId id, const SurfaceChart& chart, const Mat2& chi) {
  AnalyticMode m;
  m.id = id;
  switch (id) {
    case ExampleId::plane_bend: {
      require_family(chart, {Family::plane}, id);
      const Mat2 c = 0.5 * (chi + chi.transpose());
      m.rotation = [c](const Eigen::Vector2d& x, SidePair) {
        return Vec3(c(0, 1) * x[0] + c(1, 1) * x[1], -(c(0, 0) * x[0] + c(0, 1) * x[1]), 0);
      };
      m.deflection = [c](const Eigen::Vector2d& x) { return Vec3(0, 0, 0.5 * x.dot(c * x)); };
      m.W1 = Vec3(c(0, 1), -c(0, 0), 0);
      m.W2 = Vec3(c(1, 1), -c(0, 1), 0);
      m.chi = c;
      return m;
    }
    case ExampleId::corrugation_bend: {
      require_family(chart, {Family::simple_corrugation}, id);
      const Profile f = *chart.curve(0).profile;
      m.rotation = [](const Eigen::Vector2d& x, SidePair) { return Vec3(0, -x[0], 0); };
      m.deflection = [f](const Eigen::Vector2d& x) {
        return Vec3(f.integral(x[0]) - x[0] * f.value(x[0]), 0, 0.5 * x[0] * x[0]);
      };
      m.W1 = Vec3(0, -1, 0);
      Mat2 c = Mat2::Zero();
      c(0, 0) = 1;
      m.chi = c;
      return m;
    }
    case ExampleId::corrugation_membrane: {
      require_family(chart, {Family::simple_corrugation}, id);
      const Profile f = *chart.curve(0).profile;
      m.rotation = [f](const Eigen::Vector2d& x, SidePair s) {
        return Vec3(0, f.slope(x[0], s[0]), 0);
      };
      m.deflection = [f](const Eigen::Vector2d& x) {
        return Vec3(f.slope_squared_integral(x[0]), 0, -f.value(x[0]));
      };
      Mat2 E = Mat2::Zero();
      E(0, 0) = f.mean_slope_squared();
      m.E = E;
      return m;
    }
    case ExampleId::eggbox_membrane:
    case ExampleId::sheared_membrane: {
      if (id == ExampleId::eggbox_membrane) {
        require_family(chart, {Family::double_corrugation}, id);
      } else {
        require_family(chart, {Family::sheared_double_corrugation}, id);
      }
      const Profile f = *chart.curve(0).profile;
      const Profile g = *chart.curve(1).profile;
      const double gamma = chart.gamma();
      m.rotation = [f, g, gamma](const Eigen::Vector2d& x, SidePair s) {
        const double fp = f.slope(x[0], s[0]);
        const double gp = g.slope(x[1] + gamma * x[0], s[1]);
        return Vec3(gp, fp, fp * gp);
      };
      m.deflection = [f, g, gamma](const Eigen::Vector2d& x) {
        const double eta = x[1] + gamma * x[0];
        return Vec3(f.slope_squared_integral(x[0]), -g.slope_squared_integral(eta),
                    -f.value(x[0]) + g.value(eta));
      };
      Mat2 D = Mat2::Zero();
      D(0, 0) = f.mean_slope_squared();
      D(1, 1) = -g.mean_slope_squared();
      Mat2 S;
      S << 1, 0, gamma, 1;
      m.E = S.transpose() * D * S;
      return m;
    }
    case ExampleId::miura_membrane: {
      require_family(chart, {Family::miura_like}, id);
      const Profile f = *chart.curve(0).profile;
      const Profile g = *chart.curve(1).profile;
      if (g.kind() != ProfileKind::piecewise_linear || g.min_abs_slope() <= 0) {
        throw std::domain_error("ex4 needs a piecewise-linear g with slopes bounded away from 0");
      }
      m.rotation = [f, g](const Eigen::Vector2d& x, SidePair s) {
        const double fp = f.slope(x[0], s[0]);
        const double gp = g.slope(x[1], s[1]);
        return Vec3(-1.0 / gp, -fp / gp, -fp);
      };
      m.deflection = [f, g](const Eigen::Vector2d& x) {
        return Vec3(f.slope_squared_integral(x[0]), -f.value(x[0]) + x[1],
                    -g.inverse_slope_integral(x[1]));
      };
      Mat2 E = Mat2::Zero();
      E(0, 0) = f.mean_slope_squared();
      E(1, 1) = 1.0;
      m.E = E;
      return m;
    }
    case ExampleId::translation_twist: {
      require_family(chart, {Family::translation_surface, Family::double_corrugation,
                             Family::simple_corrugation, Family::plane},
                     id);
      const SpaceCurve alpha = chart.curve(0);
      const SpaceCurve beta = chart.curve(1);
      auto F = [](const SpaceCurve& c, double t) {
        return c.profile ? t * c.profile->value(t) - 2 * c.profile->integral(t) : 0.0;
      };
      const Vec3 ad = alpha.axis.cross(alpha.direction);
      const Vec3 be = beta.axis.cross(beta.direction);
      m.rotation = [alpha, beta](const Eigen::Vector2d& x, SidePair) {
        return Vec3(alpha.value(x[0]) - beta.value(x[1]));
      };
      m.deflection = [=](const Eigen::Vector2d& x) {
        return Vec3(alpha.value(x[0]).cross(beta.value(x[1])) + F(alpha, x[0]) * ad -
                    F(beta, x[1]) * be);
      };
      m.W1 = alpha.axis;
      m.W2 = -beta.axis;
      Mat2 c = Mat2::Zero();
      c(0, 1) = c(1, 0) = alpha.axis.cross(beta.axis).norm();
      m.chi = c;
      return m;
    }
  }
  throw std::invalid_argument("unknown example");
}

RotationMode sample_rotation(const AnalyticMode& mode, const PeriodicGrid& grid) {
  RotationMode r;
  r.w.resize(3 * grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    r.w.segment<3>(3 * k) = mode.rotation(grid.coords({k, 0, 0}), grid.sides(k));
  }
  r.W1 = mode.W1;
  r.W2 = mode.W2;
  r.label = to_string(mode.id);
  return r;
}

DeflectionField sample_deflection(const AnalyticMode& mode, const PeriodicGrid& grid) {
  DeflectionField D;
  D.node_count = grid.size();
  D.values.resize(9 * static_cast<std::size_t>(grid.size()));
  const Vec3 anchor = mode.deflection(grid.coords({0, 0, 0}));
  for (int s2 = -1; s2 <= 1; ++s2) {
    for (int s1 = -1; s1 <= 1; ++s1) {
      for (int k = 0; k < grid.size(); ++k) {
        const NodeRef r{k, s1, s2};
        D.at(r) = mode.deflection(grid.coords(r)) - anchor;
      }
    }
  }
  return D;
}

// ---------------------------------------------------------------- trig fields

Vec3 TrigField::value(const Eigen::Vector2d& xi) const {
  Vec3 v = Vec3::Zero();
  for (const Term& t : terms) {
    const double th = 2 * std::numbers::pi * (t.k1 * xi[0] / period[0] + t.k2 * xi[1] / period[1]);
    v += t.a * std::cos(th) + t.b * std::sin(th);
  }
  return v;
}

std::array<Vec3, 2> TrigField::partials(const Eigen::Vector2d& xi) const {
  std::array<Vec3, 2> d{Vec3::Zero(), Vec3::Zero()};
  for (const Term& t : terms) {
    const double w1 = 2 * std::numbers::pi * t.k1 / period[0];
    const double w2 = 2 * std::numbers::pi * t.k2 / period[1];
    const double th = w1 * xi[0] + w2 * xi[1];
    const Vec3 dv = -t.a * std::sin(th) + t.b * std::cos(th);
    d[0] += w1 * dv;
    d[1] += w2 * dv;
  }
  return d;
}

TrigField TrigField::random(std::mt19937_64& rng, int harmonics, std::array<double, 2> period,
                            int max_wavenumber) {
  std::uniform_int_distribution<int> k(-max_wavenumber, max_wavenumber);
  std::normal_distribution<double> c(0.0, 1.0);
  TrigField f;
  f.period = period;
  for (int h = 0; h < harmonics; ++h) {
    Term t;
    t.k1 = k(rng);
    t.k2 = k(rng);
    t.a = Vec3(c(rng), c(rng), c(rng));
    t.b = Vec3(c(rng), c(rng), c(rng));
    f.terms.push_back(t);
  }
  return f;
}

namespace {

LemmaCheck lemma_impl(const PeriodicGrid& grid,
                      const std::function<std::pair<Vec3, std::array<Vec3, 2>>(const Eigen::Vector2d&)>& om,
                      const TrigField& w) {
  if (!grid.chart().crease_lines().empty()) {
    throw std::invalid_argument("symmetry lemma check needs a smooth chart");
  }
  std::vector<double> a(grid.size()), b(grid.size()), sa(grid.size()), sb(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    const Eigen::Vector2d xi = grid.coords({k, 0, 0});
    const auto& x = grid.partials(k);
    const auto [ov, od] = om(xi);
    const Vec3 wv = w.value(xi);
    const auto wd = w.partials(xi);
    const Vec3 Dw = wd[1].cross(x[0]) - wd[0].cross(x[1]);
    const Vec3 Do = od[1].cross(x[0]) - od[0].cross(x[1]);
    a[k] = ov.dot(Dw);
    b[k] = wv.dot(Do);
    sa[k] = ov.norm() * Dw.norm();
    sb[k] = wv.norm() * Do.norm();
  }
  return {cell_average(a, grid), cell_average(b, grid), cell_average(sa, grid) + cell_average(sb, grid)};
}

}  // namespace

LemmaCheck symmetry_lemma_check(const PeriodicGrid& grid, const TrigField& omega, const TrigField& w) {
  return lemma_impl(
      grid, [&](const Eigen::Vector2d& xi) { return std::make_pair(omega.value(xi), omega.partials(xi)); },
      w);
}

LemmaCheck symmetry_lemma_check(const PeriodicGrid& grid, const Vec3& omega, const TrigField& w) {
  return lemma_impl(
      grid,
      [&](const Eigen::Vector2d&) {
        return std::make_pair(omega, std::array<Vec3, 2>{Vec3::Zero(), Vec3::Zero()});
      },
      w);
}

// ---------------------------------------------------------------- scaling limit

ScalingCheck scaling_limit_check(const AnalyticMode& mode, const PeriodGeometry& geometry,
                                 const std::vector<double>& eps, int probes_per_side) {
  if (probes_per_side < 2) throw std::invalid_argument("need at least 2 probes per side");
  ScalingCheck out;
  out.eps = eps;
  const std::array<Vec3, 2> W{mode.W1, mode.W2};
  const std::array<Vec3, 2> p{geometry.p1, geometry.p2};
  const Vec3 anchor = mode.deflection(Eigen::Vector2d::Zero());
  for (double e : eps) {
    double worst = 0;
    for (int i = 0; i < probes_per_side; ++i) {
      for (int j = 0; j < probes_per_side; ++j) {
        const Eigen::Vector2d xi(-1.0 + 2.0 * i / (probes_per_side - 1),
                                 -1.0 + 2.0 * j / (probes_per_side - 1));
        Vec3 limit = Vec3::Zero();
        for (int m = 0; m < 2; ++m) {
          for (int n = 0; n < 2; ++n) limit += 0.5 * xi[m] * xi[n] * W[n].cross(p[m]);
        }
        const Vec3 v = e * e * (mode.deflection(xi / e) - anchor);
        worst = std::max(worst, (v - limit).norm());
      }
    }
    out.error.push_back(worst);
  }
  out.monotone = true;
  for (std::size_t k = 1; k < out.error.size(); ++k) {
    if (!(out.error[k] < out.error[k - 1])) out.monotone = false;
  }
  // Least-squares slope in log-log, skipping exact zeros.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t k = 0; k < eps.size(); ++k) {
    if (out.error[k] <= 0) continue;
    const double x = std::log(eps[k]), y = std::log(out.error[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n >= 2) out.fitted_rate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return out;
}

// ---------------------------------------------------------------- reparametrization

ReparametrizationCheck reparametrization_check(const Profile& f, const Profile& g, double gamma) {
  ReparametrizationCheck out;
  out.gamma = gamma;
  out.shear << 1, 0, gamma, 1;
  const double F = f.mean_slope_squared();
  const double G = g.mean_slope_squared();
  Mat2 D = Mat2::Zero();
  D(0, 0) = F;
  D(1, 1) = -G;
  out.E_congruence = out.shear.transpose() * D * out.shear;

  // Direct route: average strain of the sheared closed-form deflection,
  // pdot_a = (xdot(xi + T_a e_a) - xdot(xi)) / T_a, paired with p_a.
  const SurfaceChart chart = SurfaceChart::sheared_double_corrugation(f, g, gamma);
  const AnalyticMode mode = analytic_mode(ExampleId::sheared_membrane, chart);
  const PeriodGeometry geo = period_geometry(chart);
  const Eigen::Vector2d base(0.37, 0.11);
  std::array<Vec3, 2> pdot;
  for (int a = 0; a < 2; ++a) {
    const Eigen::Vector2d step = chart.period(a) * Eigen::Vector2d::Unit(a);
    pdot[a] = (mode.deflection(base + step) - mode.deflection(base)) / chart.period(a);
  }
  out.E_direct = membrane_tensor({geo.p1, geo.p2}, pdot);
  out.congruence_error = (out.E_direct - out.E_congruence).norm();

  // Unsheared bending space: F chi22 - G chi11 = 0.
  Mat2 dome = Mat2::Zero();
  dome(0, 0) = F;
  dome(1, 1) = G;
  Mat2 twist = Mat2::Zero();
  twist(0, 1) = twist(1, 0) = 1;
  out.chi_unsheared = {dome, twist, 0.3 * dome - 1.7 * twist};
  for (const Mat2& c : out.chi_unsheared) {
    const Mat2 cs = out.shear.transpose() * c * out.shear;
    out.chi_sheared.push_back(cs);
    out.residual_unsheared.push_back(orthogonality_residual(D, c));
    out.residual_sheared.push_back(orthogonality_residual(out.E_congruence, cs));
    out.residual_rearranged.push_back(
        F * cs(1, 1) - G * (gamma * gamma * cs(1, 1) - 2 * gamma * cs(0, 1) + cs(0, 0)));
    out.residual_printed_sign.push_back(
        F * cs(1, 1) - G * (gamma * gamma * cs(1, 1) + 2 * gamma * cs(0, 1) + cs(0, 0)));
  }
  return out;
}

}  // namespace corruga
