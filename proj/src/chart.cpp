#include "corruga/chart.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace corruga {

using json = nlohmann::json;

std::string to_string(Family family) {
  switch (family) {
    case Family::plane:
      return "plane";
    case Family::simple_corrugation:
      return "simple-corrugation";
    case Family::double_corrugation:
      return "double-corrugation";
    case Family::translation_surface:
      return "translation-surface";
    case Family::miura_like:
      return "miura-like";
    case Family::sheared_double_corrugation:
      return "sheared-double-corrugation";
  }
  return "unknown";
}

Family family_from_string(std::string_view name) {
  for (Family f : {Family::plane, Family::simple_corrugation, Family::double_corrugation,
                   Family::translation_surface, Family::miura_like,
                   Family::sheared_double_corrugation}) {
    if (name == to_string(f)) return f;
  }
  throw std::invalid_argument("unknown surface family '" + std::string(name) + "'");
}

Vec3 SpaceCurve::value(double t) const {
  Vec3 x = t * axis;
  if (profile) x += profile->value(t) * direction;
  return x;
}

Vec3 SpaceCurve::derivative(double t, Side side) const {
  Vec3 d = axis;
  if (profile) d += profile->slope(t, side) * direction;
  return d;
}

namespace {

void require_period(const Profile& p, double T, const char* what) {
  if (std::abs(p.period() - T) > 1e-12 * T) {
    throw std::invalid_argument(std::string(what) + " period does not match the chart period");
  }
}

}  // namespace

SurfaceChart SurfaceChart::plane(double T1, double T2) {
  if (!(T1 > 0) || !(T2 > 0)) throw std::invalid_argument("periods must be positive");
  SurfaceChart c;
  c.family_ = Family::plane;
  c.period_ = {T1, T2};
  c.curves_[0] = {std::nullopt, Vec3::UnitX(), Vec3::UnitZ()};
  c.curves_[1] = {std::nullopt, Vec3::UnitY(), Vec3::UnitZ()};
  return c;
}

SurfaceChart SurfaceChart::simple_corrugation(const Profile& f, double T2) {
  SurfaceChart c = plane(f.period(), T2);
  c.family_ = Family::simple_corrugation;
  c.curves_[0].profile = f;
  return c;
}

SurfaceChart SurfaceChart::double_corrugation(const Profile& f, const Profile& g) {
  SurfaceChart c = plane(f.period(), g.period());
  c.family_ = Family::double_corrugation;
  c.curves_[0].profile = f;
  c.curves_[1].profile = g;
  return c;
}

SurfaceChart SurfaceChart::miura_like(const Profile& f, const Profile& g) {
  if (g.kind() == ProfileKind::sinusoidal ||
      (g.kind() == ProfileKind::piecewise_quadratic)) {
    throw std::invalid_argument("miura-like chart needs g' nonzero almost everywhere (piecewise-linear g)");
  }
  SurfaceChart c = plane(f.period(), g.period());
  c.family_ = Family::miura_like;
  c.curves_[0] = {f, Vec3::UnitX(), Vec3::UnitY()};
  c.curves_[1] = {g, Vec3::UnitY(), Vec3::UnitZ()};
  return c;
}

SurfaceChart SurfaceChart::translation_surface(const SpaceCurve& alpha, const SpaceCurve& beta,
                                               double T1, double T2) {
  SurfaceChart c = plane(T1, T2);
  if (alpha.profile) require_period(*alpha.profile, T1, "alpha");
  if (beta.profile) require_period(*beta.profile, T2, "beta");
  if (alpha.axis.cross(beta.axis).norm() < 1e-12 * alpha.axis.norm() * beta.axis.norm()) {
    throw std::invalid_argument("translation surface axes must be linearly independent");
  }
  c.family_ = Family::translation_surface;
  c.curves_ = {alpha, beta};
  return c;
}

SurfaceChart SurfaceChart::sheared_double_corrugation(const Profile& f, const Profile& g,
                                                      double gamma) {
  SurfaceChart c = double_corrugation(f, g);
  const double turns = gamma * c.period_[0] / c.period_[1];
  if (!std::isfinite(gamma) || std::abs(turns - std::round(turns)) > 1e-9) {
    throw std::invalid_argument("gamma * T1 must be an integer multiple of T2");
  }
  c.family_ = Family::sheared_double_corrugation;
  c.gamma_ = gamma;
  return c;
}

std::vector<Profile> SurfaceChart::profiles() const {
  std::vector<Profile> out;
  for (const SpaceCurve& c : curves_) {
    if (c.profile) out.push_back(*c.profile);
  }
  return out;
}

Vec3 SurfaceChart::evaluate(const Eigen::Vector2d& xi) const {
  if (!xi.allFinite()) throw std::invalid_argument("parameter must be finite");
  if (family_ == Family::sheared_double_corrugation) {
    const double eta = xi[1] + gamma_ * xi[0];
    return {xi[0], eta, curves_[0].profile->value(xi[0]) + curves_[1].profile->value(eta)};
  }
  return curves_[0].value(xi[0]) + curves_[1].value(xi[1]);
}

std::array<Vec3, 2> SurfaceChart::partials(const Eigen::Vector2d& xi, SidePair sides) const {
  std::array<Vec3, 2> d;
  if (family_ == Family::sheared_double_corrugation) {
    const double eta = xi[1] + gamma_ * xi[0];
    const double fp = curves_[0].profile->slope(xi[0], sides[0]);
    const double gp = curves_[1].profile->slope(eta, sides[1]);
    d[0] = Vec3(1, gamma_, fp + gamma_ * gp);
    d[1] = Vec3(0, 1, gp);
  } else {
    d[0] = curves_[0].derivative(xi[0], sides[0]);
    d[1] = curves_[1].derivative(xi[1], sides[1]);
  }
  if (d[0].cross(d[1]).norm() <= 1e-12 * d[0].norm() * d[1].norm()) {
    throw std::domain_error("degenerate chart: partial derivatives are parallel");
  }
  return d;
}

std::vector<CreaseLine> SurfaceChart::crease_lines() const {
  std::vector<CreaseLine> lines;
  for (int a = 0; a < 2; ++a) {
    const auto& prof = curves_[a].profile;
    if (!prof) continue;
    for (std::size_t k = 0; k < prof->breakpoints().size(); ++k) {
      if (!prof->creases_at(k)) continue;
      Eigen::Vector2d normal = Eigen::Vector2d::Unit(a);
      if (a == 1 && family_ == Family::sheared_double_corrugation) normal = {gamma_, 1.0};
      lines.push_back({normal, prof->breakpoints()[k]});
    }
  }
  return lines;
}

AxisBreaks SurfaceChart::axis_breaks(int direction) const {
  if (!axis_aligned()) {
    throw std::domain_error("chart has oblique crease lines; no axis-aligned decomposition");
  }
  AxisBreaks out;
  const auto& prof = curves_[direction].profile;
  if (!prof) return out;
  out.points = prof->breakpoints();
  for (std::size_t k = 0; k < out.points.size(); ++k) out.crease.push_back(prof->creases_at(k));
  return out;
}

Vec3 SurfaceChart::lattice_vector(int direction) const {
  if (family_ == Family::sheared_double_corrugation) {
    return direction == 0 ? Vec3(period_[0], gamma_ * period_[0], 0) : Vec3(0, period_[1], 0);
  }
  return period_[direction] * curves_[direction].axis;
}

Vec3 evaluate_chart(const SurfaceChart& chart, const Eigen::Vector2d& xi) {
  return chart.evaluate(xi);
}

std::array<Vec3, 2> chart_partials(const SurfaceChart& chart, const Eigen::Vector2d& xi,
                                   SidePair sides) {
  return chart.partials(xi, sides);
}

PeriodGeometry period_geometry(const SurfaceChart& chart) {
  PeriodGeometry g;
  g.p1 = chart.lattice_vector(0) / chart.period(0);
  g.p2 = chart.lattice_vector(1) / chart.period(1);
  const Vec3 c = g.p1.cross(g.p2);
  if (c.norm() <= 1e-12 * g.p1.norm() * g.p2.norm()) {
    throw std::domain_error("mean tangents p1, p2 are linearly dependent");
  }
  g.n = c.normalized();
  return g;
}

// ---------------------------------------------------------------- JSON

namespace {

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 json_vec(const json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json profile_json(const Profile& p) {
  json j;
  j["kind"] = to_string(p.kind());
  j["amplitude"] = p.amplitude();
  j["breakpoints"] = p.breakpoints();
  return j;
}

Profile json_profile(const json& j, double period) {
  if (!j.contains("kind")) throw std::invalid_argument("profile needs a 'kind'");
  const double amplitude = j.value("amplitude", 1.0);
  std::vector<double> bps;
  if (j.contains("breakpoints")) bps = j.at("breakpoints").get<std::vector<double>>();
  return Profile::make(profile_kind_from_string(j.at("kind").get<std::string>()), amplitude,
                       period, std::move(bps));
}

}  // namespace

std::string chart_to_json(const SurfaceChart& chart) {
  json j;
  j["family"] = to_string(chart.family());
  j["period"] = {chart.period(0), chart.period(1)};
  json profiles = json::array();
  for (int a = 0; a < 2; ++a) {
    const SpaceCurve& c = chart.curve(a);
    if (!c.profile) continue;
    json pj = profile_json(*c.profile);
    if (chart.family() == Family::translation_surface) {
      pj["axis"] = vec_json(c.axis);
      pj["direction"] = vec_json(c.direction);
    }
    profiles.push_back(pj);
  }
  if (chart.family() == Family::translation_surface) {
    // Straight curves have no profile entry; keep their axes explicitly.
    j["axes"] = {vec_json(chart.curve(0).axis), vec_json(chart.curve(1).axis)};
  }
  j["profiles"] = profiles;
  if (chart.family() == Family::sheared_double_corrugation) j["gamma"] = chart.gamma();
  return j.dump(2);
}

SurfaceChart chart_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("surface config parse error: ") + e.what());
  }
  if (!j.contains("family")) throw std::invalid_argument("surface config needs a 'family'");
  const Family family = family_from_string(j.at("family").get<std::string>());
  double T1 = SurfaceChart::kTwoPi, T2 = SurfaceChart::kTwoPi;
  if (j.contains("period")) {
    const auto& per = j.at("period");
    if (!per.is_array() || per.size() != 2) throw std::invalid_argument("'period' must be [T1, T2]");
    T1 = per[0].get<double>();
    T2 = per[1].get<double>();
  }
  const json profiles = j.value("profiles", json::array());
  auto need = [&](std::size_t n) {
    if (profiles.size() != n) {
      throw std::invalid_argument(to_string(family) + " needs " + std::to_string(n) +
                                  " profile(s)");
    }
  };

  switch (family) {
    case Family::plane:
      need(0);
      return SurfaceChart::plane(T1, T2);
    case Family::simple_corrugation:
      need(1);
      return SurfaceChart::simple_corrugation(json_profile(profiles[0], T1), T2);
    case Family::double_corrugation:
      need(2);
      return SurfaceChart::double_corrugation(json_profile(profiles[0], T1),
                                              json_profile(profiles[1], T2));
    case Family::miura_like:
      need(2);
      return SurfaceChart::miura_like(json_profile(profiles[0], T1),
                                      json_profile(profiles[1], T2));
    case Family::sheared_double_corrugation: {
      need(2);
      const double gamma = j.value("gamma", T2 / T1);
      return SurfaceChart::sheared_double_corrugation(json_profile(profiles[0], T1),
                                                      json_profile(profiles[1], T2), gamma);
    }
    case Family::translation_surface: {
      std::array<SpaceCurve, 2> curves;
      curves[0] = {std::nullopt, Vec3::UnitX(), Vec3::UnitZ()};
      curves[1] = {std::nullopt, Vec3::UnitY(), Vec3::UnitZ()};
      if (j.contains("axes")) {
        curves[0].axis = json_vec(j.at("axes")[0]);
        curves[1].axis = json_vec(j.at("axes")[1]);
      }
      if (profiles.size() > 2) throw std::invalid_argument("translation surface takes at most 2 profiles");
      std::size_t next = 0;
      for (const json& pj : profiles) {
        int a = pj.value("curve", static_cast<int>(next));
        if (a < 0 || a > 1) throw std::invalid_argument("profile 'curve' must be 0 or 1");
        SpaceCurve& c = curves[a];
        c.profile = json_profile(pj, a == 0 ? T1 : T2);
        if (pj.contains("axis")) c.axis = json_vec(pj.at("axis"));
        if (pj.contains("direction")) c.direction = json_vec(pj.at("direction"));
        next = static_cast<std::size_t>(a) + 1;
      }
      return SurfaceChart::translation_surface(curves[0], curves[1], T1, T2);
    }
  }
  throw std::invalid_argument("unknown surface family");
}

SurfaceChart load_chart(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open surface config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return chart_from_json(ss.str());
}

void save_chart(const SurfaceChart& chart, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << chart_to_json(chart) << '\n';
}

// ---------------------------------------------------------------- built-ins

Profile sgn_cos_profile() {
  constexpr double pi = std::numbers::pi;
  return Profile::make(ProfileKind::piecewise_linear, 1.0, 2 * pi, {pi / 2, 3 * pi / 2});
}

Profile triangle_slope_profile() {
  constexpr double pi = std::numbers::pi;
  return Profile::make(ProfileKind::piecewise_quadratic, 1.0, 2 * pi, {0.0, pi});
}

std::vector<std::string> builtin_chart_names() {
  return {"plane",        "corrugation",  "sinusoidal-corrugation", "eggbox",
          "eggbox-hybrid", "miura",       "miura-hybrid",           "translation",
          "sheared-eggbox"};
}

SurfaceChart builtin_chart(std::string_view name) {
  const Profile s = sgn_cos_profile();
  if (name == "plane") return SurfaceChart::plane();
  if (name == "corrugation") return SurfaceChart::simple_corrugation(s);
  if (name == "sinusoidal-corrugation") {
    return SurfaceChart::simple_corrugation(
        Profile::make(ProfileKind::sinusoidal, 1.0, SurfaceChart::kTwoPi));
  }
  if (name == "eggbox") return SurfaceChart::double_corrugation(s, s);
  if (name == "eggbox-hybrid") return SurfaceChart::double_corrugation(triangle_slope_profile(), s);
  if (name == "miura") return SurfaceChart::miura_like(s, s);
  if (name == "miura-hybrid") return SurfaceChart::miura_like(triangle_slope_profile(), s);
  if (name == "translation") {
    SpaceCurve a{s, Vec3(1, 0, 0), Vec3(0, 0.5, 0.8)};
    SpaceCurve b{s, Vec3(0.4, 1, 0), Vec3(0.3, 0, 1)};
    return SurfaceChart::translation_surface(a, b, SurfaceChart::kTwoPi, SurfaceChart::kTwoPi);
  }
  if (name == "sheared-eggbox") return SurfaceChart::sheared_double_corrugation(s, s, 1.0);
  throw std::invalid_argument("unknown built-in surface '" + std::string(name) + "'");
}

}  // namespace corruga
