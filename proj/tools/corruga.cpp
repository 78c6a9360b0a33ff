// corruga: infinitesimal isometries of periodic surfaces.
//
//   corruga analyze --surface configs/eggbox.json --resolution 32 --out run
//   corruga verify all
//   corruga warp --section section.csv --alpha 1

#include "corruga/verification.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <Eigen/Core>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace corruga;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kError = 1, kVerifyFailed = 2, kAmbiguous = 3 };

SurfaceChart resolve_surface(const std::string& spec) {
  if (fs::exists(spec)) return load_chart(spec);
  for (const std::string& name : builtin_chart_names()) {
    if (name == spec) return builtin_chart(name);
  }
  throw std::invalid_argument("'" + spec + "' is neither a config file nor a built-in surface");
}

std::array<int, 2> parse_resolution(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) {
      const int n = std::stoi(text);
      return {n, n};
    }
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw std::invalid_argument("resolution must be N or N,M (got '" + text + "')");
  }
}

ThresholdPolicy parse_threshold(const std::string& text) {
  if (text == "auto") return ThresholdPolicy::automatic();
  try {
    std::size_t used = 0;
    const double cut = std::stod(text, &used);
    if (used == text.size() && cut > 0 && cut < 1) return ThresholdPolicy::fixed(cut);
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("threshold must be 'auto' or a relative cut in (0, 1)");
}

void apply_thread_cap() {
  if (const char* env = std::getenv("CORRUGA_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) Eigen::setNbThreads(n);
  }
}

struct AnalyzeArgs {
  std::string surface;
  std::string resolution = "32";
  std::string threshold = "auto";
  std::uint64_t seed = 1;
  std::string out = "corruga-out";
  bool export_obj = false;
};

int cmd_analyze(const AnalyzeArgs& args) {
  const SurfaceChart chart = resolve_surface(args.surface);
  AnalysisOptions opts;
  opts.resolution = parse_resolution(args.resolution);
  opts.policy = parse_threshold(args.threshold);
  opts.seed = args.seed;
  const Analysis a = analyze(chart, opts);

  fs::create_directories(args.out);
  auto report = nlohmann::ordered_json::parse(report_json(a));
  if (args.export_obj) {
    report["obj_amplitude"] = write_mode_meshes(a, (fs::path(args.out) / "modes").string());
  }
  std::ofstream(fs::path(args.out) / "report.json") << report.dump(2) << '\n';
  std::ofstream spectrum(fs::path(args.out) / "spectrum.csv");
  write_spectrum_csv(spectrum, a);

  const auto d = a.dims();
  std::cout << to_string(chart.family()) << " at " << opts.resolution[0] << "x" << opts.resolution[1]
            << ": ";
  if (a.ambiguous()) {
    std::cout << "ambiguous rank (" << a.nullspace.policy.describe() << "), report in " << args.out
              << '\n';
    return kAmbiguous;
  }
  std::cout << "null dim " << a.nullspace.decision.rank << ", dims (" << d[0] << "," << d[1]
            << "), max pair residual " << a.max_pair_residual() << ", " << a.timings.total
            << " s; report in " << args.out << '\n';
  return kOk;
}

int cmd_verify(const std::string& suite, int resolution, std::uint64_t seed, const std::string& json_path) {
  VerifyOptions o;
  o.resolution = resolution;
  o.seed = seed;
  VerificationContext ctx(o);
  const auto ids = suite_criteria(suite);
  std::vector<CriterionResult> results;
  for (int id : ids) {
    try {
      results.push_back(run_criterion(id, ctx));
    } catch (const std::exception& e) {
      results.push_back({id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what(), {}});
    }
    std::cout << format_line(results.back()) << std::endl;
  }
  const std::string summary = summary_json(results);
  if (json_path.empty()) {
    std::cout << summary << '\n';
  } else {
    std::ofstream(json_path) << summary << '\n';
  }
  const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  return ok ? kOk : kVerifyFailed;
}

int cmd_warp(const std::string& path, double alpha, const std::string& out) {
  const SectionCurve section = load_section_csv(path);
  if (section.closed) {
    const double d = dislocation(section, alpha);
    nlohmann::ordered_json j = {{"closed", true},
                                {"alpha", alpha},
                                {"dislocation", d},
                                {"signed_area", shoelace_area(section)}};
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  const WarpingResult w = warping_function(section, alpha);
  if (out.empty()) {
    write_warping_csv(std::cout, w);
  } else {
    std::ofstream f(out);
    write_warping_csv(f, w);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Infinitesimal isometries and effective strains of periodic surfaces"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "Null space, strain spaces and report for one surface");
  analyze_cmd->add_option("--surface", an.surface, "Config JSON or built-in surface name")->required();
  analyze_cmd->add_option("--resolution", an.resolution, "Nodes per period: N or N,M");
  analyze_cmd->add_option("--threshold", an.threshold, "auto, or a fixed relative cut");
  analyze_cmd->add_option("--seed", an.seed, "Seed recorded in the report");
  analyze_cmd->add_option("--out", an.out, "Output directory");
  analyze_cmd->add_flag("--export-obj", an.export_obj, "Write modes/*.obj");

  std::string suite;
  int vres = 64;
  std::uint64_t vseed = VerifyOptions{}.seed;
  std::string vjson;
  auto* verify_cmd = app.add_subcommand("verify", "Run acceptance checks");
  verify_cmd->add_option("suite", suite, "examples, lemma, scaling, warping or all")->required();
  verify_cmd->add_option("--resolution", vres, "Resolution for single-resolution checks");
  verify_cmd->add_option("--seed", vseed, "Seed for random lemma fields");
  verify_cmd->add_option("--json", vjson, "Write the summary here instead of stdout");

  std::string section;
  double alpha = 1.0;
  std::string wout;
  auto* warp_cmd = app.add_subcommand("warp", "Warping of a thin-walled section");
  warp_cmd->add_option("--section", section, "CSV of x,y samples")->required()->check(CLI::ExistingFile);
  warp_cmd->add_option("--alpha", alpha, "Twist per unit length");
  warp_cmd->add_option("--out", wout, "CSV for s,w (open sections)");

  std::string config_name, config_out;
  auto* config_cmd = app.add_subcommand("config", "Print or save the config of a built-in surface");
  config_cmd->add_option("name", config_name, "Built-in surface name")->required();
  config_cmd->add_option("--out", config_out, "Write to this file");

  CLI11_PARSE(app, argc, argv);
  apply_thread_cap();

  try {
    if (*analyze_cmd) return cmd_analyze(an);
    if (*verify_cmd) return cmd_verify(suite, vres, vseed, vjson);
    if (*warp_cmd) return cmd_warp(section, alpha, wout);
    if (*config_cmd) {
      const SurfaceChart chart = builtin_chart(config_name);
      if (config_out.empty()) {
        std::cout << chart_to_json(chart) << '\n';
      } else {
        save_chart(chart, config_out);
      }
      return kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
