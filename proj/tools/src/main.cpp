// Command-line runner: run, sweep, verify-bounds, lemma-check, presets.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "thinfilm/config.hpp"
#include "thinfilm/experiment.hpp"
#include "thinfilm/output.hpp"

namespace fs = std::filesystem;
using namespace thinfilm;

namespace {

enum Exit { kOk = 0, kConfig = 2, kAbort = 3, kVerify = 4 };

unsigned default_jobs() {
  if (const char* env = std::getenv("THINFILM_JOBS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring THINFILM_JOBS='" << env << "'\n";
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct ConfigArgs {
  std::string config_path;
  std::string preset;
  std::vector<std::string> sets;
  std::string out_dir = ".";

  void attach(CLI::App* app) {
    app->add_option("-c,--config", config_path, "Config file (key = value lines)");
    app->add_option("-p,--preset", preset, "Start from a built-in preset");
    app->add_option("-s,--set", sets, "Override one key, e.g. --set model.alpha=1.5")->take_all();
    app->add_option("-o,--out-dir", out_dir, "Directory for outputs without an explicit path");
  }

  ExperimentConfig build() const {
    ExperimentConfig cfg;
    if (!preset.empty()) cfg = thinfilm::preset(preset);
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("config", "cannot read '" + config_path + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      cfg = ExperimentConfig::parse(ss.str(), cfg);
    }
    cfg.apply_overrides(sets);
    return cfg;
  }

  std::string path(const ExperimentConfig& cfg, const std::string& suffix) const {
    return (fs::path(out_dir) / (cfg.name + suffix)).string();
  }

  void default_outputs(ExperimentConfig& cfg) const {
    auto fill = [&](std::string& p, const char* suffix) {
      if (p.empty()) p = path(cfg, suffix);
    };
    fill(cfg.output.csv, ".csv");
    fill(cfg.output.svg_profiles, "_profiles.svg");
    fill(cfg.output.svg_error, "_error.svg");
    fill(cfg.output.report_json, "_report.json");
    fill(cfg.output.report_text, "_report.txt");
  }
};

void dump_last_good(const SolverAbort& e, const ExperimentConfig& cfg, const ConfigArgs& args) {
  const std::string p = args.path(cfg, "_last_good.csv");
  const Grid g = cfg.grid();
  const auto xs = g.centers();
  std::string out = "# t = " + format_number(e.last_good().t) + "\nx,u\n";
  for (std::size_t i = 0; i < xs.size() && i < e.last_good().u.size(); ++i) {
    out += format_number(xs[i]) + "," + format_number(e.last_good().u[i]) + "\n";
  }
  try {
    write_atomic(p, out);
    std::cerr << "last good state (t = " << e.last_good().t << ") written to " << p << "\n";
  } catch (const std::exception& w) {
    std::cerr << "could not dump last good state: " << w.what() << "\n";
  }
}

int run_single(const ConfigArgs& args, bool strict) {
  ExperimentConfig cfg = args.build();
  args.default_outputs(cfg);
  try {
    RunOutcome run = run_experiment(cfg);
    const VerifyReport rep = verify_bounds(run);
    write_run_outputs(run, &rep);
    std::cout << rep.text();
    std::cout << "steps: " << run.result.steps << " (" << to_string(run.result.scheme) << "), records: "
              << run.result.records.size() << ", csv: " << cfg.output.csv << "\n";
    return strict && !rep.passed() ? kVerify : kOk;
  } catch (const SolverAbort& e) {
    std::cerr << "solver aborted (" << to_string(e.kind()) << "): " << e.what() << "\n";
    dump_last_good(e, cfg, args);
    return kAbort;
  }
}

std::vector<double> parse_list(const std::string& s, const char* key) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(key, "not a number: '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-difference thin-film simulator with decay-bound verification"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned jobs = default_jobs();
  app.add_option("-j,--jobs", jobs, "Worker threads (default: THINFILM_JOBS or core count)")
      ->check(CLI::PositiveNumber);

  ConfigArgs run_args, verify_args, sweep_args;

  auto* run = app.add_subcommand("run", "Integrate one configuration and write CSV, SVG and report");
  run_args.attach(run);

  auto* verify = app.add_subcommand("verify-bounds", "Run and check decay envelopes; exit 4 on violation");
  verify_args.attach(verify);

  auto* sw = app.add_subcommand("sweep", "Run one configuration for several alpha values");
  sweep_args.attach(sw);
  std::string alphas = "0.5,1,1.5", t_ends;
  double threshold = 1e-3;
  sw->add_option("--alphas", alphas, "Comma-separated alpha values")->capture_default_str();
  sw->add_option("--t-ends", t_ends, "Horizon per alpha (one value or one per alpha)");
  sw->add_option("--threshold", threshold, "H1 error threshold for time-to-threshold")->capture_default_str();

  auto* lemma = app.add_subcommand("lemma-check", "Randomized ODE comparison-lemma dominance suites");
  std::uint64_t seed = 1;
  std::size_t n = 200;
  double tol = 1e-6;
  std::vector<std::string> lemmas{"y1", "lem01", "inequ", "inequ11"};
  std::string lemma_json;
  lemma->add_option("--seed", seed)->capture_default_str();
  lemma->add_option("-n,--instances", n)->capture_default_str();
  lemma->add_option("--tol", tol, "Relative dominance tolerance")->capture_default_str();
  lemma->add_option("--lemmas", lemmas, "Subset of y1, lem01, inequ, inequ11")->delimiter(',');
  lemma->add_option("--json", lemma_json, "Also write the report as JSON");

  auto* presets = app.add_subcommand("presets", "List built-in configurations");
  std::string show;
  presets->add_option("--show", show, "Print one preset in config-file form");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_single(run_args, false);
    if (*verify) return run_single(verify_args, true);

    if (*sw) {
      const ExperimentConfig base = sweep_args.build();
      const SweepResult res = sweep(base, parse_list(alphas, "alphas"),
                                    t_ends.empty() ? std::vector<double>{} : parse_list(t_ends, "t_ends"), jobs,
                                    threshold);
      write_atomic(sweep_args.path(base, "_sweep.csv"), res.csv());
      write_atomic(sweep_args.path(base, "_sweep.svg"), res.svg(base.name + ": H1 error by alpha"));
      std::cout << res.csv();
      std::cout << "time-to-threshold increasing in alpha: " << (res.ordered() ? "yes" : "no") << "\n";
      for (const auto& c : res.cases) {
        if (!c.error.empty()) {
          std::cerr << "alpha " << c.alpha << " aborted: " << c.error << "\n";
          return kAbort;
        }
      }
      return kOk;
    }

    if (*lemma) {
      std::vector<LemmaKind> kinds;
      for (const auto& l : lemmas) kinds.push_back(parse_lemma(l));
      const LemmaCheckReport rep = lemma_check(seed, n, kinds, jobs, tol);
      std::cout << rep.text();
      if (!lemma_json.empty()) write_atomic(lemma_json, rep.json());
      return rep.passed() ? kOk : kVerify;
    }

    if (*presets) {
      if (!show.empty()) {
        std::cout << preset(show).to_text();
        return kOk;
      }
      for (const auto& name : preset_names()) std::cout << name << "  " << preset_summary(name) << "\n";
      return kOk;
    }
  } catch (const SolverAbort& e) {
    std::cerr << "solver aborted: " << e.what() << "\n";
    return kAbort;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return (e.kind() == ErrorKind::Config || e.kind() == ErrorKind::DryOut) ? kConfig : kAbort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
  return kOk;
}
