#include "thinfilm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "thinfilm/output.hpp"

namespace thinfilm {

namespace {

using nlohmann::json;

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

bool power_law_tail(const RunOutcome& run) {
  // Polynomial envelopes read best on log-log axes, exponential ones on semilog.
  return !run.params.ellis && run.params.alpha > 1.0;
}

}  // namespace

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

RunOutcome run_experiment(const ExperimentConfig& config, const RecordSink& sink) {
  config.validate();
  RunOutcome out;
  out.config = config;
  const Grid grid = config.grid();
  const FluidModel model = config.fluid();
  const Force force = config.forcing();
  out.params = compute_params(config.u0, force, model);
  out.family = envelope_family(out.params, force);

  const double t_end = config.control.t_end;
  constexpr int kSnapshots = 6;
  int next_snap = 0;
  auto collect = [&](const State& s, const SimRecord& r) {
    const double target = t_end * next_snap / (kSnapshots - 1);
    if (next_snap < kSnapshots && s.t >= target - 1e-9 * std::max(1.0, t_end)) {
      out.snapshots.push_back(s);
      ++next_snap;
    }
    if (sink) sink(s, r);
  };

  out.result = advance(State{0.0, config.initial_field()}, grid, model, force, config.control, collect);
  if (out.snapshots.empty() || out.snapshots.back().t != out.result.final.t) {
    out.snapshots.push_back(out.result.final);
  }
  for (auto& r : out.result.records) {
    r.hyp_ok = out.params.applicable;
    r.envelope = envelope_for(out.params, force, r.t);
  }
  return out;
}

double time_to_threshold(std::span<const SimRecord> records, double threshold) {
  for (const auto& r : records) {
    if (r.h1_error <= threshold) return r.t;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

VerifyReport verify_bounds(const RunOutcome& run, double slack) {
  VerifyReport rep;
  const auto& recs = run.result.records;
  const Force force = run.config.forcing();
  rep.name = run.config.name;
  rep.model = run.config.fluid().describe();
  rep.force = force.describe();
  rep.family = run.family;
  rep.hyp = run.params.hyp;
  rep.applicable = run.params.applicable;
  rep.reason = run.params.reason;
  rep.slack = slack;
  rep.params = run.params;
  rep.extinction_bound = predicted_extinction_bound(run.params);
  rep.extinction_time = run.result.extinction_time;

  for (const auto& r : recs) {
    rep.max_mass_error =
        std::max(rep.max_mass_error, std::abs(r.mass - r.mass_expected) / (1.0 + std::abs(r.mass_expected)));
  }
  if (!recs.empty()) rep.final_energy_residual = recs.back().energy_residual;

  if (rep.applicable) {
    constexpr double kAbsFloor = 1e-12;
    double worst = -1.0;
    for (const auto& r : recs) {
      if (!std::isfinite(r.envelope)) continue;
      ++rep.checked;
      const double ratio = (r.envelope > 0.0) ? r.h1_error / r.envelope
                                              : (r.h1_error > kAbsFloor ? std::numeric_limits<double>::infinity() : 0.0);
      if (ratio > worst) {
        worst = ratio;
        rep.worst_t = r.t;
      }
      if (r.h1_error > r.envelope * (1.0 + slack) + kAbsFloor) ++rep.violations;
    }
    if (rep.checked > 0) rep.max_ratio = worst;
    rep.initial_dominates = !recs.empty() && std::isfinite(recs.front().envelope) &&
                            recs.front().envelope >= recs.front().h1_error;

    double wmax = 0.0;
    for (const auto& r : recs) {
      if (r.t < 1.0 || 0.25 * r.t < recs.front().t) continue;
      const double measured = dissipation_window(recs, r.t);
      const double bound = dissipation_window_bound(run.params, recs, force, r.t);
      ++rep.window_checked;
      if (bound > 0.0) wmax = std::max(wmax, measured / bound);
      if (measured > bound * (1.0 + slack) + 1e-300) ++rep.window_violations;
    }
    if (rep.window_checked > 0) rep.window_max_ratio = wmax;
  }
  return rep;
}

std::string VerifyReport::text() const {
  std::ostringstream os;
  os << std::setprecision(6);
  os << "run:              " << name << "\n"
     << "model:            " << model << "\n"
     << "force:            " << force << "\n"
     << "envelope family:  " << family << "\n"
     << "hypotheses:       initial slope " << (hyp.initial_slope ? "ok" : "FAILS") << " (" << hyp.u0_slope
     << " vs " << hyp.u0_slope_limit << "), force gradient " << (hyp.force_gradient ? "ok" : "FAILS") << " ("
     << hyp.force_ratio << " vs " << hyp.force_ratio_limit << ")\n"
     << "amplitude checks: u0 " << (hyp.u0_amplitude ? "ok" : "fails") << ", force "
     << (hyp.force_amplitude ? "ok" : "fails") << "\n"
     << "constants:        m=" << params.m << " m1=" << params.m1 << " m2=" << params.m2 << " C6=" << params.C6
     << " h=" << params.h << " M0=" << params.M0 << "\n";
  if (!applicable) {
    os << "envelope:         not applicable (" << reason << ")\n";
  } else {
    os << "envelope:         " << checked << " records checked, " << violations << " violations at "
       << slack * 100 << "% slack, max h1/envelope = " << max_ratio << " at t = " << worst_t << "\n"
       << "initial value:    " << (initial_dominates ? "dominated" : "NOT dominated") << "\n"
       << "dissipation window (informational): " << window_checked << " checked, " << window_violations
       << " above bound, max ratio " << window_max_ratio << "\n";
  }
  if (extinction_bound) os << "extinction bound: t* <= " << *extinction_bound << "\n";
  if (std::isfinite(extinction_time)) os << "extinction seen:  t = " << extinction_time << "\n";
  os << "mass identity:    max relative error " << max_mass_error << "\n"
     << "energy residual:  " << final_energy_residual << "\n"
     << "verdict:          " << (passed() ? (applicable ? "PASS" : "PASS (not applicable)") : "FAIL") << "\n";
  return os.str();
}

std::string VerifyReport::json() const {
  nlohmann::json j;
  j["run"] = name;
  j["model"] = model;
  j["force"] = force;
  j["family"] = family;
  j["hypotheses"] = {{"initial_slope", hyp.initial_slope},
                     {"force_gradient", hyp.force_gradient},
                     {"u0_amplitude", hyp.u0_amplitude},
                     {"force_amplitude", hyp.force_amplitude},
                     {"u0_slope", hyp.u0_slope},
                     {"u0_slope_limit", hyp.u0_slope_limit},
                     {"force_ratio", hyp.force_ratio},
                     {"force_ratio_limit", hyp.force_ratio_limit}};
  j["constants"] = {{"m", number_or_null(params.m)},   {"m1", number_or_null(params.m1)},
                    {"m2", number_or_null(params.m2)}, {"C6", number_or_null(params.C6)},
                    {"h", number_or_null(params.h)},   {"M0", number_or_null(params.M0)},
                    {"C1", params.C1},                 {"C4", params.C4}};
  j["applicable"] = applicable;
  if (!applicable) j["reason"] = reason;
  j["dominance"] = {{"checked", checked},
                    {"violations", violations},
                    {"slack", slack},
                    {"max_ratio", number_or_null(max_ratio)},
                    {"worst_t", number_or_null(worst_t)},
                    {"initial_dominates", initial_dominates}};
  j["dissipation_window"] = {{"soft", true},
                             {"checked", window_checked},
                             {"above_bound", window_violations},
                             {"max_ratio", number_or_null(window_max_ratio)}};
  j["extinction_bound"] = extinction_bound ? nlohmann::json(*extinction_bound) : nlohmann::json(nullptr);
  j["extinction_time"] = number_or_null(extinction_time);
  j["max_mass_error"] = max_mass_error;
  j["final_energy_residual"] = final_energy_residual;
  j["passed"] = passed();
  return j.dump(2) + "\n";
}

void write_run_outputs(const RunOutcome& run, const VerifyReport* report) {
  const OutputSpec& o = run.config.output;
  if (!o.csv.empty()) write_atomic(o.csv, records_csv(run.result.records));
  if (!o.svg_profiles.empty()) {
    write_atomic(o.svg_profiles, profiles_svg(run.config.grid(), run.snapshots, run.config.name + ": film height"));
  }
  if (!o.svg_error.empty()) {
    const bool loglog = power_law_tail(run);
    write_atomic(o.svg_error, error_svg(run.result.records, run.config.name + ": H1 error", loglog, true));
  }
  if (report != nullptr) {
    if (!o.report_json.empty()) write_atomic(o.report_json, report->json());
    if (!o.report_text.empty()) write_atomic(o.report_text, report->text());
  }
}

bool SweepResult::ordered() const {
  for (std::size_t i = 1; i < cases.size(); ++i) {
    const double a = cases[i - 1].time_to_threshold;
    const double b = cases[i].time_to_threshold;
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) return false;
  }
  return !cases.empty() && std::isfinite(cases.front().time_to_threshold);
}

std::string SweepResult::csv() const {
  std::string out = "alpha,t_end,time_to_threshold,final_h1,steps,status\n";
  for (const auto& c : cases) {
    out += format_number(c.alpha) + "," + format_number(c.t_end) + "," + format_number(c.time_to_threshold) + "," +
           format_number(c.final_h1) + "," + std::to_string(c.steps) + "," + (c.error.empty() ? "ok" : "aborted") +
           "\n";
  }
  return out;
}

std::string SweepResult::svg(const std::string& title) const {
  Chart chart;
  chart.title = title;
  chart.x_label = "t";
  chart.y_label = "H1 error";
  chart.log_y = true;
  for (const auto& c : cases) {
    Series s;
    std::ostringstream label;
    label << "alpha = " << c.alpha;
    s.label = label.str();
    for (const auto& r : c.records) {
      s.x.push_back(r.t);
      s.y.push_back(r.h1_error);
    }
    chart.series.push_back(std::move(s));
  }
  return render_svg(chart);
}

SweepResult sweep(const ExperimentConfig& base, const std::vector<double>& alphas, const std::vector<double>& t_ends,
                  unsigned jobs, double threshold) {
  if (alphas.empty()) throw ConfigError("alphas", "need at least one alpha");
  if (!t_ends.empty() && t_ends.size() != 1 && t_ends.size() != alphas.size()) {
    throw ConfigError("t_ends", "give one horizon, or one per alpha");
  }
  SweepResult res;
  res.threshold = threshold;
  res.cases.resize(alphas.size());
  std::vector<ExperimentConfig> cfgs(alphas.size(), base);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    cfgs[i].model.alpha = alphas[i];
    if (!t_ends.empty()) cfgs[i].control.t_end = t_ends.size() == 1 ? t_ends[0] : t_ends[i];
    std::ostringstream name;
    name << base.name << "-alpha" << alphas[i];
    cfgs[i].name = name.str();
    cfgs[i].validate();
  }
  parallel_for(alphas.size(), jobs, [&](std::size_t i) {
    SweepCase& c = res.cases[i];
    c.alpha = alphas[i];
    c.t_end = cfgs[i].control.t_end;
    try {
      RunOutcome run = run_experiment(cfgs[i]);
      c.records = std::move(run.result.records);
      c.steps = run.result.steps;
    } catch (const SolverAbort& e) {
      c.error = e.what();
    }
    if (!c.records.empty()) c.final_h1 = c.records.back().h1_error;
    c.time_to_threshold = time_to_threshold(c.records, threshold);
  });
  return res;
}

bool LemmaCheckReport::passed() const noexcept {
  return std::all_of(suites.begin(), suites.end(),
                     [](const LemmaSuiteResult& s) { return s.failures == 0 && s.bound_failures == 0; });
}

std::string LemmaCheckReport::text() const {
  std::ostringstream os;
  os << "seed " << seed << ", " << instances << " instances per lemma, tolerance " << tol << "\n";
  os << std::left << std::setw(10) << "lemma" << std::setw(11) << "instances" << std::setw(10) << "failures"
     << std::setw(15) << "bound-fails" << "worst margin\n";
  for (const auto& s : suites) {
    os << std::left << std::setw(10) << to_string(s.kind) << std::setw(11) << s.instances << std::setw(10)
       << s.failures << std::setw(15) << s.bound_failures << std::setprecision(4) << s.worst_margin << "  "
       << (s.failures == 0 && s.bound_failures == 0 ? "PASS" : "FAIL") << "\n";
  }
  return os.str();
}

std::string LemmaCheckReport::json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["instances"] = instances;
  j["tolerance"] = tol;
  j["passed"] = passed();
  for (const auto& s : suites) {
    j["suites"].push_back({{"lemma", to_string(s.kind)},
                           {"instances", s.instances},
                           {"failures", s.failures},
                           {"bound_failures", s.bound_failures},
                           {"worst_margin", number_or_null(s.worst_margin)},
                           {"worst_instance", s.worst_instance}});
  }
  return j.dump(2) + "\n";
}

LemmaCheckReport lemma_check(std::uint64_t seed, std::size_t instances, const std::vector<LemmaKind>& kinds,
                             unsigned jobs, double tol) {
  LemmaCheckReport rep;
  rep.seed = seed;
  rep.instances = instances;
  rep.tol = tol;
  rep.suites.resize(kinds.size());
  parallel_for(kinds.size(), jobs,
               [&](std::size_t i) { rep.suites[i] = run_lemma_suite(kinds[i], seed, instances, tol); });
  return rep;
}

}  // namespace thinfilm
