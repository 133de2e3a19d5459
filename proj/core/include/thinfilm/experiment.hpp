#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thinfilm/bounds.hpp"
#include "thinfilm/config.hpp"
#include "thinfilm/ode_lemmas.hpp"
#include "thinfilm/stepper.hpp"

namespace thinfilm {

struct RunOutcome {
  ExperimentConfig config;
  RunResult result;
  EnvelopeParams params;
  std::string family;
  std::vector<State> snapshots;  // about six evenly spaced film profiles
};

/// Validates the config, integrates it and fills envelope and hypothesis
/// columns of every record.
RunOutcome run_experiment(const ExperimentConfig& config, const RecordSink& sink = {});

/// First recorded time with h1_error <= threshold, NaN if never reached.
double time_to_threshold(std::span<const SimRecord> records, double threshold);

struct VerifyReport {
  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  std::string name;
  std::string model;
  std::string force;
  std::string family;
  HypothesisVerdict hyp;
  bool applicable = false;
  std::string reason;
  double slack = 0.05;
  std::size_t checked = 0;
  std::size_t violations = 0;
  double max_ratio = kNaN;  // max over t of h1_error / envelope
  double worst_t = kNaN;
  bool initial_dominates = false;

  double max_mass_error = 0.0;  // max |mass - expected| / (1 + expected)
  double final_energy_residual = 0.0;

  // Informational: measured dissipation window against its bound.
  std::size_t window_checked = 0;
  std::size_t window_violations = 0;
  double window_max_ratio = kNaN;

  std::optional<double> extinction_bound;
  double extinction_time = kNaN;
  EnvelopeParams params;

  bool passed() const noexcept { return !applicable || (violations == 0 && initial_dominates); }
  std::string text() const;
  std::string json() const;
};

VerifyReport verify_bounds(const RunOutcome& run, double slack = 0.05);

/// Writes the CSV, SVGs and (if given) the verify report to the paths named
/// in the run's config; empty paths are skipped.
void write_run_outputs(const RunOutcome& run, const VerifyReport* report);

struct SweepCase {
  double alpha = 1.0;
  double t_end = 0.0;
  double time_to_threshold = std::numeric_limits<double>::quiet_NaN();
  double final_h1 = std::numeric_limits<double>::quiet_NaN();
  std::size_t steps = 0;
  std::string error;  // non-empty when the case aborted
  std::vector<SimRecord> records;
};

struct SweepResult {
  double threshold = 1e-3;
  std::vector<SweepCase> cases;

  /// Time-to-threshold strictly increasing along the alpha list.
  bool ordered() const;
  std::string csv() const;
  std::string svg(const std::string& title) const;
};

/// Runs base with each alpha (and matching t_end; one value applies to all,
/// none keeps the base horizon) on up to `jobs` threads.
SweepResult sweep(const ExperimentConfig& base, const std::vector<double>& alphas,
                  const std::vector<double>& t_ends, unsigned jobs, double threshold = 1e-3);

struct LemmaCheckReport {
  std::uint64_t seed = 1;
  std::size_t instances = 0;
  double tol = 1e-6;
  std::vector<LemmaSuiteResult> suites;

  bool passed() const noexcept;
  std::string text() const;
  std::string json() const;
};

LemmaCheckReport lemma_check(std::uint64_t seed, std::size_t instances, const std::vector<LemmaKind>& kinds,
                             unsigned jobs, double tol = 1e-6);

/// Runs fn(i) for i in [0, n) on up to `jobs` worker threads.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace thinfilm
