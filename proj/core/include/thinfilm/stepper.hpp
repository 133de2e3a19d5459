#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "thinfilm/diagnostics.hpp"
#include "thinfilm/error.hpp"
#include "thinfilm/forcing.hpp"
#include "thinfilm/grid.hpp"
#include "thinfilm/model.hpp"

namespace thinfilm {

struct State {
  double t = 0.0;
  Field u;
};

enum class Scheme {
  Explicit,      ///< forward Euler under the dx^4 limit
  SemiImplicit,  ///< mobility lagged, fourth-order operator implicit
  Auto,          ///< semi-implicit for power-law alpha < 1, explicit otherwise
};

const char* to_string(Scheme scheme) noexcept;
Scheme parse_scheme(const std::string& name);

struct StepControl {
  double cfl = 0.4;
  double dt_max = 1e-2;
  double t_end = 1.0;
  double record_every = 0.1;
  double tol_extinct = 1e-6;
  /// Semi-implicit steps keep max|dt div F| below cfl * change_tol * mean(u).
  double change_tol = 1e-5;
  Scheme scheme = Scheme::Auto;
  /// Stop early once a constant-force shear-thickening run reaches the
  /// reference to within tol_extinct of its initial H1 error.
  bool stop_on_extinction = true;
  std::size_t max_steps = 200'000'000;

  /// Throws ConfigError("control.*").
  void validate() const;
};

/// du/dt with the conservative flux form; boundary fluxes are zero.
Field rhs(const State& state, const Grid& grid, const FluidModel& model, const Force& force);

/// min(dt_max, cfl dx^4 / (8 kappa), next_record - t) with kappa the model's
/// effective stiffness at the current max height and max |u_xxx|.
double stable_dt(const State& state, const Grid& grid, const FluidModel& model, const StepControl& control,
                 double next_record = std::numeric_limits<double>::infinity());

Scheme resolve_scheme(Scheme requested, const FluidModel& model);

/// Raised when a run cannot continue; carries the last state that passed the
/// positivity and finiteness checks.
class SolverAbort : public Error {
 public:
  SolverAbort(ErrorKind kind, const std::string& what, State last_good)
      : Error(kind, what), last_good_(std::move(last_good)) {}
  const State& last_good() const noexcept { return last_good_; }

 private:
  State last_good_;
};

enum class StopReason { Horizon, ExtinctionReached };

struct RunResult {
  State final;
  std::vector<SimRecord> records;
  StopReason reason = StopReason::Horizon;
  Scheme scheme = Scheme::Explicit;
  std::size_t steps = 0;
  double dt_min = std::numeric_limits<double>::infinity();
  double dt_max = 0.0;
  double extinction_time = std::numeric_limits<double>::quiet_NaN();
};

using RecordSink = std::function<void(const State&, const SimRecord&)>;

/// Integrates from `initial` to control.t_end, recording at multiples of
/// record_every and at the end. Record states come from a partial step off
/// the main trajectory, so the step sequence never depends on the recording
/// cadence.
RunResult advance(State initial, const Grid& grid, const FluidModel& model, const Force& force,
                  const StepControl& control, const RecordSink& sink = {});

}  // namespace thinfilm
