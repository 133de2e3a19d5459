#include "thinfilm/stepper.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace thinfilm {

const char* to_string(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::Explicit: return "explicit";
    case Scheme::SemiImplicit: return "semi-implicit";
    case Scheme::Auto: return "auto";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "explicit") return Scheme::Explicit;
  if (name == "semi-implicit" || name == "semi_implicit") return Scheme::SemiImplicit;
  if (name == "auto") return Scheme::Auto;
  throw ConfigError("control.scheme", "expected explicit, semi-implicit or auto, got '" + name + "'");
}

void StepControl::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("control.cfl", "must lie in (0, 1]");
  if (!(dt_max > 0.0) || !std::isfinite(dt_max)) throw ConfigError("control.dt_max", "must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("control.t_end", "must be >= 0 and finite");
  if (!(record_every > 0.0) || !std::isfinite(record_every))
    throw ConfigError("control.record_every", "must be > 0");
  if (!(tol_extinct > 0.0 && tol_extinct < 1.0)) throw ConfigError("control.tol_extinct", "must lie in (0, 1)");
  if (!(change_tol > 0.0) || !std::isfinite(change_tol)) throw ConfigError("control.change_tol", "must be > 0");
}

Scheme resolve_scheme(Scheme requested, const FluidModel& model) {
  if (requested != Scheme::Auto) return requested;
  return (!model.is_ellis() && model.alpha() < 1.0) ? Scheme::SemiImplicit : Scheme::Explicit;
}

namespace {

double explicit_limit(const Grid& grid, const FluidModel& model, const StepControl& control, double u_max,
                      double d3_max) {
  const double kappa = model.effective_stiffness(u_max, d3_max);
  const double dx2 = grid.dx() * grid.dx();
  double dt = control.dt_max;
  if (kappa > 0.0 && std::isfinite(kappa)) dt = std::min(dt, control.cfl * dx2 * dx2 / (8.0 * kappa));
  return dt;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// Fluxes, mobilities and divergence at one state.
struct Evaluation {
  Field ext, d3, mob, flux, div;
  double dissipation = 0.0;
  double u_max = 0.0;
  double d3_max = 0.0;
  double div_max = 0.0;

  void compute(const Field& u, const Grid& grid, const FluidModel& model) {
    const std::size_t n = u.size();
    const double dx = grid.dx();
    ext = extend_even(u);
    d3 = face_third_derivative(ext, dx);
    mob.assign(n + 1, 0.0);
    flux.assign(n + 1, 0.0);
    div.assign(n, 0.0);
    double diss = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      const double h = 0.5 * (u[k - 1] + u[k]);
      mob[k] = model.mobility(h, d3[k]);
      flux[k] = mob[k] * d3[k];
      diss += flux[k] * d3[k];
    }
    dissipation = diss * dx;
    for (std::size_t i = 0; i < n; ++i) div[i] = (flux[i + 1] - flux[i]) / dx;
    u_max = *std::max_element(u.begin(), u.end());
    d3_max = max_abs(d3);
    div_max = max_abs(div);
  }
};

class Integrator {
 public:
  Integrator(const Grid& grid, const FluidModel& model, const Force& force, const StepControl& control,
             Scheme scheme)
      : grid_(grid), model_(model), force_(force), control_(control), scheme_(scheme) {
    space_ = grid.sample([&](double x) { return force.space()(x); });
    space_diff_.assign(space_.size(), 0.0);
    for (std::size_t k = 1; k < space_.size(); ++k) space_diff_[k] = space_[k] - space_[k - 1];
  }

  Scheme scheme() const noexcept { return scheme_; }

  double choose_dt(const Field& u, const Evaluation& ev) const {
    if (scheme_ == Scheme::Explicit) return explicit_limit(grid_, model_, control_, ev.u_max, ev.d3_max);
    const double mean = std::accumulate(u.begin(), u.end(), 0.0) / static_cast<double>(u.size());
    double dt = control_.dt_max;
    if (ev.div_max > 0.0) dt = std::min(dt, control_.cfl * control_.change_tol * mean / ev.div_max);
    return dt;
  }

  /// One step of length dt from (t, u); `ev` must describe u.
  Field step(double t, double dt, const Field& u, const Evaluation& ev) {
    const double dg = force_.g_integral(t, t + dt);
    const std::size_t n = u.size();
    Field out(n);
    if (scheme_ == Scheme::Explicit) {
      for (std::size_t i = 0; i < n; ++i) out[i] = u[i] - dt * ev.div[i] + dg * space_[i];
      return out;
    }
    Eigen::VectorXd b(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) b[static_cast<Eigen::Index>(i)] = u[i] + dg * space_[i];
    assemble(dt, ev.mob);
    if (!analyzed_) {
      lu_.analyzePattern(matrix_);
      analyzed_ = true;
    }
    lu_.factorize(matrix_);
    if (lu_.info() != Eigen::Success) {
      throw Error(ErrorKind::NonFinite, "semi-implicit step: factorization failed");
    }
    const Eigen::VectorXd x = lu_.solve(b);
    for (std::size_t i = 0; i < n; ++i) out[i] = x[static_cast<Eigen::Index>(i)];
    return out;
  }

  /// <(dS)_x, u_x> dx for the source increment over [t, t + dt].
  double source_work(double t, double dt, const Field& u) const {
    const double dg = force_.g_integral(t, t + dt);
    if (dg == 0.0) return 0.0;
    double s = 0.0;
    for (std::size_t k = 1; k < u.size(); ++k) s += space_diff_[k] * (u[k] - u[k - 1]);
    return dg * s / grid_.dx();
  }

 private:
  // I + dt A, with (A v)_i = (K_{i+1} D3v_{i+1} - K_i D3v_i) / dx and D3 the
  // face third difference under even reflection.
  void assemble(double dt, const Field& mob) {
    const long n = static_cast<long>(space_.size());
    const double dx = grid_.dx();
    const double c3 = 1.0 / (dx * dx * dx);
    auto reflect = [n](long j) { return j < 0 ? -1 - j : (j >= n ? 2 * n - 1 - j : j); };
    static constexpr double kStencil[4] = {-1.0, 3.0, -3.0, 1.0};  // cells k-2 .. k+1
    triplets_.clear();
    triplets_.reserve(static_cast<std::size_t>(9 * n));
    for (long i = 0; i < n; ++i) triplets_.emplace_back(i, i, 1.0);
    for (long k = 1; k < n; ++k) {
      const double w = dt * mob[static_cast<std::size_t>(k)] * c3 / dx;
      for (int s = 0; s < 4; ++s) {
        const long j = reflect(k - 2 + s);
        // Face k is the right face of cell k-1 and the left face of cell k.
        triplets_.emplace_back(k - 1, j, w * kStencil[s]);
        triplets_.emplace_back(k, j, -w * kStencil[s]);
      }
    }
    matrix_.resize(n, n);
    matrix_.setFromTriplets(triplets_.begin(), triplets_.end());
  }

  const Grid& grid_;
  const FluidModel& model_;
  const Force& force_;
  const StepControl& control_;
  Scheme scheme_;
  Field space_;
  Field space_diff_;
  std::vector<Eigen::Triplet<double>> triplets_;
  Eigen::SparseMatrix<double> matrix_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  bool analyzed_ = false;
};

void check_state(const Field& u, double t, const State& last_good) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i])) {
      std::ostringstream os;
      os << "non-finite height at cell " << i << ", t = " << t;
      throw SolverAbort(ErrorKind::NonFinite, os.str(), last_good);
    }
    if (!(u[i] > 0.0)) {
      std::ostringstream os;
      os << "height " << u[i] << " <= 0 at cell " << i << ", t = " << t;
      throw SolverAbort(ErrorKind::NonPositiveHeight, os.str(), last_good);
    }
  }
}

}  // namespace

Field rhs(const State& state, const Grid& grid, const FluidModel& model, const Force& force) {
  Evaluation ev;
  ev.compute(state.u, grid, model);
  Field out(state.u.size());
  const double g = force.g(state.t);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -ev.div[i] + g * force.space()(grid.x(i));
  return out;
}

double stable_dt(const State& state, const Grid& grid, const FluidModel& model, const StepControl& control,
                 double next_record) {
  const Field ext = extend_even(state.u);
  const Field d3 = face_third_derivative(ext, grid.dx());
  const double u_max = *std::max_element(state.u.begin(), state.u.end());
  double dt = explicit_limit(grid, model, control, u_max, max_abs(d3));
  if (next_record > state.t) dt = std::min(dt, next_record - state.t);
  return dt;
}

RunResult advance(State initial, const Grid& grid, const FluidModel& model, const Force& force,
                  const StepControl& control, const RecordSink& sink) {
  control.validate();
  if (initial.u.size() != grid.size()) {
    throw ConfigError("grid.N", "initial field has " + std::to_string(initial.u.size()) + " cells, grid has " +
                                    std::to_string(grid.size()));
  }
  check_state(initial.u, initial.t, initial);

  RunResult result;
  result.scheme = resolve_scheme(control.scheme, model);
  Integrator integ(grid, model, force, control, result.scheme);
  const bool implicit = result.scheme == Scheme::SemiImplicit;

  const double dx = grid.dx();
  const double t0 = initial.t;
  const double t_end = control.t_end;
  const double mass0 = std::accumulate(initial.u.begin(), initial.u.end(), 0.0) * dx;
  const double u0_mean = mass0 / grid.length();
  const double e0 = energy(initial.u, grid);
  const double tiny = 1e-12 * std::max(1.0, t_end);

  const bool watch_extinction = control.stop_on_extinction && force.regime() == ForceRegime::Constant &&
                                !model.is_ellis() && model.alpha() < 1.0;

  auto make_record = [&](double t, const Field& u, double cum_d, double cum_w) {
    SimRecord r;
    r.t = t;
    r.mass = std::accumulate(u.begin(), u.end(), 0.0) * dx;
    r.mass_expected = mass0 + force.cumulative_mass(t - t0);
    r.energy = energy(u, grid);
    r.ux_l2 = std::sqrt(2.0 * r.energy);
    r.dissipation = dissipation(u, grid, model);
    r.dissipation_raw = unregularized_dissipation(u, grid, model);
    r.reference = u0_mean + force.cumulative_mass(t - t0) / grid.length();
    r.h1_error = discrete_h1_error(u, r.reference, dx);
    r.min_u = *std::min_element(u.begin(), u.end());
    r.energy_residual = r.energy - e0 + cum_d - cum_w;
    return r;
  };
  auto emit = [&](double t, const Field& u, double cum_d, double cum_w) {
    SimRecord r = make_record(t, u, cum_d, cum_w);
    result.records.push_back(r);
    if (sink) sink(State{t, u}, r);
    return r;
  };

  // Record times k * record_every, plus t_end.
  std::size_t next_k = 0;
  auto record_time = [&](std::size_t k) {
    const double tr = t0 + static_cast<double>(k) * control.record_every;
    return (tr >= t_end - tiny) ? t_end : tr;
  };

  State cur = std::move(initial);
  Evaluation ev;
  ev.compute(cur.u, grid, model);
  double cum_d = 0.0;
  double cum_w = 0.0;
  const double h1_initial = emit(cur.t, cur.u, 0.0, 0.0).h1_error;
  next_k = 1;
  bool finished = cur.t >= t_end - tiny;

  while (!finished) {
    if (result.steps >= control.max_steps) {
      throw SolverAbort(ErrorKind::StepLimit,
                        "step budget of " + std::to_string(control.max_steps) + " exhausted at t = " +
                            std::to_string(cur.t),
                        cur);
    }
    double dt = integ.choose_dt(cur.u, ev);
    double t_next = cur.t + dt;
    if (t_next >= t_end - tiny) t_next = t_end;
    dt = t_next - cur.t;

    // Records strictly inside (t, t_next) come from a partial step off u^n.
    while (record_time(next_k) < t_next - tiny) {
      const double tr = record_time(next_k);
      const double h = tr - cur.t;
      Field ur = integ.step(cur.t, h, cur.u, ev);
      check_state(ur, tr, cur);
      double d_part = ev.dissipation;
      double w_part = integ.source_work(cur.t, h, cur.u);
      if (implicit) {
        d_part = dissipation(ur, grid, model);
        w_part = integ.source_work(cur.t, h, ur);
      }
      emit(tr, ur, cum_d + h * d_part, cum_w + w_part);
      ++next_k;
    }

    Field un = integ.step(cur.t, dt, cur.u, ev);
    check_state(un, t_next, cur);
    const double d_left = ev.dissipation;
    const double w_left = integ.source_work(cur.t, dt, cur.u);
    const double w_right = integ.source_work(cur.t, dt, un);
    cur.t = t_next;
    cur.u = std::move(un);
    ev.compute(cur.u, grid, model);
    cum_d += dt * (implicit ? ev.dissipation : d_left);
    cum_w += implicit ? w_right : w_left;
    ++result.steps;
    result.dt_min = std::min(result.dt_min, dt);
    result.dt_max = std::max(result.dt_max, dt);

    bool recorded = false;
    if (record_time(next_k) <= cur.t + tiny) {
      emit(record_time(next_k), cur.u, cum_d, cum_w);
      ++next_k;
      recorded = true;
    }
    if (cur.t >= t_end) finished = true;

    if (!finished && watch_extinction && h1_initial > 0.0) {
      const double ref = u0_mean + force.cumulative_mass(cur.t - t0) / grid.length();
      if (discrete_h1_error(cur.u, ref, dx) < control.tol_extinct * h1_initial) {
        if (!recorded) emit(cur.t, cur.u, cum_d, cum_w);
        result.reason = StopReason::ExtinctionReached;
        result.extinction_time = cur.t;
        finished = true;
      }
    }
  }

  result.final = std::move(cur);
  return result;
}

}  // namespace thinfilm
