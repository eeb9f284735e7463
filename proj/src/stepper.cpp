#include "bec/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <future>
#include <limits>
#include <thread>

#include "bec/errors.hpp"

namespace bec {

namespace {

constexpr int kColors = 5;
constexpr int kRadius = 2;
constexpr int kGrowthWindow = 10;

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::vector<double> residual(const Model& model, std::span<const double> v, std::span<const double> u,
                             double dt) {
  std::vector<double> r = model.rhs(v);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = v[i] - u[i] - dt * r[i];
  return r;
}

}  // namespace

const char* to_string(StopKind kind) {
  switch (kind) {
    case StopKind::Completed: return "Completed";
    case StopKind::Blowup: return "Blowup";
    case StopKind::DeadCore: return "DeadCore";
    case StopKind::StepFailure: return "StepFailure";
  }
  return "Unknown";
}

void StepControl::check(const Params& p) const {
  if (!(dt_min > 0.0 && dt_min <= dt_init && dt_init <= dt_max))
    throw DomainError("StepControl: need 0 < dt_min <= dt_init <= dt_max");
  if (!(newton_tol > 0.0)) throw DomainError("StepControl: newton_tol must be positive");
  if (newton_max_iter < 1) throw DomainError("StepControl: newton_max_iter must be >= 1");
  if (!(safety > 1.0 && safety <= 1.5)) throw DomainError("StepControl: safety must lie in (1, 1.5]");
  if (!(floor_for(p) < ceil_for(p))) throw DomainError("StepControl: need u_floor < u_ceil");
}

double jacobian_increment(double value) {
  const double h = 1.4901161193847656e-08 * std::max(std::abs(value), 1.0);
  // Exactly representable step.
  return (value + h) - value;
}

BandMatrix colored_jacobian(const Model& model, std::span<const double> u) {
  const int n = model.size();
  BandMatrix jac(n, kRadius, kRadius);
  const std::vector<double> base = model.rhs(u);
  std::vector<double> shifted(u.begin(), u.end());
  std::vector<double> out(n);
  for (int color = 0; color < kColors; ++color) {
    for (int j = color; j < n; j += kColors) shifted[j] = u[j] + jacobian_increment(u[j]);
    model.rhs_into(shifted, out);
    for (int j = color; j < n; j += kColors) {
      const double h = jacobian_increment(u[j]);
      const int i0 = std::max(0, j - kRadius);
      const int i1 = std::min(n - 1, j + kRadius);
      for (int i = i0; i <= i1; ++i) jac(i, j) = (out[i] - base[i]) / h;
      shifted[j] = u[j];
    }
  }
  return jac;
}

std::vector<double> dense_jacobian(const Model& model, std::span<const double> u) {
  const int n = model.size();
  std::vector<double> jac(static_cast<std::size_t>(n) * n, 0.0);
  const std::vector<double> base = model.rhs(u);
  std::vector<double> shifted(u.begin(), u.end());
  for (int j = 0; j < n; ++j) {
    const double h = jacobian_increment(u[j]);
    shifted[j] = u[j] + h;
    const auto out = model.rhs(shifted);
    for (int i = 0; i < n; ++i) jac[static_cast<std::size_t>(i) * n + j] = (out[i] - base[i]) / h;
    shifted[j] = u[j];
  }
  return jac;
}

StepResult step_implicit(const Model& model, const State& state, double dt, const StepControl& control) {
  const int n = model.size();
  const std::span<const double> u = state.u;
  StepResult result;
  result.state.t = state.t + dt;

  std::vector<double> v(u.begin(), u.end());
  std::vector<double> r = residual(model, v, u, dt);
  double rnorm = max_abs(r);

  for (int it = 0;; ++it) {
    if (!all_finite(r)) {
      result.reason = "non-finite residual";
      return result;
    }
    if (rnorm <= control.newton_tol * (1.0 + max_abs(v))) break;
    if (it >= control.newton_max_iter) {
      result.reason = "Newton did not converge";
      result.residual = rnorm;
      result.newton_iterations = it;
      return result;
    }

    BandMatrix a = colored_jacobian(model, v);
    for (int i = 0; i < n; ++i) {
      const int j0 = std::max(0, i - kRadius);
      const int j1 = std::min(n - 1, i + kRadius);
      for (int j = j0; j <= j1; ++j) a(i, j) *= -dt;
      a(i, i) += 1.0;
    }
    std::vector<double> delta;
    try {
      delta = BandLU(std::move(a)).solve(r);
    } catch (const InternalError&) {
      result.reason = "singular Newton matrix";
      return result;
    }

    // Damped update: halve until the residual decreases.
    bool improved = false;
    double lambda = 1.0;
    std::vector<double> trial(n);
    for (int halvings = 0; halvings < 10; ++halvings, lambda *= 0.5) {
      for (int i = 0; i < n; ++i) trial[i] = v[i] - lambda * delta[i];
      auto rt = residual(model, trial, u, dt);
      const double tn = max_abs(rt);
      if (all_finite(rt) && tn < rnorm) {
        v.swap(trial);
        r.swap(rt);
        rnorm = tn;
        improved = true;
        break;
      }
    }
    result.newton_iterations = it + 1;
    if (!improved) {
      result.reason = "line search failed";
      result.residual = rnorm;
      return result;
    }
  }

  const double lowest = *std::min_element(v.begin(), v.end());
  if (lowest < -1e-12) {
    result.reason = "negative values";
    result.residual = rnorm;
    return result;
  }
  for (double& x : v) x = std::max(x, 0.0);

  result.accepted = true;
  result.residual = rnorm;
  result.state.u = std::move(v);
  return result;
}

Trajectory run(const Model& model, std::vector<double> u0, const StepControl& control, double t_end,
               const SnapshotPolicy& snapshots) {
  const Params& p = model.params();
  control.check(p);
  if (static_cast<int>(u0.size()) != model.size()) throw DomainError("run: initial data has wrong size");
  if (!all_finite(u0)) throw DomainError("run: initial data must be finite");
  if (!(t_end >= 0.0)) throw DomainError("run: t_end must be nonnegative");

  const double floor = control.floor_for(p);
  const double ceil = control.ceil_for(p);

  Trajectory traj;
  State state{0.0, std::move(u0)};
  auto record = [&](const State& s) {
    traj.times.push_back(s.t);
    traj.states.push_back(s.u);
    traj.diagnostics.push_back(diagnostics(model, s));
  };
  auto check_events = [&](const State& s) -> bool {
    const auto [lo, hi] = std::minmax_element(s.u.begin(), s.u.end());
    if (*hi > ceil) {
      traj.stop = {StopKind::Blowup, s.t, "sup u exceeded u_ceil"};
      return true;
    }
    if (*lo < floor) {
      traj.stop = {StopKind::DeadCore, s.t, "inf u fell below u_floor"};
      return true;
    }
    return false;
  };

  record(state);
  if (check_events(state)) return traj;

  double dt = control.dt_init;
  int streak = 0;
  long since_snapshot = 0;
  std::deque<double> recent_sup;
  long next_mark = 1;
  const double tiny = 1e-14 * std::max(1.0, t_end);

  while (t_end - state.t > tiny) {
    double target = t_end;
    if (snapshots.interval > 0.0) target = std::min(t_end, next_mark * snapshots.interval);
    const double dt_try = std::min(dt, target - state.t);
    const bool clipped = dt_try < dt;

    StepResult res = step_implicit(model, state, dt_try, control);
    traj.newton_iterations += res.newton_iterations;
    if (!res.accepted) {
      ++traj.rejected_steps;
      streak = 0;
      dt = 0.5 * dt_try;
      if (dt < control.dt_min) {
        const bool growing = static_cast<int>(recent_sup.size()) == kGrowthWindow &&
                             std::is_sorted(recent_sup.begin(), recent_sup.end(),
                                            [](double a, double b) { return a <= b; }) &&
                             recent_sup.front() < recent_sup.back();
        if (growing)
          traj.stop = {StopKind::Blowup, state.t, "time step collapsed while sup u grew: " + res.reason};
        else
          traj.stop = {StopKind::StepFailure, state.t, "time step below dt_min: " + res.reason};
        if (traj.times.back() != state.t) record(state);
        return traj;
      }
      continue;
    }

    ++traj.accepted_steps;
    state = std::move(res.state);
    if (t_end - state.t <= tiny) state.t = t_end;
    recent_sup.push_back(*std::max_element(state.u.begin(), state.u.end()));
    if (static_cast<int>(recent_sup.size()) > kGrowthWindow) recent_sup.pop_front();

    if (!clipped && ++streak >= 3) {
      dt = std::min(control.dt_max, dt * control.safety);
      streak = 0;
    }

    if (check_events(state)) {
      record(state);
      return traj;
    }

    bool snap = false;
    if (snapshots.interval > 0.0) {
      if (std::abs(state.t - target) <= tiny && target < t_end) {
        snap = true;
        ++next_mark;
      }
    } else if (++since_snapshot >= std::max(1, snapshots.stride)) {
      snap = true;
    }
    if (snap && state.t < t_end) {
      since_snapshot = 0;
      record(state);
    }
  }

  traj.stop = {StopKind::Completed, state.t, "reached t_end"};
  if (traj.times.back() != state.t) record(state);
  return traj;
}

namespace {

double temporal_modulus(const Trajectory& traj, double exponent) {
  double best = 0.0;
  for (std::size_t a = 0; a < traj.times.size(); ++a) {
    for (std::size_t b = a + 1; b < traj.times.size(); ++b) {
      const double dt = traj.times[b] - traj.times[a];
      if (!(dt > 0.0)) continue;
      const double scale = std::pow(dt, exponent);
      const auto& ua = traj.states[a];
      const auto& ub = traj.states[b];
      for (std::size_t i = 0; i < ua.size(); ++i) best = std::max(best, std::abs(ub[i] - ua[i]) / scale);
    }
  }
  return best;
}

}  // namespace

ContinuationReport continuation(const std::vector<double>& u0, const Params& params, const Grid& grid,
                                const std::vector<double>& eps_list, const StepControl& control,
                                double t_end, double snapshot_interval, int workers) {
  for (std::size_t j = 0; j + 1 < eps_list.size(); ++j) {
    if (eps_list[j + 1] > eps_list[j]) throw DomainError("continuation: eps list must be non-increasing");
  }
  std::vector<Params> members;
  for (double eps : eps_list) members.push_back(params.with_eps(eps));

  const SnapshotPolicy policy{1, snapshot_interval};
  std::vector<Trajectory> runs(members.size());
  const int pool = workers > 0 ? workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  for (std::size_t start = 0; start < members.size(); start += pool) {
    std::vector<std::future<Trajectory>> batch;
    for (std::size_t j = start; j < std::min(members.size(), start + pool); ++j) {
      batch.push_back(std::async(std::launch::async, [&, j] {
        const Model model = Model::make(members[j], grid);
        return run(model, u0, control, t_end, policy);
      }));
    }
    for (std::size_t j = 0; j < batch.size(); ++j) runs[start + j] = batch[j].get();
  }

  ContinuationReport report;
  std::size_t common = std::numeric_limits<std::size_t>::max();
  for (const auto& r : runs) common = std::min(common, r.times.size());
  if (runs.empty()) common = 0;

  for (std::size_t j = 0; j < runs.size(); ++j) {
    const auto& r = runs[j];
    ContinuationMember m;
    m.eps = eps_list[j];
    m.stop = r.stop;
    for (const auto& d : r.diagnostics) m.holder_spatial = std::max(m.holder_spatial, d.holder_C);
    m.holder_temporal = temporal_modulus(r, members[j].theta_time());
    const double m0 = r.diagnostics.front().mass_beta;
    m.mass_drift = std::abs(r.diagnostics.back().mass_beta - m0) / m0;
    report.members.push_back(m);
  }
  for (std::size_t s = 0; s < common; ++s) report.common_times.push_back(runs.front().times[s]);

  for (std::size_t j = 0; j + 1 < runs.size(); ++j) {
    double d = 0.0;
    for (std::size_t s = 0; s < common; ++s) {
      const auto& a = runs[j].states[s];
      const auto& b = runs[j + 1].states[s];
      for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    }
    report.distances.push_back(d);
  }
  report.cauchy = true;
  for (std::size_t j = 0; j + 1 < report.distances.size(); ++j) {
    if (!(report.distances[j + 1] < report.distances[j])) report.cauchy = false;
  }
  return report;
}

}  // namespace bec
