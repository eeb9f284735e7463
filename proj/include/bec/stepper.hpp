#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bec/banded.hpp"
#include "bec/functionals.hpp"
#include "bec/model.hpp"

namespace bec {

struct StepControl {
  double dt_init = 1e-6;
  double dt_min = 1e-13;
  double dt_max = 1e-2;
  double newton_tol = 1e-8;
  int newton_max_iter = 25;
  double safety = 1.5;
  /// Dead-core threshold; defaults to 1/(2k).
  std::optional<double> u_floor;
  /// Blow-up threshold; defaults to k, where the truncation stops being the identity.
  std::optional<double> u_ceil;

  double floor_for(const Params& p) const { return u_floor.value_or(0.5 / p.k()); }
  double ceil_for(const Params& p) const { return u_ceil.value_or(p.k()); }

  /// Throws DomainError unless 0 < dt_min <= dt_init <= dt_max, newton_tol > 0,
  /// 1 < safety <= 1.5 and floor < ceil.
  void check(const Params& p) const;
};

enum class StopKind { Completed, Blowup, DeadCore, StepFailure };

const char* to_string(StopKind kind);

struct StopEvent {
  StopKind kind = StopKind::Completed;
  double t_event = 0.0;
  std::string detail;
};

struct StepResult {
  bool accepted = false;
  State state;
  int newton_iterations = 0;
  double residual = 0.0;
  std::string reason;
};

/// Jacobian of the spatial operator, d rhs / d u, by forward differences with
/// five colors (nodes i and i + 5m perturbed together; the stencil radius is 2).
BandMatrix colored_jacobian(const Model& model, std::span<const double> u);

/// Dense forward-difference Jacobian, one node at a time, row-major.
std::vector<double> dense_jacobian(const Model& model, std::span<const double> u);

/// Perturbation used for column j by both Jacobian routes.
double jacobian_increment(double value);

/// One implicit Euler step u' = u + dt rhs(u'), solved by damped Newton with a
/// banded LU on the pentadiagonal Jacobian.
StepResult step_implicit(const Model& model, const State& state, double dt, const StepControl& control);

struct SnapshotPolicy {
  /// Record every `stride` accepted steps (ignored when interval > 0).
  int stride = 10;
  /// Record at multiples of `interval`; steps are shortened to land on them.
  double interval = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<DiagnosticsRecord> diagnostics;
  StopEvent stop;
  long accepted_steps = 0;
  long rejected_steps = 0;
  long newton_iterations = 0;
};

/// Adaptive implicit integration to t_end or the first stop event.
Trajectory run(const Model& model, std::vector<double> u0, const StepControl& control, double t_end,
               const SnapshotPolicy& snapshots = {});

struct ContinuationMember {
  double eps = 0.0;
  StopEvent stop;
  double holder_spatial = 0.0;   // max over snapshots of the spatial modulus
  double holder_temporal = 0.0;  // max over node and snapshot pairs at exponent theta_time
  double mass_drift = 0.0;
};

struct ContinuationReport {
  std::vector<ContinuationMember> members;
  std::vector<double> common_times;
  /// d_j = max over common snapshot times of sup|u_{eps_j} - u_{eps_{j+1}}|.
  std::vector<double> distances;
  bool cauchy = false;  // distances strictly decreasing
};

/// Runs each eps (strictly decreasing, all admissible) from the same initial
/// data on a shared grid, members in parallel on at most `workers` threads.
ContinuationReport continuation(const std::vector<double>& u0, const Params& params, const Grid& grid,
                                const std::vector<double>& eps_list, const StepControl& control,
                                double t_end, double snapshot_interval, int workers = 0);

}  // namespace bec
