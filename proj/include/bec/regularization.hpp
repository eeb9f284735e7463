#pragma once

#include <vector>

#include "bec/grid.hpp"

namespace bec {

/// The C-infinity cut-off zeta_eps: zero outside [w, L - w], one on [2w, L - 2w],
/// w = eps^2 / 32, joined by the smooth step S(s) = h(s) / (h(s) + h(1 - s)),
/// h(s) = exp(-1/s), on each ramp. The mass lost near each end is 3w/2, which keeps
/// Lambda(eps) (x + eps)^alpha <= z^alpha for alpha up to about 14.
class CutoffProfile {
 public:
  /// Throws DomainError unless 0 < eps < eps0(L).
  CutoffProfile(double eps, double L);

  double eps() const { return eps_; }
  double L() const { return L_; }
  double ramp_width() const { return eps_ * eps_ / 32.0; }

  double operator()(double y) const;

  /// Breakpoints where the profile changes form, in increasing order.
  std::vector<double> breakpoints() const;

 private:
  double eps_;
  double L_;
};

/// Smooth step on [0, 1]: 0 for s <= 0, 1 for s >= 1, C-infinity in between.
double smooth_step(double s);

CutoffProfile cutoff(double eps, double L);

/// Lambda(eps) = min{1 / (1 + eps), 1 - 2 eps^2 / (L + eps)}.
double lambda_lower(double eps, double L);

/// Nodal values of the regularized coefficients on a grid.
struct WeightTables {
  double eps = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double lambda = 1.0;
  std::vector<double> zeta;        // zeta_eps
  std::vector<double> z;           // z_eps = eps + int_0^x zeta_eps
  std::vector<double> g;           // g_eps = z^alpha
  std::vector<double> gx;          // alpha z^(alpha-1) zeta_eps
  std::vector<double> gx2_over_g;  // gx^2 / g
  std::vector<double> wbeta;       // (x + eps)^beta
  std::vector<double> wgamma;      // (x + eps)^gamma
};

/// z_eps by composite Simpson on each cell, split at the profile's breakpoints,
/// with `subsamples` (even, >= 8) panels per piece.
WeightTables weight_tables(const CutoffProfile& profile, double alpha, double beta, double gamma,
                           const Grid& grid, int subsamples = 64);

/// Worst-case nodal ratios for the three regularized-coefficient bounds.
struct BoundReport {
  double min_lower_ratio = 0.0;  // min g / (Lambda (x + eps)^alpha), must be >= 1
  double min_power_lower_ratio = 0.0;  // min g / (Lambda^alpha (x + eps)^alpha)
  double max_upper_ratio = 0.0;  // max g / (x + eps)^alpha, must be <= 1
  double max_gx_ratio = 0.0;     // max gx / (x + eps)^(alpha-1), must be <= c_gx
  double max_gx2g_ratio = 0.0;   // max (gx^2/g) / (x + eps)^(alpha-2), must be <= c_gx2g
  double min_gx = 0.0;           // must be >= 0
  double c_gx = 0.0;
  double c_gx2g = 0.0;
  int sandwich_violations = 0;
  int derivative_violations = 0;
  bool pass = false;
};

/// Checks Lambda (x+eps)^alpha <= g <= (x+eps)^alpha, 0 <= gx <= c (x+eps)^(alpha-1)
/// and gx^2/g <= c' (x+eps)^(alpha-2) at every node. For alpha >= 2 the constants are
/// c = alpha and c' = alpha^2; below that the chain-rule bound picks up powers of Lambda.
BoundReport verify_weight_bounds(const WeightTables& tables, const Grid& grid);

}  // namespace bec
