#include "bec/regularization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bec/errors.hpp"
#include "bec/params.hpp"

namespace bec {

namespace {

double bump(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

double simpson(const CutoffProfile& zeta, double a, double b, int panels) {
  if (b <= a) return 0.0;
  const double h = (b - a) / panels;
  double sum = zeta(a) + zeta(b);
  for (int j = 1; j < panels; ++j) sum += (j % 2 == 1 ? 4.0 : 2.0) * zeta(a + j * h);
  return sum * h / 3.0;
}

}  // namespace

double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = bump(s);
  const double b = bump(1.0 - s);
  return a / (a + b);
}

CutoffProfile::CutoffProfile(double eps, double L) : eps_(eps), L_(L) {
  if (!(L > 0.0)) throw DomainError("cutoff: L must be positive");
  if (!(eps > 0.0 && eps < eps0_for(L))) throw DomainError("cutoff: eps must lie in (0, eps0)");
}

double CutoffProfile::operator()(double y) const {
  const double w = ramp_width();
  if (y <= w || y >= L_ - w) return 0.0;
  if (y < 2.0 * w) return smooth_step((y - w) / w);
  if (y > L_ - 2.0 * w) return smooth_step((L_ - w - y) / w);
  return 1.0;
}

std::vector<double> CutoffProfile::breakpoints() const {
  const double w = ramp_width();
  return {w, 2.0 * w, L_ - 2.0 * w, L_ - w};
}

CutoffProfile cutoff(double eps, double L) { return CutoffProfile(eps, L); }

double lambda_lower(double eps, double L) {
  return std::min(1.0 / (1.0 + eps), 1.0 - 2.0 * eps * eps / (L + eps));
}

WeightTables weight_tables(const CutoffProfile& profile, double alpha, double beta, double gamma,
                           const Grid& grid, int subsamples) {
  if (subsamples < 8 || subsamples % 2 != 0)
    throw DomainError("weight_tables: subsamples must be even and >= 8");
  if (std::abs(grid.L() - profile.L()) > 1e-14 * profile.L())
    throw DomainError("weight_tables: grid and profile disagree on L");

  const auto& x = grid.x();
  const int n = grid.nodes();
  const double eps = profile.eps();
  const auto cuts = profile.breakpoints();

  WeightTables t;
  t.eps = eps;
  t.alpha = alpha;
  t.beta = beta;
  t.gamma = gamma;
  t.lambda = lambda_lower(eps, profile.L());
  t.zeta.resize(n);
  t.z.resize(n);
  t.g.resize(n);
  t.gx.resize(n);
  t.gx2_over_g.resize(n);
  t.wbeta.resize(n);
  t.wgamma.resize(n);

  double integral = 0.0;
  t.z[0] = eps;
  for (int i = 0; i + 1 < n; ++i) {
    double a = x[i];
    const double b = x[i + 1];
    double cell = 0.0;
    for (double c : cuts) {
      if (c > a && c < b) {
        cell += simpson(profile, a, c, subsamples);
        a = c;
      }
    }
    cell += simpson(profile, a, b, subsamples);
    integral += cell;
    t.z[i + 1] = eps + integral;
  }
  if (!std::all_of(t.z.begin(), t.z.end(), [](double v) { return std::isfinite(v); }))
    throw InternalError("weight_tables: quadrature of the cut-off produced non-finite values");

  for (int i = 0; i < n; ++i) {
    const double zi = t.z[i];
    const double zeta = profile(x[i]);
    t.zeta[i] = zeta;
    t.g[i] = std::pow(zi, alpha);
    t.gx[i] = alpha * std::pow(zi, alpha - 1.0) * zeta;
    t.gx2_over_g[i] = alpha * alpha * std::pow(zi, alpha - 2.0) * zeta * zeta;
    t.wbeta[i] = std::pow(x[i] + eps, beta);
    t.wgamma[i] = std::pow(x[i] + eps, gamma);
  }
  return t;
}

BoundReport verify_weight_bounds(const WeightTables& t, const Grid& grid) {
  const auto& x = grid.x();
  const double alpha = t.alpha;
  const double lambda = t.lambda;

  BoundReport r;
  r.c_gx = alpha * std::max(1.0, std::pow(lambda, alpha - 1.0));
  r.c_gx2g = alpha * alpha * std::max(1.0, std::pow(lambda, alpha - 2.0));
  r.min_lower_ratio = std::numeric_limits<double>::infinity();
  r.min_power_lower_ratio = std::numeric_limits<double>::infinity();
  const double lambda_power = std::pow(lambda, alpha);
  r.min_gx = std::numeric_limits<double>::infinity();

  for (int i = 0; i < grid.nodes(); ++i) {
    const double s = x[i] + t.eps;
    const double upper = std::pow(s, alpha);
    const double lower = lambda * upper;
    if (!(lower <= t.g[i] && t.g[i] <= upper)) ++r.sandwich_violations;
    r.min_lower_ratio = std::min(r.min_lower_ratio, t.g[i] / lower);
    r.min_power_lower_ratio = std::min(r.min_power_lower_ratio, t.g[i] / (lambda_power * upper));
    r.max_upper_ratio = std::max(r.max_upper_ratio, t.g[i] / upper);

    const double gx_ratio = t.gx[i] / std::pow(s, alpha - 1.0);
    const double gx2g_ratio = t.gx2_over_g[i] / std::pow(s, alpha - 2.0);
    if (t.gx[i] < 0.0 || gx_ratio > r.c_gx || gx2g_ratio > r.c_gx2g) ++r.derivative_violations;
    r.max_gx_ratio = std::max(r.max_gx_ratio, gx_ratio);
    r.max_gx2g_ratio = std::max(r.max_gx2g_ratio, gx2g_ratio);
    r.min_gx = std::min(r.min_gx, t.gx[i]);
  }
  r.pass = r.sandwich_violations == 0 && r.derivative_violations == 0;
  return r;
}

}  // namespace bec
