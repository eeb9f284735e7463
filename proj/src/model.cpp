#include "bec/model.hpp"

#include <cassert>
#include <cmath>

#include "bec/errors.hpp"

namespace bec {

namespace {

// p(s) = s + 4 s^3 - 7 s^4 + 3 s^5: p(0) = 0, p'(0) = 1, p(1) = 1, p'(1) = p''(0) = p''(1) = 0.
// p'(s) = (1 - s)^2 (15 s^2 + 2 s + 1) >= 0.
double blend(double s) { return s * (1.0 + s * s * (4.0 + s * (-7.0 + 3.0 * s))); }
double blend_prime(double s) { return (1.0 - s) * (1.0 - s) * (15.0 * s * s + 2.0 * s + 1.0); }

}  // namespace

double Truncation::operator()(double s) const {
  const double lo = 1.0 / k;
  if (s >= lo && s <= k) return s;
  if (s > k) return s >= 2.0 * k ? 2.0 * k : k + k * blend((s - k) / k);
  const double half = 0.5 * lo;
  if (s <= half) return half;
  return lo - half * blend((lo - s) / half);
}

double Truncation::prime(double s) const {
  const double lo = 1.0 / k;
  if (s >= lo && s <= k) return 1.0;
  if (s > k) return s >= 2.0 * k ? 0.0 : blend_prime((s - k) / k);
  const double half = 0.5 * lo;
  if (s <= half) return 0.0;
  return blend_prime((lo - s) / half);
}

double f_k(double s, double k) { return Truncation{k}(s); }
double f_k_prime(double s, double k) { return Truncation{k}.prime(s); }

ExtendedField ghost_extend(std::span<const double> u, const Grid& grid) {
  const auto& x = grid.x();
  const int last = grid.cells();
  ExtendedField e;
  e.x.resize(last + 5);
  e.v.resize(last + 5);
  for (int i = 0; i <= last; ++i) {
    e.x[i + 2] = x[i];
    e.v[i + 2] = u[i];
  }
  for (int j = 1; j <= 2; ++j) {
    e.x[2 - j] = -x[j];
    e.v[2 - j] = u[j];
    e.x[last + 2 + j] = 2.0 * grid.L() - x[last - j];
    e.v[last + 2 + j] = u[last - j];
  }
  return e;
}

Model::Model(Params params, Grid grid, WeightTables tables)
    : params_(std::move(params)),
      grid_(std::move(grid)),
      tables_(std::move(tables)),
      trunc_{params_.k()} {
  if (static_cast<int>(tables_.g.size()) != grid_.nodes())
    throw DomainError("Model: weight tables do not match the grid");
  inv_wbeta_.resize(tables_.wbeta.size());
  for (std::size_t i = 0; i < inv_wbeta_.size(); ++i) inv_wbeta_[i] = 1.0 / tables_.wbeta[i];
}

Model Model::make(const Params& params, const Grid& grid) {
  auto tables = weight_tables(cutoff(params.eps(), params.L()), params.alpha(), params.beta(),
                              params.gamma(), grid);
  return Model(params, grid, std::move(tables));
}

std::vector<double> Model::flux_values(std::span<const double> u) const {
  const int n = size();
  assert(static_cast<int>(u.size()) == n);
  const auto ux = d1(u, grid_);
  const auto uxx = d2(u, grid_);
  const double p = params_.n();
  std::vector<double> J(n);
  for (int i = 0; i < n; ++i) {
    const double f = trunc_(u[i]);
    const double fn1 = std::pow(f, p - 1.0);
    J[i] = tables_.g[i] * fn1 * (-f * uxx[i] + 2.0 * ux[i] * ux[i]);
  }
  return J;
}

FluxField Model::flux(std::span<const double> u) const {
  const int n = size();
  FluxField out;
  out.J = flux_values(u);
  out.Jx_difference = d1(out.J, grid_);

  const auto ux = d1(u, grid_);
  const auto uxx = d2(u, grid_);
  const auto uxxx = d1(uxx, grid_);
  const double p = params_.n();
  const auto& g = tables_.g;
  const auto& gx = tables_.gx;
  out.Jx_expansion.resize(n);
  for (int i = 0; i < n; ++i) {
    const double f = trunc_(u[i]);
    const double fp = trunc_.prime(u[i]);
    const double fn2 = std::pow(f, p - 2.0);
    const double fn1 = fn2 * f;
    const double fn = fn1 * f;
    // Reduces to the untruncated expansion with coefficient (4 - n) when f' = 1.
    out.Jx_expansion[i] = -g[i] * fn * uxxx[i] + (4.0 - p * fp) * g[i] * fn1 * ux[i] * uxx[i] +
                          2.0 * (p - 1.0) * fp * g[i] * fn2 * ux[i] * ux[i] * ux[i] -
                          gx[i] * fn * uxx[i] + 2.0 * gx[i] * fn1 * ux[i] * ux[i];
  }
  return out;
}

double Model::flux_gradient_consistency(std::span<const double> u) const {
  const FluxField f = flux(u);
  double defect = 0.0;
  for (std::size_t i = 0; i < f.J.size(); ++i)
    defect = std::max(defect, std::abs(f.Jx_difference[i] - f.Jx_expansion[i]));
  return defect;
}

void Model::rhs_into(std::span<const double> u, std::span<double> out) const {
  const auto J = flux_values(u);
  d2_into(J, grid_, out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= inv_wbeta_[i];
}

std::vector<double> Model::rhs(std::span<const double> u) const {
  std::vector<double> out(u.size());
  rhs_into(u, out);
  return out;
}

double Model::weighted_mass(std::span<const double> u) const {
  return quad(tables_.wbeta, u, grid_);
}

}  // namespace bec
