#pragma once

#include <span>
#include <vector>

#include "bec/grid.hpp"
#include "bec/params.hpp"
#include "bec/regularization.hpp"

namespace bec {

/// Nodal solution at time t. Values are nonnegative for accepted states.
struct State {
  double t = 0.0;
  std::vector<double> u;
};

/// Smooth clamp f_k: identity on [1/k, k], constant 1/(2k) below 1/(2k) and 2k
/// above 2k, joined by quintic Hermite pieces (C^2, nondecreasing).
struct Truncation {
  double k = 1.0;

  double operator()(double s) const;
  double prime(double s) const;
};

double f_k(double s, double k);
double f_k_prime(double s, double k);

/// Nodal values with two ghost nodes per side (index offset 2).
struct ExtendedField {
  std::vector<double> x;
  std::vector<double> v;

  double at(int node) const { return v[node + 2]; }
  double x_at(int node) const { return x[node + 2]; }
};

/// Even reflection about both endpoints, coordinates mirrored as well.
ExtendedField ghost_extend(std::span<const double> u, const Grid& grid);

struct FluxField {
  std::vector<double> J;
  /// Five-term chain-rule expansion of J_x evaluated nodally.
  std::vector<double> Jx_expansion;
  /// D1 applied to nodal J with even reflection.
  std::vector<double> Jx_difference;
};

/// Spatial operator of the regularized problem in conservative form:
///   u_t = (x + eps)^(-beta) * D2[J],  J = -g f_k(u)^n D2u + 2 g f_k(u)^(n-1) (D1u)^2.
/// Flux ghosts are even reflections of J, so the weighted sum
/// sum_i w_i (x_i + eps)^beta rhs_i telescopes to zero.
class Model {
 public:
  Model(Params params, Grid grid, WeightTables tables);

  /// Builds the weight tables for params on grid.
  static Model make(const Params& params, const Grid& grid);

  const Params& params() const { return params_; }
  const Grid& grid() const { return grid_; }
  const WeightTables& tables() const { return tables_; }
  const Truncation& truncation() const { return trunc_; }
  int size() const { return grid_.nodes(); }

  std::vector<double> flux_values(std::span<const double> u) const;
  FluxField flux(std::span<const double> u) const;

  /// max_i |D1(J)_i - Jx_expansion_i|.
  double flux_gradient_consistency(std::span<const double> u) const;

  std::vector<double> rhs(std::span<const double> u) const;
  void rhs_into(std::span<const double> u, std::span<double> out) const;

  /// sum_i w_i (x_i + eps)^beta u_i.
  double weighted_mass(std::span<const double> u) const;

 private:
  Params params_;
  Grid grid_;
  WeightTables tables_;
  Truncation trunc_;
  std::vector<double> inv_wbeta_;
};

}  // namespace bec
