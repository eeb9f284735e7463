#pragma once

#include <array>
#include <span>
#include <vector>

#include "bec/grid.hpp"
#include "bec/model.hpp"

namespace bec {

/// Snapshot of every tracked functional at time t.
struct DiagnosticsRecord {
  double t = 0.0;
  double mass_beta = 0.0;      // int (x+eps)^beta u
  double grad_energy = 0.0;    // y(t) = int (x+eps)^gamma u_x^2
  std::array<double, 5> dissipation{};
  double sup_u = 0.0;
  double sup_bound = 0.0;
  double holder_C = 0.0;       // measured spatial Hoelder constant at exponent theta
  double deadcore = 0.0;       // int u^-2
  double kinetic_energy = 0.0; // int x^(3/2) u
  double entropy = 0.0;        // int ((1+u) log(1+u) - u log u) x^(1/2)
};

double weighted_mass(const Grid& grid, double eps, double beta, std::span<const double> u);
double weighted_mass(const Model& model, std::span<const double> u);

double grad_energy(const Grid& grid, double eps, double gamma, std::span<const double> u);
double grad_energy(const Model& model, std::span<const double> u);

/// The five dissipation integrals with a = alpha - beta + gamma:
///   (x+eps)^a {u^n u_xxx^2, u^(n-2) u_x^2 u_xx^2, u^(n-4) u_x^6},
///   (x+eps)^(a-2) {u^n u_xx^2, u^(n-2) u_x^4}.
/// u_xxx is D1 applied to D2u. Throws DomainError unless u > 0 everywhere.
std::array<double, 5> dissipation_terms(const Grid& grid, double eps, double n, double a,
                                        std::span<const double> u);
std::array<double, 5> dissipation_terms(const Model& model, std::span<const double> u);

/// c(gamma, L) in |u(x2) - u(x1)| <= c y^(1/2) |x2 - x1|^theta:
/// (1 - gamma)^(-1/2) for gamma in [0, 1), (L + 1)^(-gamma/2) for gamma < 0.
double holder_constant(double gamma, double L);

/// c(beta, gamma, L) in sup|u| <= c (int (x+eps)^beta |u| + y^(1/2)), assembled
/// from the point-value bound c1 = (2/L) max{(L/2)^-beta, (L+1)^-beta} and the
/// Hoelder constant over a distance of at most L.
double sup_constant(double beta, double gamma, double L);

double sup_estimate(const Grid& grid, double eps, double beta, double gamma,
                    std::span<const double> u);
double sup_estimate(const Model& model, std::span<const double> u);

/// max over node pairs of |u_i - u_j| / |x_i - x_j|^theta. Throws DomainError
/// for more than 2048 cells or theta outside (0, 1/2].
double holder_modulus(const Grid& grid, std::span<const double> u, double theta);

/// int u^-2 with unit weight; throws DomainError unless u > 0.
double deadcore_functional(const Grid& grid, std::span<const double> u);

struct PhysicalDiagnostics {
  double kinetic_energy = 0.0;
  double entropy = 0.0;
};

/// Kinetic energy and entropy of the kinetic model restricted to (0, L), x-weighted.
PhysicalDiagnostics physical_diagnostics(const Grid& grid, std::span<const double> u);

/// Comparison ODE y' = c5 + c6 y^((n+2)/2), y(0) = A.
struct OdeBound {
  double T0 = 1.0;             // min{1, first t with y(t) = A + 1}
  bool overflow = false;       // integration left the finite range first
  std::vector<double> times;   // sampled bound curve
  std::vector<double> values;
};

/// RK4 with step 1e-5 * min{1, 1 / (c5 + c6 (A+1)^((n+2)/2))}; the crossing of
/// A + 1 is located by bisection on the final step length.
OdeBound ode_bound(double A, double c5, double c6, double n);

struct OdeConstants {
  double c5 = 0.0;
  double c6 = 0.0;
};

/// Least-squares fit of dy/dt = c5 + c6 y^((n+2)/2) to a sampled y(t),
/// constrained to c5, c6 >= 0.
OdeConstants fit_ode_constants(std::span<const double> times, std::span<const double> y, double n);

DiagnosticsRecord diagnostics(const Model& model, const State& state);

}  // namespace bec
