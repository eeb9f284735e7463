#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bec/grid.hpp"
#include "bec/params.hpp"

namespace bec::lab {

/// u(x) = c0 + sum_{m=1..M} a_m cos(m pi x / L), positive with u_x = 0 at both ends.
struct TestFunction {
  double L = 1.0;
  double c0 = 1.0;
  std::vector<double> a;

  /// (u, u_x, u_xx, u_xxx) at x, analytically.
  std::array<double, 4> derivatives(double x) const;
  double value(double x) const { return derivatives(x)[0]; }
  /// c0 - sum |a_m|, a lower bound for u.
  double floor_margin() const;
};

/// a_m uniform in [-1, 1] / m^2, c0 = sum |a_m| + floor. Deterministic in seed.
/// Throws DomainError unless 0 <= M <= 16 and floor > 0.
TestFunction random_test_function(std::uint64_t seed, int M, double floor, double L = 1.0);

/// The corpus used by the verification suite: function i uses seed base + i,
/// M = 1 + i mod 16 and a floor cycling through {0.01, 0.1, 0.5, 1}.
std::vector<TestFunction> corpus(std::uint64_t base_seed, int count, double L = 1.0);

/// Exponents and regularization for the weighted inequalities. eps may be 0 here.
struct WeightSetting {
  double n = 2.0;
  double alpha = 6.5;
  double beta = 0.5;
  double gamma = 0.0;
  double L = 1.0;
  double eps = 0.0;

  double a() const { return alpha - beta + gamma; }
  static WeightSetting from(const Params& p);
  static WeightSetting from(const Params& p, double eps);
};

enum class Lemma { L2, L3, L4, L6, Inter, L31, L32 };

const char* to_string(Lemma lemma);
Lemma lemma_from_string(const std::string& name);

/// The seven weighted integrals the interpolation inequalities compare (a = alpha - beta + gamma):
struct Integrals {
  double uxxx = 0;  // (x+eps)^a     u^n     u_xxx^2
  double mix = 0;   // (x+eps)^a     u^(n-2) u_x^2 u_xx^2
  double ux6 = 0;   // (x+eps)^a     u^(n-4) u_x^6
  double uxx = 0;   // (x+eps)^(a-2) u^n     u_xx^2
  double ux4 = 0;   // (x+eps)^(a-2) u^(n-2) u_x^4
  double ux2 = 0;   // (x+eps)^(a-4) u^n     u_x^2
  double base = 0;  // (x+eps)^(a-6) u^(n+2)
};

/// Composite three-point Gauss-Legendre on `panels` uniform panels, analytic derivatives.
Integrals integrals(const TestFunction& u, const WeightSetting& s, int panels = 10000);

/// C(eta) constants, replayed from the integration-by-parts and Young steps of
/// each interpolation inequality.
double constant_l2(double eta, const WeightSetting& s);
double constant_l3(double eta, const WeightSetting& s);
double constant_l4(double eta, const WeightSetting& s);
double constant_inter(double eta, const WeightSetting& s);
/// Coefficients (of the mixed term, of the u_x^4 term) on the right of the sixth-power bound.
std::pair<double, double> constants_l6(double eta, const WeightSetting& s);

struct InequalityReport {
  Lemma lemma = Lemma::L2;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double eta = 0.0;
  WeightSetting setting;
  bool pass = false;
};

inline constexpr double kRelativeTolerance = 1e-6;

/// constant_scale multiplies every C(eta); anything but 1 is a mutation probe.
InequalityReport check_inequality(Lemma lemma, const Integrals& values, const WeightSetting& s, double eta,
                                  double constant_scale = 1.0);
InequalityReport check_inequality(Lemma lemma, const TestFunction& u, const WeightSetting& s, double eta,
                                  double constant_scale = 1.0);

/// Hoelder (L31) and sup-norm (L32) bounds on a 512-cell evaluation grid.
std::array<InequalityReport, 2> check_pointwise_bounds(const TestFunction& u, const WeightSetting& s);

struct SteadyReport {
  double sigma = 0.0;
  std::vector<double> exceptional;  // sigma values with F_xx identically zero
  bool member = false;
  double exponent = 0.0;            // e = alpha - (n+1) sigma - 2, F = sigma (sigma-1) x^e
  double closed_form_max = 0.0;     // max |F_xx| of the closed form on the window
  double discrete_residual = 0.0;   // max |D2 F_h| on the window
  double consistency_error = 0.0;   // max |D2 F_h - F_xx|
  double scheme_residual = 0.0;     // same with the solver's flux stencil
  int window_nodes = 0;
};

/// Sorted distinct members of {0, 1, (alpha-3)/(n+1), (alpha-2)/(n+1)}.
std::vector<double> exceptional_exponents(double alpha, double n);

/// Residual of the power law x^-sigma in the unregularized equation, on nodes with
/// x >= x_cut whose stencils stay inside the grid. The discrete flux is evaluated as
/// F_h = x^alpha u^(n+2) D2(1/u), the same flux written through 1/u.
SteadyReport steady_residual(double sigma, const WeightSetting& s, const Grid& grid, double x_cut);

}  // namespace bec::lab
