#pragma once

#include <optional>
#include <utility>

#include "bec/errors.hpp"

namespace bec {

/// Unchecked model parameters as read from a config file.
struct RawParams {
  double n = 2.0;
  double alpha = 6.5;
  double beta = 0.5;
  double gamma = 0.0;
  double L = 1.0;
  double eps = 0.01;
  double k = 100.0;
  int N = 128;
  /// Cap on eps below which the gradient-energy estimate is known to hold.
  /// Defaults to eps0 / 2 when unset.
  std::optional<double> eps_star;
};

/// P(n) = n^3 + 5 n^2 + 16 n - 40.
double critical_polynomial(double n);

/// The unique positive root of critical_polynomial, found by bisection on [1, 2].
double nstar_root();

/// Spatial and temporal Hoelder exponents (theta, theta / (2 theta + 3)).
/// Throws DomainError for gamma >= 1.
std::pair<double, double> holder_exponents(double gamma);

/// eps0 = min{1, sqrt(L / 2)}.
double eps0_for(double L);

/// Validated parameters. Only obtainable through validate(), so every
/// instance lies strictly inside the admissible region.
class Params {
 public:
  double n() const { return n_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  double L() const { return L_; }
  double eps() const { return eps_; }
  double k() const { return k_; }
  int N() const { return N_; }

  double eps0() const { return eps0_; }
  double eps_star() const { return eps_star_; }
  double nstar() const { return nstar_; }
  double theta() const { return theta_; }
  double theta_time() const { return theta_time_; }

  /// alpha - beta + gamma, the weight exponent shared by every dissipation integral.
  double dissipation_power() const { return alpha_ - beta_ + gamma_; }

  RawParams to_raw() const;

  /// Same parameters with a different regularization; revalidates.
  Params with_eps(double eps) const;

 private:
  friend Params validate(const RawParams& raw);
  Params() = default;

  double n_ = 0, alpha_ = 0, beta_ = 0, gamma_ = 0, L_ = 0, eps_ = 0, k_ = 0;
  int N_ = 0;
  double eps0_ = 0, eps_star_ = 0, nstar_ = 0, theta_ = 0, theta_time_ = 0;
};

/// Checks every admissibility inequality with exact (strict) comparisons.
/// Throws ValidationError listing all violations by name.
Params validate(const RawParams& raw);

}  // namespace bec
