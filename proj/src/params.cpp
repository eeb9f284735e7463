#include "bec/params.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <vector>

namespace bec {

double critical_polynomial(double n) { return ((n + 5.0) * n + 16.0) * n - 40.0; }

double nstar_root() {
  // P(1) = -18 < 0 < P(2) = 20 and P' > 0 on [1, 2].
  double lo = 1.0;
  double hi = 2.0;
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (critical_polynomial(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return std::abs(critical_polynomial(lo)) <= std::abs(critical_polynomial(hi)) ? lo : hi;
}

std::pair<double, double> holder_exponents(double gamma) {
  if (!(gamma < 1.0)) throw DomainError("holder_exponents: gamma must be < 1");
  const double theta = std::min(0.5, 0.5 * (1.0 - gamma));
  return {theta, theta / (2.0 * theta + 3.0)};
}

double eps0_for(double L) { return std::min(1.0, std::sqrt(L / 2.0)); }

RawParams Params::to_raw() const {
  RawParams raw;
  raw.n = n_;
  raw.alpha = alpha_;
  raw.beta = beta_;
  raw.gamma = gamma_;
  raw.L = L_;
  raw.eps = eps_;
  raw.k = k_;
  raw.N = N_;
  raw.eps_star = eps_star_;
  return raw;
}

Params Params::with_eps(double eps) const {
  RawParams raw = to_raw();
  raw.eps = eps;
  return validate(raw);
}

Params validate(const RawParams& raw) {
  std::vector<Violation> out;
  auto require = [&](bool ok, const char* name, double bound, double value) {
    if (!ok) out.push_back({name, bound, value});
  };

  const std::pair<const char*, double> fields[] = {
      {"n", raw.n}, {"alpha", raw.alpha}, {"beta", raw.beta}, {"gamma", raw.gamma},
      {"L", raw.L}, {"eps", raw.eps},     {"k", raw.k}};
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value)) out.push_back({std::string(name) + ".finite", 0.0, value});
  }
  if (!out.empty()) throw ValidationError(std::move(out));

  const double nstar = nstar_root();
  require(raw.n > nstar, "n.lower", nstar, raw.n);
  require(raw.n < 3.0, "n.upper", 3.0, raw.n);
  require(raw.alpha > 3.0, "alpha.lower", 3.0, raw.alpha);
  require(raw.beta > -1.0, "beta.lower", -1.0, raw.beta);
  require(raw.beta < raw.alpha - 4.0, "beta.upper", raw.alpha - 4.0, raw.beta);
  require(raw.gamma > 5.0 - raw.alpha + raw.beta, "gamma.lower", 5.0 - raw.alpha + raw.beta,
          raw.gamma);
  require(raw.gamma < 1.0, "gamma.upper", 1.0, raw.gamma);
  require(raw.L > 0.0, "L.lower", 0.0, raw.L);
  require(raw.k >= 1.0, "k.lower", 1.0, raw.k);
  require(raw.N >= 16, "N.lower", 16.0, raw.N);

  const double eps0 = raw.L > 0.0 ? eps0_for(raw.L) : 0.0;
  const double eps_star = raw.eps_star.value_or(0.5 * eps0);
  require(raw.eps > 0.0, "eps.lower", 0.0, raw.eps);
  require(raw.eps < eps0, "eps.upper", eps0, raw.eps);
  if (raw.eps_star) {
    require(std::isfinite(*raw.eps_star) && *raw.eps_star > 0.0 && *raw.eps_star <= eps0,
            "eps_star.range", eps0, *raw.eps_star);
  }
  require(raw.eps < eps_star, "eps.star", eps_star, raw.eps);

  if (!out.empty()) throw ValidationError(std::move(out));

  // Implied by the checks above; a failure here means the region itself is wrong.
  if (!(raw.alpha - raw.beta + raw.gamma > 5.0) || !(raw.alpha + raw.beta - raw.gamma + 2.0 > 3.0))
    throw InternalError("validate: derived admissibility inequalities do not hold");

  Params p;
  p.n_ = raw.n;
  p.alpha_ = raw.alpha;
  p.beta_ = raw.beta;
  p.gamma_ = raw.gamma;
  p.L_ = raw.L;
  p.eps_ = raw.eps;
  p.k_ = raw.k;
  p.N_ = raw.N;
  p.eps0_ = eps0;
  p.eps_star_ = eps_star;
  p.nstar_ = nstar;
  std::tie(p.theta_, p.theta_time_) = holder_exponents(raw.gamma);
  return p;
}

}  // namespace bec
