#pragma once

#include <span>
#include <vector>

namespace bec {

/// Graded mesh x_i = L (i / N)^p on [0, L] with N cells and N + 1 nodes.
///
/// Difference operators use the three-point stencils of a nonuniform mesh.
/// At the endpoints the caller's values are reflected evenly about the
/// boundary node (u_{-1} = u_1, x_{-1} = -x_1 and likewise at x = L), which is
/// the ghost policy of the model: odd derivatives vanish there.
class Grid {
 public:
  /// Throws DomainError unless N >= 16, L > 0 and p in [1, 3].
  static Grid build(int N, double L, double p = 1.0);

  int cells() const { return static_cast<int>(x_.size()) - 1; }
  int nodes() const { return static_cast<int>(x_.size()); }
  double L() const { return L_; }
  double grading() const { return p_; }

  const std::vector<double>& x() const { return x_; }
  /// Cell widths h_i = x_{i+1} - x_i, i = 0..N-1.
  const std::vector<double>& h() const { return h_; }
  /// Trapezoid weights; they sum to L.
  const std::vector<double>& weights() const { return w_; }

  /// Left and right spacing seen by node i under the mirror ghost policy.
  double h_left(int i) const { return i == 0 ? h_.front() : h_[i - 1]; }
  double h_right(int i) const { return i == cells() ? h_.back() : h_[i]; }

 private:
  double L_ = 0.0;
  double p_ = 1.0;
  std::vector<double> x_, h_, w_;
};

/// First derivative at every node, even reflection at both ends.
std::vector<double> d1(std::span<const double> v, const Grid& grid);
/// Second derivative at every node, even reflection at both ends.
std::vector<double> d2(std::span<const double> v, const Grid& grid);

void d1_into(std::span<const double> v, const Grid& grid, std::span<double> out);
void d2_into(std::span<const double> v, const Grid& grid, std::span<double> out);

/// Three-point stencils on an arbitrary strictly increasing point set,
/// evaluated at interior points 1..size-2 (endpoints of the output are 0).
std::vector<double> d1_points(std::span<const double> x, std::span<const double> v);
std::vector<double> d2_points(std::span<const double> x, std::span<const double> v);

/// Trapezoid rule: sum_i w_i * weight_i * f_i.
double quad(std::span<const double> weight, std::span<const double> f, const Grid& grid);
/// Trapezoid rule with unit weight.
double quad(std::span<const double> f, const Grid& grid);

}  // namespace bec
