#pragma once

#include <span>
#include <vector>

namespace bec {

/// Square band matrix with kl sub- and ku super-diagonals, stored with room for
/// the kl extra super-diagonals that partial pivoting fills in.
class BandMatrix {
 public:
  BandMatrix(int n, int kl, int ku);

  int size() const { return n_; }
  int lower() const { return kl_; }
  int upper() const { return ku_; }

  bool in_band(int i, int j) const { return j - i <= ku_ && i - j <= kl_; }
  double& operator()(int i, int j) { return data_[index(i, j)]; }
  double operator()(int i, int j) const { return in_band(i, j) ? data_[index(i, j)] : 0.0; }

  std::vector<double> multiply(std::span<const double> x) const;

 private:
  friend class BandLU;
  int index(int i, int j) const { return i * width_ + (j - i + kl_); }

  int n_, kl_, ku_, width_;
  std::vector<double> data_;
};

/// LU factorization with partial pivoting of a band matrix.
class BandLU {
 public:
  /// Throws InternalError on an exactly singular pivot.
  explicit BandLU(BandMatrix a);

  std::vector<double> solve(std::span<const double> b) const;

 private:
  double at(int i, int j) const { return a_.data_[a_.index(i, j)]; }

  BandMatrix a_;
  std::vector<int> pivot_;
};

}  // namespace bec
