#include "bec/banded.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "bec/errors.hpp"

namespace bec {

BandMatrix::BandMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), width_(2 * kl + ku + 1), data_(static_cast<std::size_t>(n) * width_, 0.0) {
  if (n <= 0 || kl < 0 || ku < 0) throw DomainError("BandMatrix: bad dimensions");
}

std::vector<double> BandMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    const int j0 = std::max(0, i - kl_);
    const int j1 = std::min(n_ - 1, i + ku_);
    for (int j = j0; j <= j1; ++j) y[i] += data_[index(i, j)] * x[j];
  }
  return y;
}

BandLU::BandLU(BandMatrix a) : a_(std::move(a)), pivot_(a_.n_) {
  const int n = a_.n_;
  const int kl = a_.kl_;
  const int reach = a_.ku_ + kl;  // upper bandwidth after fill-in
  auto& d = a_.data_;
  auto idx = [&](int i, int j) { return a_.index(i, j); };

  for (int k = 0; k < n; ++k) {
    const int last_row = std::min(n - 1, k + kl);
    const int last_col = std::min(n - 1, k + reach);

    int p = k;
    double best = std::abs(d[idx(k, k)]);
    for (int i = k + 1; i <= last_row; ++i) {
      if (std::abs(d[idx(i, k)]) > best) {
        best = std::abs(d[idx(i, k)]);
        p = i;
      }
    }
    if (best == 0.0) throw InternalError("BandLU: singular matrix");
    pivot_[k] = p;
    if (p != k) {
      for (int j = k; j <= last_col; ++j) std::swap(d[idx(k, j)], d[idx(p, j)]);
    }

    const double diag = d[idx(k, k)];
    for (int i = k + 1; i <= last_row; ++i) {
      const double l = d[idx(i, k)] / diag;
      d[idx(i, k)] = l;
      if (l == 0.0) continue;
      for (int j = k + 1; j <= last_col; ++j) d[idx(i, j)] -= l * d[idx(k, j)];
    }
  }
}

std::vector<double> BandLU::solve(std::span<const double> b) const {
  const int n = a_.n_;
  const int kl = a_.kl_;
  const int reach = a_.ku_ + kl;
  std::vector<double> x(b.begin(), b.end());

  for (int k = 0; k < n; ++k) {
    if (pivot_[k] != k) std::swap(x[k], x[pivot_[k]]);
    const int last_row = std::min(n - 1, k + kl);
    for (int i = k + 1; i <= last_row; ++i) x[i] -= at(i, k) * x[k];
  }
  for (int k = n - 1; k >= 0; --k) {
    const int last_col = std::min(n - 1, k + reach);
    double s = x[k];
    for (int j = k + 1; j <= last_col; ++j) s -= at(k, j) * x[j];
    x[k] = s / at(k, k);
  }
  return x;
}

}  // namespace bec
