// Small dense symmetric-positive-definite linear algebra: enough for the
// Gibbs full conditionals (K up to a few dozen), nothing more.

#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpc {

class NotSpdError : public std::runtime_error {
 public:
  NotSpdError(int pivot, const std::string& what)
      : std::runtime_error(what), pivot_(pivot) {}
  int pivot() const { return pivot_; }

 private:
  int pivot_;
};

// Lower-triangular Cholesky factor L with A = L L^T.
class CholeskyFactor {
 public:
  CholeskyFactor() = default;
  CholeskyFactor(int dim, std::vector<double> lower);

  int dim() const { return dim_; }
  double lower(int i, int j) const { return lower_[i * dim_ + j]; }

  // Solve A x = b via the two triangular solves.
  std::vector<double> solve(std::span<const double> b) const;
  // L y = b (forward substitution).
  void solve_lower_in_place(std::span<double> b) const;
  // L^T x = y (back substitution).
  void solve_upper_in_place(std::span<double> b) const;
  // L^T x = z for z iid standard normal gives x ~ N(0, A^{-1}); this is the
  // sampling path when A is a precision matrix.

 private:
  int dim_ = 0;
  std::vector<double> lower_;  // row-major, upper part zero
};

// Factor a dense symmetric matrix given in row-major full storage.
// Throws NotSpdError naming the first non-positive pivot.
CholeskyFactor cholesky_dense(int dim, std::span<const double> a);

// Dense symmetric matrix validated at construction: the constructor runs the
// factorization and rejects inputs that are asymmetric or not positive
// definite.
class SpdMatrix {
 public:
  SpdMatrix(int dim, std::vector<double> dense);

  int dim() const { return dim_; }
  double at(int i, int j) const { return a_[i * dim_ + j]; }
  std::span<const double> data() const { return a_; }
  const CholeskyFactor& factor() const { return factor_; }

 private:
  int dim_;
  std::vector<double> a_;
  CholeskyFactor factor_;
};

inline CholeskyFactor cholesky_spd(const SpdMatrix& a) { return a.factor(); }

std::vector<double> spd_solve(const SpdMatrix& a, std::span<const double> b);

}  // namespace gpc
