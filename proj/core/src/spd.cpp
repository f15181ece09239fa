#include "gpc/spd.hpp"

#include <cmath>
#include <sstream>

namespace gpc {

CholeskyFactor::CholeskyFactor(int dim, std::vector<double> lower)
    : dim_(dim), lower_(std::move(lower)) {
  if (static_cast<int>(lower_.size()) != dim_ * dim_)
    throw std::invalid_argument("CholeskyFactor: storage size mismatch");
}

void CholeskyFactor::solve_lower_in_place(std::span<double> b) const {
  for (int i = 0; i < dim_; ++i) {
    double acc = b[i];
    for (int j = 0; j < i; ++j) acc -= lower_[i * dim_ + j] * b[j];
    b[i] = acc / lower_[i * dim_ + i];
  }
}

void CholeskyFactor::solve_upper_in_place(std::span<double> b) const {
  for (int i = dim_ - 1; i >= 0; --i) {
    double acc = b[i];
    for (int j = i + 1; j < dim_; ++j) acc -= lower_[j * dim_ + i] * b[j];
    b[i] = acc / lower_[i * dim_ + i];
  }
}

std::vector<double> CholeskyFactor::solve(std::span<const double> b) const {
  if (static_cast<int>(b.size()) != dim_)
    throw std::invalid_argument("CholeskyFactor::solve: dimension mismatch");
  std::vector<double> x(b.begin(), b.end());
  solve_lower_in_place(x);
  solve_upper_in_place(x);
  return x;
}

CholeskyFactor cholesky_dense(int dim, std::span<const double> a) {
  if (dim < 1) throw std::invalid_argument("cholesky_dense: dim must be >= 1");
  if (static_cast<int>(a.size()) != dim * dim)
    throw std::invalid_argument("cholesky_dense: storage size mismatch");
  std::vector<double> l(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int j = 0; j < dim; ++j) {
    double d = a[j * dim + j];
    for (int k = 0; k < j; ++k) d -= l[j * dim + k] * l[j * dim + k];
    if (!(d > 0.0)) {
      std::ostringstream msg;
      msg << "cholesky: pivot " << j << " is non-positive (" << d
          << "); matrix is not positive definite";
      throw NotSpdError(j, msg.str());
    }
    double ljj = std::sqrt(d);
    l[j * dim + j] = ljj;
    for (int i = j + 1; i < dim; ++i) {
      double acc = a[i * dim + j];
      for (int k = 0; k < j; ++k) acc -= l[i * dim + k] * l[j * dim + k];
      l[i * dim + j] = acc / ljj;
    }
  }
  return CholeskyFactor(dim, std::move(l));
}

SpdMatrix::SpdMatrix(int dim, std::vector<double> dense)
    : dim_(dim), a_(std::move(dense)) {
  if (static_cast<int>(a_.size()) != dim_ * dim_)
    throw std::invalid_argument("SpdMatrix: storage size mismatch");
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) {
      double diff = std::abs(a_[i * dim_ + j] - a_[j * dim_ + i]);
      double scale = std::abs(a_[i * dim_ + j]) + std::abs(a_[j * dim_ + i]);
      if (diff > 1e-12 * (1.0 + scale))
        throw std::invalid_argument("SpdMatrix: matrix is not symmetric");
    }
  factor_ = cholesky_dense(dim_, a_);
}

std::vector<double> spd_solve(const SpdMatrix& a, std::span<const double> b) {
  return a.factor().solve(b);
}

}  // namespace gpc
