#include "lienuc/block.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "lienuc/errors.hpp"

namespace lienuc {

Block Block::scalar(int dim, Complex value) {
  if (dim < 1) throw DomainError("block dimension must be positive");
  Block b;
  b.form_ = Form::ScalarIdentity;
  b.dim_ = dim;
  b.scalar_ = value;
  return b;
}

Block Block::diagonal(Eigen::VectorXcd entries) {
  if (entries.size() < 1) throw DomainError("block dimension must be positive");
  Block b;
  b.form_ = Form::Diagonal;
  b.dim_ = static_cast<int>(entries.size());
  b.diag_ = std::move(entries);
  return b;
}

Block Block::dense(Eigen::MatrixXcd m) {
  if (m.rows() < 1 || m.rows() != m.cols()) throw DomainError("block must be square and non-empty");
  Block b;
  b.form_ = Form::Dense;
  b.dim_ = static_cast<int>(m.rows());
  b.dense_ = std::move(m);
  return b;
}

Eigen::VectorXcd Block::diagonal_entries() const {
  switch (form_) {
    case Form::ScalarIdentity:
      return Eigen::VectorXcd::Constant(dim_, scalar_);
    case Form::Diagonal:
      return diag_;
    case Form::Dense:
      return dense_.diagonal();
  }
  return {};
}

Eigen::MatrixXcd Block::to_dense() const {
  switch (form_) {
    case Form::ScalarIdentity:
      return scalar_ * Eigen::MatrixXcd::Identity(dim_, dim_);
    case Form::Diagonal:
      return diag_.asDiagonal();
    case Form::Dense:
      return dense_;
  }
  return {};
}

Complex Block::trace() const {
  switch (form_) {
    case Form::ScalarIdentity:
      return static_cast<double>(dim_) * scalar_;
    case Form::Diagonal:
      return diag_.sum();
    case Form::Dense:
      return dense_.trace();
  }
  return {};
}

Block Block::scaled(Complex c) const {
  Block b = *this;
  b.scalar_ *= c;
  if (form_ == Form::Diagonal) b.diag_ *= c;
  if (form_ == Form::Dense) b.dense_ *= c;
  return b;
}

Eigen::VectorXd Block::singular_values() const {
  if (form_ == Form::Dense) {
    // Hermitian blocks: singular values are |eigenvalues|, and the
    // self-adjoint solver is much cheaper than an SVD.
    if (dense_ == dense_.adjoint()) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_, Eigen::EigenvaluesOnly);
      Eigen::VectorXd s = es.eigenvalues().cwiseAbs();
      std::sort(s.begin(), s.end(), std::greater<>());
      return s;
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(dense_);
    return svd.singularValues();
  }
  Eigen::VectorXd s = diagonal_entries().cwiseAbs();
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

double Block::schatten_power(double r) const {
  if (!(r > 0.0)) throw DomainError("Schatten order must be positive");
  if (form_ == Form::ScalarIdentity) {
    const double a = std::abs(scalar_);
    return a == 0.0 ? 0.0 : dim_ * std::pow(a, r);
  }
  const Eigen::VectorXd s = singular_values();
  double acc = 0.0;
  for (double v : s) {
    if (v > 0.0) acc += std::pow(v, r);
  }
  return acc;
}

double Block::opinf_of_transpose() const {
  if (form_ != Form::Dense) return diagonal_entries().cwiseAbs().maxCoeff();
  return dense_.cwiseAbs().colwise().sum().maxCoeff();
}

bool Block::all_finite() const {
  switch (form_) {
    case Form::ScalarIdentity:
      return std::isfinite(scalar_.real()) && std::isfinite(scalar_.imag());
    case Form::Diagonal:
      return diag_.allFinite();
    case Form::Dense:
      return dense_.allFinite();
  }
  return false;
}

}  // namespace lienuc
