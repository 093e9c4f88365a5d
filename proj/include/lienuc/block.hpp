#pragma once

#include <complex>

#include <Eigen/Dense>

#include "lienuc/group.hpp"

namespace lienuc {

// One d x d symbol block sigma(xi), kept in the cheapest exact form so that
// norms of large scalar or diagonal blocks never need a dense SVD.
class Block {
 public:
  enum class Form { ScalarIdentity, Diagonal, Dense };

  // The 1x1 zero block.
  Block() = default;

  static Block scalar(int dim, Complex value);
  static Block diagonal(Eigen::VectorXcd entries);
  static Block dense(Eigen::MatrixXcd m);

  Form form() const { return form_; }
  int dim() const { return dim_; }
  bool is_diagonal() const { return form_ != Form::Dense; }

  // Diagonal entries (valid for ScalarIdentity and Diagonal forms).
  Eigen::VectorXcd diagonal_entries() const;
  Eigen::MatrixXcd to_dense() const;

  Complex trace() const;
  Block scaled(Complex c) const;
  // Singular values in descending order.
  Eigen::VectorXd singular_values() const;
  // sum_i s_i^r.
  double schatten_power(double r) const;
  // Max absolute row sum of the transpose, i.e. max absolute column sum.
  double opinf_of_transpose() const;
  bool all_finite() const;

 private:
  Form form_ = Form::ScalarIdentity;
  int dim_ = 1;
  Complex scalar_{0.0};
  Eigen::VectorXcd diag_;
  Eigen::MatrixXcd dense_;
};

}  // namespace lienuc
