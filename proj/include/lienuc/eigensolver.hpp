#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lienuc/group.hpp"

namespace lienuc {

struct EigenOptions {
  // Largest matrix side accepted by eigenvalues().
  Eigen::Index max_dim = 2000;
  // QR sweeps allowed per eigenvalue before giving up.
  int max_iterations_per_eigenvalue = 30;
  // max |A - A^*| relative to max |A| below which A is treated as Hermitian.
  double hermitian_tol = 1e-14;
};

bool is_hermitian(const Eigen::MatrixXcd& a, double rel_tol);

// Unitary similarity to upper Hessenberg form by Householder reflections.
void reduce_to_hessenberg(Eigen::MatrixXcd& a);

// Eigenvalues of an upper Hessenberg matrix by implicit single-shift complex
// QR with Wilkinson shifts. Throws NumericError if a subdiagonal entry fails
// to deflate within the iteration budget.
std::vector<Complex> hessenberg_qr_eigenvalues(Eigen::MatrixXcd h, int max_iterations_per_eigenvalue = 30);

// All eigenvalues with multiplicity, sorted by sort_spectrum. Hermitian
// input takes the self-adjoint path.
std::vector<Complex> eigenvalues(const Eigen::MatrixXcd& a, const EigenOptions& opts = {});

// Descending modulus, ties by argument in (-pi, pi].
void sort_spectrum(std::vector<Complex>& v);

}  // namespace lienuc
