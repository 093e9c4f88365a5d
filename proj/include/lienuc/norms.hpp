#pragma once

#include <span>

#include <Eigen/Dense>

#include "lienuc/block.hpp"
#include "lienuc/quadrature.hpp"

namespace lienuc {

// (sum_i s_i^r)^{1/r} over the singular values of m; r > 0.
double schatten_norm(const Eigen::MatrixXcd& m, double r);
double schatten_norm(const Block& b, double r);

// Operator norm on (C^d, l^inf): the maximum absolute row sum.
double opinf_norm(const Eigen::MatrixXcd& m);

// (sum_i w_i v_i^p)^{1/p} for p in [1, inf); p = inf gives the node maximum,
// which is only a heuristic for the essential supremum.
double lp_norm_x(std::span<const double> values, double p, const QuadratureRule& rule);

}  // namespace lienuc
