#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lienuc/fourier.hpp"
#include "lienuc/symbol.hpp"

namespace lienuc {

// Op(sigma) f (x) = sum_xi d_xi Tr(xi(x) sigma(x,xi) fhat(xi)) at every node
// of f's rule, truncated at the symbol cutoff. x-dependent symbols require f
// to live on the symbol's sample rule.
GridFunction apply_op(const Symbol& sigma, const GridFunction& f);
// Same, starting from coefficients; coefficients beyond the symbol cutoff
// are a domain error.
GridFunction apply_op(const Symbol& sigma, const FourierCoefficients& coeffs, RulePtr rule);

// Truncated kernel k(x,y) = sum_xi d_xi Tr(xi(x) sigma(x,xi) xi(y)^*).
Complex kernel_eval(const Symbol& sigma, const GroupPoint& x, const GroupPoint& y);
// x given as a node of the symbol's sample rule (needed for x-dependent symbols).
Complex kernel_eval(const Symbol& sigma, std::size_t x_node, const GroupPoint& y);

using LinearMap = std::function<GridFunction(const GridFunction&)>;

// xi(x)^* (A xi)(x), with A applied entrywise to the coefficient functions
// sampled on `rule`, read off at the node x_node.
Eigen::MatrixXcd extract_symbol(const LinearMap& a, const RulePtr& rule, const Irrep& irrep, std::size_t x_node);
// Same at several nodes, applying A only once.
std::vector<Eigen::MatrixXcd> extract_symbol(const LinearMap& a, const RulePtr& rule, const Irrep& irrep,
                                             std::span<const std::size_t> x_nodes);
// Same at an arbitrary point; (A xi_ij)(x) is recovered by band-limited
// Fourier interpolation up to the rule level.
Eigen::MatrixXcd extract_symbol(const LinearMap& a, const RulePtr& rule, const Irrep& irrep, const GroupPoint& x);

struct BasisIndex {
  std::size_t irrep = 0;
  int i = 0;
  int j = 0;
};

// Finite section of Op(sigma) in the orthonormal basis sqrt(d) xi_ij.
// Basis order: irreps in dual order, then (i, j) with i fastest.
struct TruncatedOperator {
  GroupId group = GroupId::su2();
  double cutoff = 1.0;
  std::vector<Irrep> irreps;
  std::vector<std::size_t> offsets;
  std::vector<BasisIndex> basis;
  Eigen::MatrixXcd matrix;
  std::vector<std::string> warnings;

  Eigen::Index size() const { return matrix.rows(); }
};

TruncatedOperator assemble_matrix(const Symbol& sigma, double cutoff);

}  // namespace lienuc
