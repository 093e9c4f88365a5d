#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "lienuc/group.hpp"

namespace lienuc {

// Product rule for the normalised Haar measure.
//
// Torus: uniform grid with 2L+2 points per axis. SU(2)/SO(3): uniform grids
// of 4L+2 points in alpha (period 2pi) and gamma (period 4pi on SU(2), 2pi
// on SO(3)) times (2L+2)-point Gauss-Legendre in cos(beta). Node index is
// row-major over the axes, last axis fastest.
//
// The rule integrates every band-limited function of degree <= 2L exactly,
// in particular all products xi_ij * conj(xi'_kl) with both levels <= L.
class QuadratureRule {
 public:
  QuadratureRule(const GroupId& group, double level);

  const GroupId& group() const { return group_; }
  double level() const { return level_; }
  std::size_t size() const { return weights_.size(); }
  const std::vector<GroupPoint>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const GroupPoint& node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  // Grid structure, used by rep_samples to reuse small-d matrices.
  const std::vector<std::vector<double>>& axes() const { return axes_; }

  bool same_as(const QuadratureRule& other) const {
    return group_ == other.group_ && level_ == other.level_;
  }

 private:
  GroupId group_;
  double level_;
  std::vector<std::vector<double>> axes_;
  std::vector<GroupPoint> nodes_;
  std::vector<double> weights_;
};

using RulePtr = std::shared_ptr<const QuadratureRule>;

RulePtr quadrature(const GroupId& group, double level);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Sum_i w_i f(x_i) with a fixed-shape pairwise reduction over nodes.
// Throws NumericError carrying the node index when f is non-finite.
Complex integrate(const QuadratureRule& rule, const std::function<Complex(const GroupPoint&)>& f);
Complex integrate_values(const QuadratureRule& rule, std::span<const Complex> values);
double integrate_values(const QuadratureRule& rule, std::span<const double> values);

// Pairwise sum with a fixed tree shape (leaves of 32 entries).
Complex pairwise_sum(std::span<const Complex> v);
double pairwise_sum(std::span<const double> v);

// Representation matrices at every node, packed as a (d*d) x nodes matrix
// with entry (i + j*d, node) = xi(node)_ij.
Eigen::MatrixXcd rep_samples(const QuadratureRule& rule, const Irrep& irrep);

// Calls visit(node, xi(node)) for every node in index order, reusing the
// small-d matrix across nodes that share beta.
void for_each_rep_sample(const QuadratureRule& rule, const Irrep& irrep,
                         const std::function<void(std::size_t, const Eigen::MatrixXcd&)>& visit);

}  // namespace lienuc
