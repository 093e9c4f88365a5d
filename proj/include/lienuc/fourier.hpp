#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "lienuc/group.hpp"
#include "lienuc/quadrature.hpp"

namespace lienuc {

// Samples of a function at the nodes of a quadrature rule.
struct GridFunction {
  RulePtr rule;
  std::vector<Complex> values;
  // Declared band limit (max level of the Fourier support), if known.
  std::optional<double> band_limit;

  static GridFunction sample(RulePtr rule, const std::function<Complex(const GroupPoint&)>& f,
                             std::optional<double> band_limit = std::nullopt);
};

// Fourier coefficient matrices fhat(xi) for every irrep of weight <= cutoff.
struct FourierCoefficients {
  GroupId group = GroupId::su2();
  double cutoff = 1.0;
  std::vector<Irrep> irreps;
  std::vector<Eigen::MatrixXcd> blocks;
  std::vector<std::string> warnings;

  // Index of irrep in `irreps`, or -1.
  std::ptrdiff_t find(const Irrep& irrep) const;
};

// fhat(xi)_{mn} = sum_i w_i f(x_i) conj(xi(x_i)_{nm}) for every irrep of
// weight <= cutoff. Attaches a warning when exactness cannot be certified.
FourierCoefficients forward_ft(const GridFunction& f, double cutoff);
FourierCoefficients forward_ft(const GridFunction& f, const std::vector<Irrep>& duals, double cutoff);

// Truncated series sum_xi d_xi Tr(xi(x) fhat(xi)).
Complex inverse_ft(const FourierCoefficients& coeffs, const GroupPoint& x);
GridFunction inverse_ft(const FourierCoefficients& coeffs, RulePtr rule);

// | ||f||^2_{L2} - sum_xi d_xi ||fhat(xi)||^2_HS |.
double parseval_defect(const GridFunction& f, const FourierCoefficients& coeffs);

// JSON: {"group", "cutoff", "coefficients": [{label, dim, re, im}]}; matrices
// as row-major nested arrays.
nlohmann::json to_json(const FourierCoefficients& coeffs);
FourierCoefficients coefficients_from_json(const nlohmann::json& j);

// Shared JSON helpers for labels and matrices.
nlohmann::json label_to_json(const Irrep& irrep);
Irrep irrep_from_label(const GroupId& group, const nlohmann::json& label);
nlohmann::json group_to_json(const GroupId& group);
GroupId group_from_json(const nlohmann::json& j);
void matrix_to_json(const Eigen::MatrixXcd& m, nlohmann::json& re, nlohmann::json& im);
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& re, const nlohmann::json& im, int dim);

}  // namespace lienuc
