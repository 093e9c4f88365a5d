#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lienuc/nuclearity.hpp"
#include "lienuc/symbol.hpp"

namespace lienuc {

// exp(-t lambda^2) I_d.
Symbol heat_symbol(const GroupId& group, double t, double cutoff);
// <xi>^{-alpha} I_d, the symbol of (I - Laplacian)^{-alpha/2}.
Symbol bessel_symbol(const GroupId& group, double alpha, double cutoff);
// diag_m (1 + l(l+1) - m^2)^{-alpha/2}, m = l, l-1, ..., -l (half-integers
// on SU(2)); the symbol of (I - sub-Laplacian)^{-alpha/2}.
Symbol sublaplacian_symbol(const GroupId& group, double alpha, double cutoff);
Symbol identity_symbol(const GroupId& group, double cutoff);
// Invariant symbol from an irrep -> block mapping. Missing irreps get the
// zero block; wrong block sizes are a domain error.
Symbol multiplier_from_sequence(const GroupId& group, double cutoff,
                                const std::vector<std::pair<Irrep, Eigen::MatrixXcd>>& blocks);
// g(x) a(xi).
Symbol separable_symbol(GridFunction g, const Symbol& a);
// (1 + amplitude cos(coordinate)) times the heat symbol. The coordinate is
// beta on SU(2)/SO(3) and 2 pi x_1 on a torus; g is sampled on a rule one
// level above the cutoff so assembled matrices are exact.
Symbol separable_demo_symbol(const GroupId& group, double t, double amplitude, double cutoff);
// Random Hermitian blocks with ||a(xi)||_{S_1} = d^{-4} (SU(2)/SO(3)) or
// <xi>^{-4} (tori); each block is seeded from (seed, irrep label).
Symbol random_hermitian_symbol(const GroupId& group, std::uint64_t seed, double cutoff);

// Coefficients c_n, n >= 0, of a continuous function on the circle whose
// coefficients are not r-summable for r < 2: Rudin-Shapiro signs on the
// dyadic blocks [2^k, 2^{k+1}), k >= 1, with amplitude k^{-2} 2^{-k/2}.
// Negative frequencies and n < 2 vanish.
double carleman_coefficient(std::int64_t n);

struct CarlemanData {
  std::int64_t max_frequency = 0;
  std::vector<double> coefficients;  // c_0 .. c_N
  // sup_x |sum_{n <= M} c_n e^{2 pi i n x}| <= certified_sup for every M.
  double certified_sup = 0.0;
  // Max of |partial sum| on an oversampled uniform grid (FFT).
  double sampled_sup = 0.0;
  double l2_mass = 0.0;           // sum |c_n|^2
  double l2_limit = 0.0;          // pi^4 / 90
};

CarlemanData carleman_coefficients(std::int64_t max_frequency);
// sum_{|n| <= N} |c_n|^r
double carleman_power_sum(std::int64_t max_frequency, double r);
// Multiplier sigma(n) = c_n on T^1, the convolution operator f * kappa.
Symbol carleman_symbol(double cutoff);

struct ExpectedCriterion {
  std::string criterion;
  // Parameter whose value decides the verdict (empty when it never flips).
  std::string parameter;
  // Verdict flips where parameter * r crosses `boundary`.
  double boundary = 0.0;
  double r = 1.0;
  double p1 = 2.0;
  double p2 = 2.0;
  Verdict above = Verdict::ConvergedNumerically;
  Verdict below = Verdict::DivergenceDetected;
  bool equivalence = false;
  std::string reference;
};

struct CatalogEntry {
  std::string name;
  GroupId group;
  std::map<std::string, double> parameters;
  Symbol symbol;
  std::vector<ExpectedCriterion> expected;
  std::string description;
};

std::vector<std::string> catalog_names();
std::string catalog_description(const std::string& name);
// Builds a named entry. Parameters: t (heat, separable-demo), alpha (bessel,
// sublaplacian), amplitude (separable-demo), seed (random-hermitian).
// Unknown names are a ConfigError listing the known ones.
CatalogEntry make_catalog_entry(const std::string& name, const GroupId& group,
                                const std::map<std::string, double>& parameters, double cutoff);

}  // namespace lienuc
