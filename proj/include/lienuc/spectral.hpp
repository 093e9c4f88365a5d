#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lienuc/eigensolver.hpp"
#include "lienuc/nuclearity.hpp"
#include "lienuc/quantize.hpp"
#include "lienuc/symbol.hpp"

namespace lienuc {

// All eigenvalues of the finite section, with multiplicity, in spectrum order.
std::vector<Complex> eigenvalues_truncated(const TruncatedOperator& a, const EigenOptions& opts = {});

// int_G sum_xi d_xi Tr sigma(x, xi) dx over irreps of weight <= cutoff.
// Refused (DivergenceRefused) when the matching r = 1, L^2 criterion
// diverges on the schedule up to cutoff.
Complex trace_symbol(const Symbol& sigma, double cutoff);

// Quadrature of the truncated kernel on the diagonal, k(x, x), on `rule`.
// x-dependent symbols need their own sample rule.
Complex trace_kernel_diagonal(const Symbol& sigma, const QuadratureRule& rule, double cutoff);

struct EigsumTrace {
  Complex eigsum;
  Complex matrix_trace;
  std::vector<Complex> eigenvalues;
};

// Sum of eigenvalues in spectrum order, checked against the diagonal sum
// (NumericError if they differ by more than 1e-9 relative).
EigsumTrace trace_eigsum(const TruncatedOperator& a, const EigenOptions& opts = {});

struct LidskiiHypothesis {
  bool accepted = false;
  // "r<=2/3" or "1/r=1+|1/2-1/p|"; empty when refused.
  std::string regime;
  std::string reason;
};

// Gate for the trace formula = eigenvalue sum on L^p.
LidskiiHypothesis lidskii_hypothesis(double r, double p);

struct Summability {
  double s = 2.0;
  double value = 0.0;
  double bound = 0.0;  // nr_bound^s
  bool pass = true;
};

// s = 2r/(2-r); pass iff sum |lambda|^s <= nr_bound^s (1 + 1e-9).
Summability summability_check(const std::vector<Complex>& eigs, double r, double nr_bound);

struct SpectralReport {
  double cutoff = 1.0;
  CriterionQuery query;
  LidskiiHypothesis hypothesis;
  bool refused = false;
  std::string refusal;
  std::optional<CriterionReport> criterion;
  std::vector<Complex> eigenvalues;
  Complex trace_symbol{0.0};
  Complex trace_kernel{0.0};
  Complex trace_eigsum{0.0};
  Complex matrix_trace{0.0};
  double s_exponent = 2.0;
  std::optional<Summability> summability;
  double lidskii_residual = 0.0;
  double kernel_residual = 0.0;
  std::vector<std::string> warnings;
};

// Three traces of the finite section and their residuals, provided the
// hypothesis gate and the matching criterion pass. q.p1 and q.p2 must agree.
SpectralReport lidskii_verify(const Symbol& sigma, const CriterionQuery& q, double cutoff,
                              const EigenOptions& opts = {});

struct HeatTrace {
  double value = 0.0;
  // Upper bound on the omitted sum over irreps beyond the cutoff.
  double tail_bound = 0.0;
  std::size_t irreps = 0;
};

// sum_xi d_xi^2 exp(-t lambda_xi^2) over weight <= cutoff.
HeatTrace heat_trace(const GroupId& group, double t, double cutoff);

}  // namespace lienuc
