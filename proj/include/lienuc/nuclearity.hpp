#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lienuc/group.hpp"
#include "lienuc/symbol.hpp"

namespace lienuc {

// Orders of an r-nuclearity query A : L^{p1} -> L^{p2}.
struct CriterionQuery {
  double r = 1.0;
  double p1 = 2.0;
  double p2 = 2.0;

  // Throws DomainError unless 0 < r <= 1 and p1, p2 in [1, inf).
  void validate() const;
  double p1_tilde() const;  // min(2, p1)
  double p2_tilde() const;  // max(2, p2)
  double q1() const;        // dual exponent of p1 (inf when p1 = 1)
  double q1_tilde() const;  // dual exponent of p1_tilde
};

enum class Verdict { ConvergedNumerically, DivergenceDetected, Inconclusive };
std::string to_string(Verdict v);

// Increasing cutoffs at which partial sums are reported.
using Schedule = std::vector<double>;
// first, first*factor, ... while < last, then last.
Schedule geometric_schedule(double first, double last, double factor = 2.0);
// Default schedule ending at `cutoff`: powers of two below it, then cutoff.
Schedule schedule_up_to(double cutoff);

struct GrowthFit {
  std::string model;  // "log" (a + c log L) or "power" (a + c L^beta)
  double r2 = 0.0;
  double scale = 0.0;
  double exponent = 0.0;
};

// Decision rule for infinite series evaluated on a finite schedule.
//
// ConvergedNumerically when the last partial-sum increment is below
// tail_ratio of the sum, or the log-log slope of terms against weight over
// the top decade is below -(dual growth dim) - exponent_margin.
// DivergenceDetected when, otherwise, the upper half of the partial sums
// fits a + c log L or a + c L^beta (c, beta > 0) with R^2 > min_r2.
// Inconclusive otherwise.
struct VerdictRule {
  double tail_ratio = 1e-6;
  double exponent_margin = 0.05;
  double min_r2 = 0.999;
};

struct SeriesAnalysis {
  Verdict verdict = Verdict::Inconclusive;
  double tail_increment_ratio = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> tail_exponent;
  std::optional<GrowthFit> growth_fit;
};

SeriesAnalysis analyze_series(const std::vector<double>& weights, const std::vector<double>& terms,
                              const Schedule& schedule, const std::vector<double>& partial_sums,
                              int growth_dim, const VerdictRule& rule = {});

// Least-squares fits of partial sums against the cutoff.
GrowthFit fit_log_growth(const std::vector<double>& cutoffs, const std::vector<double>& sums);
GrowthFit fit_power_growth(const std::vector<double>& cutoffs, const std::vector<double>& sums);
// Slope of log(terms) against log(weights) over entries with positive terms.
std::optional<double> loglog_slope(const std::vector<double>& weights, const std::vector<double>& terms);

struct CriterionReport {
  std::string criterion;
  std::string statement;
  // True only where the series condition is known to be necessary as well.
  bool equivalence = false;
  std::string branch;
  GroupId group = GroupId::su2();
  CriterionQuery query;
  std::vector<Irrep> irreps;
  std::vector<double> terms;
  Schedule schedule;
  std::vector<double> partial_sums;
  SeriesAnalysis analysis;
  std::optional<double> nr_upper_bound;
  std::vector<std::string> notes;

  Verdict verdict() const { return analysis.verdict; }
  double total() const { return partial_sums.empty() ? 0.0 : partial_sums.back(); }
};

// sum_xi d ||sigma(xi)||_{S_r}^r, x-independent symbols on L^2.
CriterionReport criterion_invariant_l2(const Symbol& sigma, double r, const Schedule& schedule);
// L^{p1} -> L^{p2} version; the branch depends on p2 <= 2.
CriterionReport criterion_invariant_lp(const Symbol& sigma, const CriterionQuery& q, const Schedule& schedule);
// sum_xi d^{1 + (1/p1~ - 1/p2~) r} sum_j |sigma(xi)_jj|^r for diagonal symbols.
CriterionReport criterion_diagonal(const Symbol& sigma, const CriterionQuery& q, const Schedule& schedule);
// sum_xi d^{2 + r/p1~} || ||sigma(x,xi)^t||_{op(l^inf,l^inf)} ||_{L^{p2}}^r, any symbol.
CriterionReport criterion_general(const Symbol& sigma, const CriterionQuery& q, const Schedule& schedule);
// sum_xi d^2 <xi>^{-s}; converges iff s > dim G.
CriterionReport dim_sum_convergence(const GroupId& group, double s, const Schedule& schedule);

// Criterion that applies to the symbol's kind: invariant (l2 or lp),
// diagonal, or general for x-dependent symbols.
CriterionReport matching_criterion(const Symbol& sigma, const CriterionQuery& q, const Schedule& schedule);

// (sum_{xi,i,j} ||g_{xi,ij}||_{L^{p2}}^r ||h_{xi,ij}||_{L^{q1}}^r)^{1/r} for the
// decomposition g = d (xi sigma)_ij, h = conj(xi_ij), truncated at cutoff.
// Refuses (DivergenceRefused) when the matching criterion diverges.
double nr_upper_bound(const Symbol& sigma, const CriterionQuery& q, double cutoff);

}  // namespace lienuc
