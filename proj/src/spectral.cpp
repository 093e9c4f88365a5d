#include "lienuc/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lienuc/errors.hpp"
#include "lienuc/parallel.hpp"
#include "lienuc/quadrature.hpp"

namespace lienuc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double relative_gap(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(a), 1e-12); }

void refuse_if_divergent(const Symbol& sigma, double cutoff, const char* what) {
  CriterionQuery q;
  const CriterionReport rep = matching_criterion(sigma, q, schedule_up_to(cutoff));
  if (rep.verdict() == Verdict::DivergenceDetected) {
    throw DivergenceRefused(std::string(what) + " refused: the " + rep.criterion + " series diverges");
  }
}

void check_cutoff(const Symbol& sigma, double cutoff) {
  if (cutoff > sigma.cutoff() * (1.0 + 1e-12)) throw DomainError("cutoff exceeds the symbol cutoff");
}

Complex symbol_trace_unchecked(const Symbol& sigma, double cutoff) {
  const auto irreps = enumerate_dual(sigma.group(), cutoff);
  std::vector<Complex> parts(irreps.size());
  switch (sigma.kind()) {
    case SymbolKind::Invariant:
    case SymbolKind::Diagonal:
      for (std::size_t k = 0; k < irreps.size(); ++k) parts[k] = static_cast<double>(irreps[k].dim) * sigma.block(irreps[k]).trace();
      break;
    case SymbolKind::Separable: {
      const Complex g_mean = integrate_values(*sigma.factor().rule, sigma.factor().values);
      for (std::size_t k = 0; k < irreps.size(); ++k) {
        parts[k] = g_mean * static_cast<double>(irreps[k].dim) * sigma.invariant_factor().block(irreps[k]).trace();
      }
      break;
    }
    case SymbolKind::General: {
      const QuadratureRule& rule = *sigma.sample_rule();
      parallel_for(irreps.size(), [&](std::size_t k) {
        std::vector<Complex> v(rule.size());
        for (std::size_t n = 0; n < rule.size(); ++n) v[n] = sigma.block_at(n, irreps[k]).trace();
        parts[k] = static_cast<double>(irreps[k].dim) * integrate_values(rule, v);
      });
      break;
    }
  }
  Complex total = 0.0;
  for (const Complex& c : parts) total += c;
  return total;
}

Complex kernel_trace_unchecked(const Symbol& sigma, const QuadratureRule& rule, double cutoff) {
  if (!(rule.group() == sigma.group())) throw DomainError("rule and symbol on different groups");
  if (sigma.x_dependent() && !sigma.sample_rule()->same_as(rule)) {
    throw DomainError("x-dependent symbols are traced on their own sample rule");
  }
  const auto irreps = enumerate_dual(sigma.group(), cutoff);
  std::vector<Complex> parts(irreps.size());
  parallel_for(irreps.size(), [&](std::size_t k) {
    const Irrep& x = irreps[k];
    const Block fixed = sigma.x_dependent() ? Block() : sigma.block(x);
    std::vector<Complex> v(rule.size());
    for_each_rep_sample(rule, x, [&](std::size_t node, const Eigen::MatrixXcd& xi) {
      const Block b = sigma.x_dependent() ? sigma.block_at(node, x) : fixed;
      const Eigen::MatrixXcd m = b.form() == Block::Form::Dense ? Eigen::MatrixXcd(xi * b.to_dense())
                                                                 : Eigen::MatrixXcd(xi * b.diagonal_entries().asDiagonal());
      // Tr(m xi^*) = sum_ij m_ij conj(xi_ij)
      v[node] = static_cast<double>(x.dim) * (m.array() * xi.array().conjugate()).sum();
    });
    parts[k] = integrate_values(rule, v);
  });
  Complex total = 0.0;
  for (const Complex& c : parts) total += c;
  return total;
}

// Sum over k > m of exp(-a k^2), bounded geometrically once the term ratio
// drops below 1.
double gaussian_tail_1d(double a, std::int64_t m) {
  double acc = 0.0;
  for (std::int64_t k = m + 1;; ++k) {
    const double f = std::exp(-a * static_cast<double>(k) * static_cast<double>(k));
    const double q = std::exp(-a * (2.0 * static_cast<double>(k) + 1.0));
    if (f == 0.0) return acc;
    if (q < 1.0) return acc + f / (1.0 - q);
    acc += f;
  }
}

}  // namespace

std::vector<Complex> eigenvalues_truncated(const TruncatedOperator& a, const EigenOptions& opts) {
  return eigenvalues(a.matrix, opts);
}

Complex trace_symbol(const Symbol& sigma, double cutoff) {
  check_cutoff(sigma, cutoff);
  refuse_if_divergent(sigma, cutoff, "trace_symbol");
  return symbol_trace_unchecked(sigma, cutoff);
}

Complex trace_kernel_diagonal(const Symbol& sigma, const QuadratureRule& rule, double cutoff) {
  check_cutoff(sigma, cutoff);
  refuse_if_divergent(sigma, cutoff, "trace_kernel_diagonal");
  return kernel_trace_unchecked(sigma, rule, cutoff);
}

EigsumTrace trace_eigsum(const TruncatedOperator& a, const EigenOptions& opts) {
  EigsumTrace t;
  t.eigenvalues = eigenvalues_truncated(a, opts);
  for (const Complex& z : t.eigenvalues) t.eigsum += z;
  t.matrix_trace = a.matrix.trace();
  const double scale = std::max(1.0, std::abs(t.matrix_trace));
  if (std::abs(t.eigsum - t.matrix_trace) > 1e-9 * scale) {
    std::ostringstream os;
    os.precision(17);
    os << "eigenvalue sum " << t.eigsum << " disagrees with the matrix trace " << t.matrix_trace;
    throw NumericError(os.str());
  }
  return t;
}

LidskiiHypothesis lidskii_hypothesis(double r, double p) {
  LidskiiHypothesis h;
  std::ostringstream os;
  if (!(r > 0.0 && r <= 1.0) || !(p >= 1.0) || !std::isfinite(p)) {
    os << "need 0 < r <= 1 and 1 <= p < inf (r = " << r << ", p = " << p << ")";
    h.reason = os.str();
    return h;
  }
  if (r <= 2.0 / 3.0 + 1e-12) {
    h.accepted = true;
    h.regime = "r<=2/3";
    h.reason = "r <= 2/3: the trace formula holds for every p";
    return h;
  }
  const double rhs = 1.0 + std::abs(0.5 - 1.0 / p);
  if (std::abs(1.0 / r - rhs) <= 1e-9) {
    h.accepted = true;
    h.regime = "1/r=1+|1/2-1/p|";
    os << "1/r = " << 1.0 / r << " matches 1 + |1/2 - 1/p| at p = " << p;
    h.reason = os.str();
    return h;
  }
  os << "r = " << r << " > 2/3 and 1/r = " << 1.0 / r << " differs from 1 + |1/2 - 1/p| = " << rhs;
  h.reason = os.str();
  return h;
}

Summability summability_check(const std::vector<Complex>& eigs, double r, double nr_bound) {
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("summability_check needs 0 < r <= 1");
  if (!(nr_bound >= 0.0)) throw DomainError("nr bound must be nonnegative");
  Summability s;
  s.s = 2.0 * r / (2.0 - r);
  for (const Complex& z : eigs) {
    const double m = std::abs(z);
    if (m > 0.0) s.value += std::pow(m, s.s);
  }
  s.bound = nr_bound == 0.0 ? 0.0 : std::pow(nr_bound, s.s);
  s.pass = s.value <= s.bound * (1.0 + 1e-9);
  return s;
}

SpectralReport lidskii_verify(const Symbol& sigma, const CriterionQuery& q, double cutoff, const EigenOptions& opts) {
  q.validate();
  check_cutoff(sigma, cutoff);
  SpectralReport rep;
  rep.cutoff = cutoff;
  rep.query = q;
  rep.s_exponent = 2.0 * q.r / (2.0 - q.r);
  if (q.p1 != q.p2) {
    rep.refused = true;
    rep.refusal = "the trace formula is checked on a single L^p: p1 and p2 must agree";
    return rep;
  }
  rep.hypothesis = lidskii_hypothesis(q.r, q.p1);
  if (!rep.hypothesis.accepted) {
    rep.refused = true;
    rep.refusal = rep.hypothesis.reason;
    return rep;
  }
  rep.criterion = matching_criterion(sigma, q, schedule_up_to(cutoff));
  if (rep.criterion->verdict() == Verdict::DivergenceDetected) {
    rep.refused = true;
    rep.refusal = "the " + rep.criterion->criterion + " series diverges at this (r, p)";
    return rep;
  }
  rep.trace_symbol = symbol_trace_unchecked(sigma, cutoff);
  RulePtr rule;
  if (sigma.x_dependent()) {
    rule = sigma.sample_rule();
  } else {
    double max_level = 0.0;
    for (const auto& x : enumerate_dual(sigma.group(), cutoff)) max_level = std::max(max_level, x.level());
    rule = quadrature(sigma.group(), max_level);
  }
  rep.trace_kernel = kernel_trace_unchecked(sigma, *rule, cutoff);
  const TruncatedOperator op = assemble_matrix(sigma, cutoff);
  rep.warnings = op.warnings;
  const EigsumTrace et = trace_eigsum(op, opts);
  rep.eigenvalues = et.eigenvalues;
  rep.trace_eigsum = et.eigsum;
  rep.matrix_trace = et.matrix_trace;
  rep.lidskii_residual = relative_gap(rep.trace_symbol, rep.trace_eigsum);
  rep.kernel_residual = relative_gap(rep.trace_symbol, rep.trace_kernel);
  return rep;
}

HeatTrace heat_trace(const GroupId& group, double t, double cutoff) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("heat_trace needs t > 0");
  const auto irreps = enumerate_dual(group, cutoff);
  HeatTrace h;
  h.irreps = irreps.size();
  for (const auto& x : irreps) h.value += static_cast<double>(x.dim) * x.dim * std::exp(-t * x.lambda_sq);
  const double limit_sq = cutoff * cutoff;
  if (group.kind() == GroupKind::Torus) {
    const int n = group.torus_rank();
    const double a = kTwoPi * kTwoPi * t;
    const double r2 = std::max(0.0, (limit_sq - 1.0) / (kTwoPi * kTwoPi));
    const auto m = static_cast<std::int64_t>(std::floor(std::sqrt(r2 / n)));
    const double theta = 1.0 + 2.0 * gaussian_tail_1d(a, 0);
    h.tail_bound = n * 2.0 * gaussian_tail_1d(a, m) * std::pow(theta, n - 1);
  } else {
    const int step = group.kind() == GroupKind::SO3 ? 2 : 1;
    int tl = irreps.back().twice_l + step;
    auto f = [&](int twice) {
      const double l = 0.5 * twice;
      return (twice + 1.0) * (twice + 1.0) * std::exp(-t * l * (l + 1.0));
    };
    double acc = 0.0;
    for (;; tl += step) {
      const double ft = f(tl);
      if (ft == 0.0) break;
      const double q = f(tl + step) / ft;
      if (q < 1.0) {
        acc += ft / (1.0 - q);
        break;
      }
      acc += ft;
    }
    h.tail_bound = acc;
  }
  return h;
}

}  // namespace lienuc
