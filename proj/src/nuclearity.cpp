#include "lienuc/nuclearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "lienuc/errors.hpp"
#include "lienuc/norms.hpp"
#include "lienuc/parallel.hpp"
#include "lienuc/quadrature.hpp"

namespace lienuc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlack = 1e-12;
constexpr std::size_t kTermChunk = 1024;
constexpr int kFitSamples = 24;

double conjugate_exponent(double p) {
  if (p == 1.0) return kInf;
  return p / (p - 1.0);
}

void validate_schedule(const Schedule& s) {
  if (s.empty()) throw DomainError("cutoff schedule is empty");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s[i]) || s[i] < 1.0) throw DomainError("schedule cutoffs must be finite and >= 1");
    if (i > 0 && !(s[i] > s[i - 1])) throw DomainError("schedule must be strictly increasing");
  }
}

// Sum of terms with weight <= cutoff; terms are in dual order, so weights
// are nondecreasing and prefix sums suffice.
struct PrefixSums {
  std::vector<double> weights;
  std::vector<double> sums;  // sums[k] = terms[0] + ... + terms[k-1]

  PrefixSums(const std::vector<Irrep>& irreps, const std::vector<double>& terms) {
    weights.reserve(irreps.size());
    for (const auto& x : irreps) weights.push_back(x.weight);
    sums.assign(terms.size() + 1, 0.0);
    // Neumaier summation, sequential in dual order.
    double s = 0.0;
    double c = 0.0;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const double t = s + terms[k];
      if (std::abs(s) >= std::abs(terms[k])) {
        c += (s - t) + terms[k];
      } else {
        c += (terms[k] - t) + s;
      }
      s = t;
      sums[k + 1] = s + c;
    }
  }

  double at(double cutoff) const {
    const auto it = std::upper_bound(weights.begin(), weights.end(), cutoff * (1.0 + kSlack));
    return sums[static_cast<std::size_t>(it - weights.begin())];
  }
};

template <class TermFn>
void fill_terms(CriterionReport& rep, TermFn term) {
  const std::size_t n = rep.irreps.size();
  rep.terms.assign(n, 0.0);
  const std::size_t chunks = (n + kTermChunk - 1) / kTermChunk;
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t end = std::min(n, (c + 1) * kTermChunk);
    for (std::size_t k = c * kTermChunk; k < end; ++k) {
      const double t = term(rep.irreps[k]);
      if (!std::isfinite(t) || t < 0.0) {
        throw NumericError("criterion term at irrep " + rep.irreps[k].label_string() + " is not a finite nonnegative number");
      }
      rep.terms[k] = t;
    }
  });
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  bool ok = false;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  LinearFit f;
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) return f;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 0.0;
  f.ok = syy > 0.0;
  return f;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

CriterionReport start_report(const GroupId& group, const CriterionQuery& q, const Schedule& schedule,
                             std::string criterion, std::string statement) {
  validate_schedule(schedule);
  CriterionReport rep;
  rep.criterion = std::move(criterion);
  rep.statement = std::move(statement);
  rep.group = group;
  rep.query = q;
  rep.schedule = schedule;
  rep.irreps = enumerate_dual(group, schedule.back());
  return rep;
}

void finish_report(CriterionReport& rep) {
  const PrefixSums prefix(rep.irreps, rep.terms);
  rep.partial_sums.clear();
  for (double cutoff : rep.schedule) rep.partial_sums.push_back(prefix.at(cutoff));
  rep.analysis = analyze_series(prefix.weights, rep.terms, rep.schedule, rep.partial_sums,
                                rep.group.dual_growth_dim());
  // Growth fits use a denser sample of the same partial-sum function.
  if (rep.analysis.verdict != Verdict::ConvergedNumerically) {
    const double lo = std::sqrt(rep.schedule.front() * rep.schedule.back());
    const double hi = rep.schedule.back();
    // A claim of growth needs at least a factor 4 between the schedule ends.
    if (hi / lo >= 2.0) {
      std::vector<double> cut, sums;
      for (int i = 0; i < kFitSamples; ++i) {
        const double c = lo * std::pow(hi / lo, static_cast<double>(i) / (kFitSamples - 1));
        cut.push_back(c);
        sums.push_back(prefix.at(c));
      }
      GrowthFit lf = fit_log_growth(cut, sums);
      GrowthFit pf = fit_power_growth(cut, sums);
      const GrowthFit& best = pf.r2 > lf.r2 ? pf : lf;
      rep.analysis.growth_fit = best;
      if (best.scale > 0.0 && best.r2 > VerdictRule{}.min_r2) {
        rep.analysis.verdict = Verdict::DivergenceDetected;
      } else {
        rep.analysis.verdict = Verdict::Inconclusive;
      }
    }
  }
}

void check_query(const CriterionQuery& q) { q.validate(); }

}  // namespace

void CriterionQuery::validate() const {
  if (!(r > 0.0 && r <= 1.0)) {
    throw DomainError("r must lie in (0, 1]; for r > 1 the r-nuclear class reduces to the null operator");
  }
  if (!(p1 >= 1.0 && std::isfinite(p1))) throw DomainError("p1 must lie in [1, inf)");
  if (!(p2 >= 1.0 && std::isfinite(p2))) throw DomainError("p2 must lie in [1, inf)");
}

double CriterionQuery::p1_tilde() const { return std::min(2.0, p1); }
double CriterionQuery::p2_tilde() const { return std::max(2.0, p2); }
double CriterionQuery::q1() const { return conjugate_exponent(p1); }
double CriterionQuery::q1_tilde() const { return conjugate_exponent(p1_tilde()); }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ConvergedNumerically:
      return "ConvergedNumerically";
    case Verdict::DivergenceDetected:
      return "DivergenceDetected";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

Schedule geometric_schedule(double first, double last, double factor) {
  if (!(first >= 1.0) || !(last >= first) || !(factor > 1.0)) {
    throw DomainError("geometric schedule needs 1 <= first <= last and factor > 1");
  }
  Schedule s;
  for (double c = first; c < last * (1.0 - 1e-12); c *= factor) s.push_back(c);
  s.push_back(last);
  return s;
}

Schedule schedule_up_to(double cutoff) {
  if (!(cutoff >= 1.0)) throw DomainError("cutoff must be >= 1");
  if (cutoff <= 2.0) return {cutoff};
  return geometric_schedule(2.0, cutoff, 2.0);
}

GrowthFit fit_log_growth(const std::vector<double>& cutoffs, const std::vector<double>& sums) {
  std::vector<double> x;
  for (double c : cutoffs) x.push_back(std::log(c));
  const LinearFit f = linear_fit(x, sums);
  GrowthFit g;
  g.model = "log";
  g.r2 = f.ok ? f.r2 : 0.0;
  g.scale = f.slope;
  g.exponent = 0.0;
  return g;
}

GrowthFit fit_power_growth(const std::vector<double>& cutoffs, const std::vector<double>& sums) {
  auto eval = [&](double beta) {
    std::vector<double> x;
    for (double c : cutoffs) x.push_back(std::pow(c, beta));
    return linear_fit(x, sums);
  };
  GrowthFit best;
  best.model = "power";
  double best_beta = 0.0;
  for (int i = 1; i <= 150; ++i) {
    const double beta = 0.02 * i;
    const LinearFit f = eval(beta);
    if (f.ok && f.r2 > best.r2) {
      best.r2 = f.r2;
      best.scale = f.slope;
      best_beta = beta;
    }
  }
  if (best_beta > 0.0) {
    // Golden-section refinement on [beta - 0.02, beta + 0.02].
    double a = std::max(1e-3, best_beta - 0.02);
    double b = best_beta + 0.02;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 40; ++it) {
      const double c = b - g * (b - a);
      const double d = a + g * (b - a);
      if (eval(c).r2 > eval(d).r2) {
        b = d;
      } else {
        a = c;
      }
    }
    const double beta = 0.5 * (a + b);
    const LinearFit f = eval(beta);
    if (f.ok && f.r2 >= best.r2) {
      best.r2 = f.r2;
      best.scale = f.slope;
      best_beta = beta;
    }
  }
  best.exponent = best_beta;
  return best;
}

std::optional<double> loglog_slope(const std::vector<double>& weights, const std::vector<double>& terms) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < weights.size() && i < terms.size(); ++i) {
    if (terms[i] > 0.0 && weights[i] > 0.0) {
      x.push_back(std::log(weights[i]));
      y.push_back(std::log(terms[i]));
    }
  }
  if (x.size() < 3) return std::nullopt;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  double sxx = 0.0;
  for (double v : x) sxx += (v - mx) * (v - mx);
  if (!(sxx > 0.0)) return std::nullopt;
  return linear_fit(x, y).slope;
}

SeriesAnalysis analyze_series(const std::vector<double>& weights, const std::vector<double>& terms,
                              const Schedule& schedule, const std::vector<double>& partial_sums,
                              int growth_dim, const VerdictRule& rule) {
  SeriesAnalysis a;
  if (partial_sums.empty()) return a;
  const double last = partial_sums.back();
  if (last == 0.0) {
    a.tail_increment_ratio = 0.0;
  } else if (partial_sums.size() >= 2) {
    a.tail_increment_ratio = (last - partial_sums[partial_sums.size() - 2]) / last;
  }
  const double top = schedule.back();
  std::vector<double> w, t;
  for (std::size_t i = 0; i < weights.size() && i < terms.size(); ++i) {
    if (weights[i] >= top / 10.0 && weights[i] <= top * (1.0 + kSlack)) {
      w.push_back(weights[i]);
      t.push_back(terms[i]);
    }
  }
  a.tail_exponent = loglog_slope(w, t);
  const bool small_tail = a.tail_increment_ratio < rule.tail_ratio;
  const bool fast_decay = a.tail_exponent && *a.tail_exponent < -growth_dim - rule.exponent_margin;
  a.verdict = (small_tail || fast_decay) ? Verdict::ConvergedNumerically : Verdict::Inconclusive;
  return a;
}

CriterionReport criterion_invariant_l2(const Symbol& sigma, double r, const Schedule& schedule) {
  CriterionQuery q;
  q.r = r;
  check_query(q);
  if (sigma.x_dependent()) throw DomainError("criterion_invariant_l2 needs an x-independent symbol");
  auto rep = start_report(sigma.group(), q, schedule, "invariant_l2", "sum_xi d_xi ||sigma(xi)||_{S_r}^r");
  rep.branch = "L2";
  rep.notes.push_back("sufficient condition; necessity for invariant operators on L2 is not verified here");
  fill_terms(rep, [&](const Irrep& x) { return x.dim * sigma.block(x).schatten_power(r); });
  finish_report(rep);
  return rep;
}

CriterionReport criterion_invariant_lp(const Symbol& sigma, const CriterionQuery& q, const Schedule& schedule) {
  check_query(q);
  if (sigma.x_dependent()) throw DomainError("criterion_invariant_lp needs an x-independent symbol");
  const double r = q.r;
  const double pt1 = q.p1_tilde();
  if (q.p2 <= 2.0) {
    auto rep = start_report(sigma.group(), q, schedule, "invariant_lp",
                            "sum_xi d^{1+(1/p1~-1/2)r} ||sigma(xi)||_{S_r}^r");
    rep.branch = "p2<=2";
    const double e = 1.0 + (1.0 / pt1 - 0.5) * r;
    fill_terms(rep, [&](const Irrep& x) { return std::pow(static_cast<double>(x.dim), e) * sigma.block(x).schatten_power(r); });
    finish_report(rep);
    return rep;
  }
  auto rep = start_report(sigma.group(), q, schedule, "invariant_lp",
                          "sum_xi d^{1+(1/p1~-1/p2)r} ||sigma(xi)^t||_op^{(p2-2)r/p2} ||sigma(xi)||_{S_{2r/p2}}^{2r/p2}");
  rep.branch = "p2>2";
  const double e = 1.0 + (1.0 / pt1 - 1.0 / q.p2) * r;
  const double op_exp = (q.p2 - 2.0) * r / q.p2;
  const double s_exp = 2.0 * r / q.p2;
  fill_terms(rep, [&](const Irrep& x) {
    const Block b = sigma.block(x);
    const double op = b.opinf_of_transpose();
    const double sp = b.schatten_power(s_exp);
    if (op == 0.0 || sp == 0.0) return 0.0;
    return std::pow(static_cast<double>(x.dim), e) * std::pow(op, op_exp) * sp;
  });
  finish_report(rep);
  return rep;
}

CriterionReport criterion_diagonal(const Symbol& sigma, const CriterionQuery& q, const Schedule& schedule) {
  check_query(q);
  if (sigma.x_dependent()) throw DomainError("criterion_diagonal needs an x-independent diagonal symbol");
  auto rep = start_report(sigma.group(), q, schedule, "diagonal",
                          "sum_xi d^{1+(1/p1~-1/p2~)r} sum_j |sigma(xi)_jj|^r");
  rep.branch = "diagonal";
  const double r = q.r;
  const double e = 1.0 + (1.0 / q.p1_tilde() - 1.0 / q.p2_tilde()) * r;
  fill_terms(rep, [&](const Irrep& x) {
    const Block b = sigma.block(x);
    Eigen::VectorXcd diag;
    if (b.is_diagonal()) {
      diag = b.diagonal_entries();
    } else {
      const Eigen::MatrixXcd m = b.to_dense();
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
          if (i != j && m(i, j) != Complex(0.0)) {
            throw DomainError("criterion_diagonal: symbol block at " + x.label_string() + " is not diagonal");
          }
        }
      }
      diag = m.diagonal();
    }
    if (b.form() == Block::Form::ScalarIdentity) {
      const double a = std::abs(diag(0));
      return a == 0.0 ? 0.0 : std::pow(static_cast<double>(x.dim), e) * x.dim * std::pow(a, r);
    }
    double s = 0.0;
    for (Eigen::Index j = 0; j < diag.size(); ++j) {
      const double a = std::abs(diag(j));
      if (a > 0.0) s += std::pow(a, r);
    }
    return std::pow(static_cast<double>(x.dim), e) * s;
  });
  finish_report(rep);
  return rep;
}

CriterionReport criterion_general(const Symbol& sigma, const CriterionQuery& q, const Schedule& schedule) {
  check_query(q);
  auto rep = start_report(sigma.group(), q, schedule, "general",
                          "sum_xi d^{2+r/p1~} || ||sigma(x,xi)^t||_op ||_{L^p2(x)}^r");
  rep.branch = to_string(sigma.kind());
  const double r = q.r;
  const double e = 2.0 + r / q.p1_tilde();
  double g_norm = 1.0;
  if (sigma.kind() == SymbolKind::Separable) {
    const auto& g = sigma.factor();
    std::vector<double> mod(g.values.size());
    for (std::size_t i = 0; i < mod.size(); ++i) mod[i] = std::abs(g.values[i]);
    g_norm = lp_norm_x(mod, q.p2, *g.rule);
  }
  fill_terms(rep, [&](const Irrep& x) {
    double norm = 0.0;
    switch (sigma.kind()) {
      case SymbolKind::Invariant:
      case SymbolKind::Diagonal:
        norm = sigma.block(x).opinf_of_transpose();
        break;
      case SymbolKind::Separable:
        norm = g_norm * sigma.invariant_factor().block(x).opinf_of_transpose();
        break;
      case SymbolKind::General: {
        const QuadratureRule& rule = *sigma.sample_rule();
        std::vector<double> v(rule.size());
        for (std::size_t n = 0; n < rule.size(); ++n) v[n] = sigma.block_at(n, x).opinf_of_transpose();
        norm = lp_norm_x(v, q.p2, rule);
        break;
      }
    }
    if (norm == 0.0) return 0.0;
    return std::pow(static_cast<double>(x.dim), e) * std::pow(norm, r);
  });
  finish_report(rep);
  return rep;
}

CriterionReport dim_sum_convergence(const GroupId& group, double s, const Schedule& schedule) {
  if (!(s > 0.0)) throw DomainError("dim_sum_convergence needs s > 0");
  CriterionQuery q;
  auto rep = start_report(group, q, schedule, "dim_sum", "sum_xi d_xi^2 <xi>^{-s}");
  rep.branch = "s=" + fmt(s);
  rep.equivalence = true;
  fill_terms(rep, [&](const Irrep& x) { return static_cast<double>(x.dim) * x.dim * std::pow(x.weight, -s); });
  finish_report(rep);
  return rep;
}

CriterionReport matching_criterion(const Symbol& sigma, const CriterionQuery& q, const Schedule& schedule) {
  switch (sigma.kind()) {
    case SymbolKind::Invariant:
      if (q.p1 == 2.0 && q.p2 == 2.0) return criterion_invariant_l2(sigma, q.r, schedule);
      return criterion_invariant_lp(sigma, q, schedule);
    case SymbolKind::Diagonal:
      return criterion_diagonal(sigma, q, schedule);
    case SymbolKind::Separable:
    case SymbolKind::General:
      return criterion_general(sigma, q, schedule);
  }
  return criterion_general(sigma, q, schedule);
}

namespace {

double finish_norm(double acc, double p) {
  if (std::isinf(p)) return acc;
  return acc <= 0.0 ? 0.0 : std::pow(acc, 1.0 / p);
}

double accumulate_power(double v, double p) {
  if (v == 0.0) return 0.0;
  if (p == 2.0) return v * v;
  return std::pow(v, p);
}

}  // namespace

double nr_upper_bound(const Symbol& sigma, const CriterionQuery& q, double cutoff) {
  check_query(q);
  if (cutoff > sigma.cutoff() * (1.0 + kSlack)) throw DomainError("cutoff exceeds the symbol cutoff");
  const CriterionReport crit = matching_criterion(sigma, q, schedule_up_to(cutoff));
  if (crit.verdict() == Verdict::DivergenceDetected) {
    throw DivergenceRefused("nr_upper_bound refused: the " + crit.criterion + " series diverges at cutoff " + fmt(cutoff));
  }
  const GroupId& group = sigma.group();
  const auto irreps = enumerate_dual(group, cutoff);
  const double p2 = q.p2;
  const double q1 = q.q1();
  const double r = q.r;
  std::vector<double> contrib(irreps.size(), 0.0);

  if (group.kind() == GroupKind::Torus) {
    // |xi| = 1, so ||h||_{L^q} = 1 and ||g||_{L^p} = ||sigma(., k)||_{L^p}.
    parallel_for(irreps.size(), [&](std::size_t k) {
      double norm = 0.0;
      if (!sigma.x_dependent()) {
        norm = std::abs(sigma.block(irreps[k]).to_dense()(0, 0));
      } else {
        const QuadratureRule& rule = *sigma.sample_rule();
        std::vector<double> v(rule.size());
        for (std::size_t n = 0; n < rule.size(); ++n) v[n] = std::abs(sigma.block_at(n, irreps[k]).to_dense()(0, 0));
        norm = lp_norm_x(v, p2, rule);
      }
      contrib[k] = norm == 0.0 ? 0.0 : std::pow(norm, r);
    });
  } else if (!sigma.x_dependent() && p2 == 2.0 && q1 == 2.0) {
    // Orthogonality of matrix coefficients: ||g_ij||_2 = sqrt(d) |sigma e_j|
    // and ||h_ij||_2 = 1/sqrt(d), so no quadrature is needed.
    parallel_for(irreps.size(), [&](std::size_t k) {
      const Irrep& x = irreps[k];
      const Block b = sigma.block(x);
      double s = 0.0;
      if (b.is_diagonal()) {
        const Eigen::VectorXcd e = b.diagonal_entries();
        for (Eigen::Index j = 0; j < e.size(); ++j) {
          if (e[j] != Complex(0.0)) s += std::pow(std::abs(e[j]), r);
        }
      } else {
        const Eigen::MatrixXcd m = b.to_dense();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
          const double c = m.col(j).norm();
          if (c > 0.0) s += std::pow(c, r);
        }
      }
      contrib[k] = x.dim * s;
    });
  } else {
    double max_level = 0.0;
    for (const auto& x : irreps) max_level = std::max(max_level, x.level());
    RulePtr rule;
    if (sigma.x_dependent()) {
      rule = sigma.sample_rule();
    } else {
      // |.|^2 integrands are exact at the max level; other powers get headroom.
      const bool exact = p2 == 2.0 && q1 == 2.0;
      rule = quadrature(group, exact ? max_level : max_level + 2.0);
    }
    parallel_for(irreps.size(), [&](std::size_t k) {
      const Irrep& x = irreps[k];
      const int d = x.dim;
      std::vector<double> g_acc(static_cast<std::size_t>(d) * d, 0.0);
      std::vector<double> h_acc(static_cast<std::size_t>(d) * d, 0.0);
      const Block fixed = sigma.x_dependent() ? Block() : sigma.block(x);
      for_each_rep_sample(*rule, x, [&](std::size_t node, const Eigen::MatrixXcd& xi) {
        const double w = rule->weight(node);
        const Block b = sigma.x_dependent() ? sigma.block_at(node, x) : fixed;
        Eigen::MatrixXcd g;
        if (b.form() == Block::Form::Dense) {
          g = xi * b.to_dense();
        } else {
          g = xi * b.diagonal_entries().asDiagonal();
        }
        for (int j = 0; j < d; ++j) {
          for (int i = 0; i < d; ++i) {
            const std::size_t idx = static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * d;
            g_acc[idx] += w * accumulate_power(d * std::abs(g(i, j)), p2);
            const double h = std::abs(xi(i, j));
            if (std::isinf(q1)) {
              h_acc[idx] = std::max(h_acc[idx], h);
            } else {
              h_acc[idx] += w * accumulate_power(h, q1);
            }
          }
        }
      });
      double s = 0.0;
      for (std::size_t idx = 0; idx < g_acc.size(); ++idx) {
        const double prod = finish_norm(g_acc[idx], p2) * finish_norm(h_acc[idx], q1);
        if (prod > 0.0) s += std::pow(prod, r);
      }
      contrib[k] = s;
    });
  }
  double total = 0.0;
  for (double c : contrib) total += c;
  return total <= 0.0 ? 0.0 : std::pow(total, 1.0 / r);
}

}  // namespace lienuc
