#include "lienuc/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lienuc/errors.hpp"

namespace lienuc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <typename T>
T pairwise(std::span<const T> v) {
  if (v.size() <= 32) {
    T acc{};
    for (const T& x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return pairwise(v.first(half)) + pairwise(v.subspan(half));
}

std::vector<double> uniform_axis(int m, double period) {
  std::vector<double> a(m);
  for (int i = 0; i < m; ++i) a[i] = period * i / m;
  return a;
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1) throw DomainError("Gauss-Legendre needs at least one node");
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p1 = 1.0;
    double p2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

QuadratureRule::QuadratureRule(const GroupId& group, double level) : group_(group), level_(0.0) {
  if (!(level >= 0.0) || !std::isfinite(level)) {
    throw DomainError("quadrature level must be >= 0");
  }
  if (group.kind() == GroupKind::Torus) {
    const int lv = static_cast<int>(std::ceil(level - 1e-12));
    level_ = lv;
    const int m = 2 * lv + 2;
    const int n = group.torus_rank();
    axes_.assign(n, uniform_axis(m, 1.0));
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= m;
    nodes_.resize(total);
    weights_.assign(total, 1.0 / static_cast<double>(total));
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rem = idx;
      for (int axis = n - 1; axis >= 0; --axis) {
        nodes_[idx].c[axis] = axes_[axis][rem % m];
        rem /= m;
      }
    }
    return;
  }
  const int twice_level = static_cast<int>(std::ceil(2.0 * level - 1e-12));
  level_ = 0.5 * twice_level;
  const int m_alpha = 2 * twice_level + 2;
  const int m_gamma = m_alpha;
  const int m_beta = twice_level + 2;
  const double gamma_period = group.kind() == GroupKind::SU2 ? 2.0 * kTwoPi : kTwoPi;
  std::vector<double> gx, gw;
  gauss_legendre(m_beta, gx, gw);
  std::vector<double> betas(m_beta);
  for (int i = 0; i < m_beta; ++i) betas[i] = std::acos(gx[i]);
  axes_ = {uniform_axis(m_alpha, kTwoPi), betas, uniform_axis(m_gamma, gamma_period)};
  const std::size_t total = static_cast<std::size_t>(m_alpha) * m_beta * m_gamma;
  nodes_.resize(total);
  weights_.resize(total);
  std::size_t idx = 0;
  for (int ia = 0; ia < m_alpha; ++ia) {
    for (int ib = 0; ib < m_beta; ++ib) {
      for (int ig = 0; ig < m_gamma; ++ig, ++idx) {
        nodes_[idx].c = {axes_[0][ia], betas[ib], axes_[2][ig]};
        weights_[idx] = 0.5 * gw[ib] / (static_cast<double>(m_alpha) * m_gamma);
      }
    }
  }
}

RulePtr quadrature(const GroupId& group, double level) {
  return std::make_shared<const QuadratureRule>(group, level);
}

Complex pairwise_sum(std::span<const Complex> v) { return pairwise(v); }
double pairwise_sum(std::span<const double> v) { return pairwise(v); }

Complex integrate_values(const QuadratureRule& rule, std::span<const Complex> values) {
  if (values.size() != rule.size()) throw DomainError("value count does not match rule size");
  std::vector<Complex> weighted(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag())) {
      throw NumericError("non-finite integrand at node " + std::to_string(i), i);
    }
    weighted[i] = rule.weight(i) * values[i];
  }
  return pairwise_sum(std::span<const Complex>(weighted));
}

double integrate_values(const QuadratureRule& rule, std::span<const double> values) {
  if (values.size() != rule.size()) throw DomainError("value count does not match rule size");
  std::vector<double> weighted(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw NumericError("non-finite integrand at node " + std::to_string(i), i);
    }
    weighted[i] = rule.weight(i) * values[i];
  }
  return pairwise_sum(std::span<const double>(weighted));
}

Complex integrate(const QuadratureRule& rule, const std::function<Complex(const GroupPoint&)>& f) {
  std::vector<Complex> values(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) values[i] = f(rule.node(i));
  return integrate_values(rule, values);
}

void for_each_rep_sample(const QuadratureRule& rule, const Irrep& irrep,
                         const std::function<void(std::size_t, const Eigen::MatrixXcd&)>& visit) {
  if (irrep.kind != rule.group().kind()) throw DomainError("irrep and rule belong to different groups");
  if (irrep.kind == GroupKind::Torus) {
    Eigen::MatrixXcd m(1, 1);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      m = rep_eval(irrep, rule.node(i));
      visit(i, m);
    }
    return;
  }
  const auto& axes = rule.axes();
  const int d = irrep.dim;
  const double l = irrep.ell();
  std::vector<Eigen::MatrixXd> small;
  small.reserve(axes[1].size());
  for (double beta : axes[1]) small.push_back(wigner_small_d(irrep.twice_l, beta));
  std::vector<Complex> left(d), right(d);
  Eigen::MatrixXcd m(d, d);
  std::size_t idx = 0;
  for (double alpha : axes[0]) {
    for (int i = 0; i < d; ++i) left[i] = std::polar(1.0, -(l - i) * alpha);
    for (const auto& dm : small) {
      for (double gamma : axes[2]) {
        for (int j = 0; j < d; ++j) right[j] = std::polar(1.0, -(l - j) * gamma);
        for (int j = 0; j < d; ++j) {
          for (int i = 0; i < d; ++i) m(i, j) = left[i] * dm(i, j) * right[j];
        }
        visit(idx++, m);
      }
    }
  }
}

Eigen::MatrixXcd rep_samples(const QuadratureRule& rule, const Irrep& irrep) {
  const int d = irrep.dim;
  Eigen::MatrixXcd out(d * d, static_cast<Eigen::Index>(rule.size()));
  for_each_rep_sample(rule, irrep, [&](std::size_t node, const Eigen::MatrixXcd& m) {
    out.col(static_cast<Eigen::Index>(node)) = m.reshaped();
  });
  return out;
}

}  // namespace lienuc
