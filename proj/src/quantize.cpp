#include "lienuc/quantize.hpp"

#include <cmath>
#include <sstream>

#include "lienuc/errors.hpp"
#include "lienuc/parallel.hpp"

namespace lienuc {

namespace {

void require_same_rule(const Symbol& sigma, const QuadratureRule& rule) {
  if (sigma.x_dependent() && !sigma.sample_rule()->same_as(rule)) {
    throw DomainError("symbol '" + sigma.name() + "' is sampled on a different quadrature rule");
  }
}

std::size_t node_of(const QuadratureRule& rule, const GroupPoint& x) {
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto& c = rule.node(i).c;
    if (std::abs(c[0] - x.c[0]) < 1e-14 && std::abs(c[1] - x.c[1]) < 1e-14 &&
        std::abs(c[2] - x.c[2]) < 1e-14) {
      return i;
    }
  }
  throw DomainError("x-dependent symbols can only be evaluated at their sample nodes");
}

// d * sum_ij xi_ij m_ji
Complex weighted_trace(const Eigen::MatrixXcd& samples, Eigen::Index node, const Eigen::MatrixXcd& m, int d) {
  Complex acc = 0.0;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) acc += samples(i + j * d, node) * m(j, i);
  }
  return static_cast<double>(d) * acc;
}

}  // namespace

GridFunction apply_op(const Symbol& sigma, const GridFunction& f) {
  if (!(f.rule->group() == sigma.group())) throw DomainError("function and symbol on different groups");
  require_same_rule(sigma, *f.rule);
  return apply_op(sigma, forward_ft(f, sigma.cutoff()), f.rule);
}

GridFunction apply_op(const Symbol& sigma, const FourierCoefficients& coeffs, RulePtr rule) {
  if (!(coeffs.group == sigma.group()) || !(rule->group() == sigma.group())) {
    throw DomainError("coefficients, rule and symbol must share a group");
  }
  if (coeffs.cutoff > sigma.cutoff() * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "cutoff mismatch: coefficients reach " << coeffs.cutoff << " but the symbol stops at "
       << sigma.cutoff();
    throw DomainError(os.str());
  }
  if (!sigma.x_dependent()) {
    FourierCoefficients mapped = coeffs;
    for (std::size_t k = 0; k < mapped.irreps.size(); ++k) {
      const Block b = sigma.block(mapped.irreps[k]);
      if (b.form() == Block::Form::Dense) {
        mapped.blocks[k] = b.to_dense() * coeffs.blocks[k];
      } else {
        mapped.blocks[k] = b.diagonal_entries().asDiagonal() * coeffs.blocks[k];
      }
    }
    return inverse_ft(mapped, std::move(rule));
  }
  require_same_rule(sigma, *rule);
  const std::size_t n = coeffs.irreps.size();
  std::vector<std::vector<Complex>> parts(n);
  parallel_for(n, [&](std::size_t k) {
    const Irrep& irrep = coeffs.irreps[k];
    const Eigen::MatrixXcd samples = rep_samples(*rule, irrep);
    auto& out = parts[k];
    out.resize(rule->size());
    for (std::size_t node = 0; node < rule->size(); ++node) {
      const Eigen::MatrixXcd m = sigma.block_at(node, irrep).to_dense() * coeffs.blocks[k];
      out[node] = weighted_trace(samples, static_cast<Eigen::Index>(node), m, irrep.dim);
    }
  });
  GridFunction g;
  g.values.assign(rule->size(), Complex(0.0));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < rule->size(); ++i) g.values[i] += parts[k][i];
  }
  g.rule = std::move(rule);
  return g;
}

Complex kernel_eval(const Symbol& sigma, const GroupPoint& x, const GroupPoint& y) {
  if (sigma.x_dependent()) return kernel_eval(sigma, node_of(*sigma.sample_rule(), x), y);
  validate_point(sigma.group(), x);
  validate_point(sigma.group(), y);
  Complex acc = 0.0;
  for (const Irrep& irrep : enumerate_dual(sigma.group(), sigma.cutoff())) {
    const Eigen::MatrixXcd xi_x = rep_eval(irrep, x);
    const Eigen::MatrixXcd xi_y = rep_eval(irrep, y);
    acc += static_cast<double>(irrep.dim) * (xi_x * sigma.block(irrep).to_dense() * xi_y.adjoint()).trace();
  }
  return acc;
}

Complex kernel_eval(const Symbol& sigma, std::size_t x_node, const GroupPoint& y) {
  validate_point(sigma.group(), y);
  GroupPoint x;
  if (sigma.x_dependent()) {
    if (x_node >= sigma.sample_rule()->size()) throw DomainError("node index out of range");
    x = sigma.sample_rule()->node(x_node);
  } else {
    throw DomainError("x-independent symbols take a point, not a node index");
  }
  Complex acc = 0.0;
  for (const Irrep& irrep : enumerate_dual(sigma.group(), sigma.cutoff())) {
    const Eigen::MatrixXcd xi_x = rep_eval(irrep, x);
    const Eigen::MatrixXcd xi_y = rep_eval(irrep, y);
    acc += static_cast<double>(irrep.dim) *
           (xi_x * sigma.block_at(x_node, irrep).to_dense() * xi_y.adjoint()).trace();
  }
  return acc;
}

namespace {

// (A xi_ij) sampled on the rule, one grid function per (i, j), i fastest.
std::vector<GridFunction> apply_to_coefficients(const LinearMap& a, const RulePtr& rule, const Irrep& irrep) {
  const int d = irrep.dim;
  const Eigen::MatrixXcd samples = rep_samples(*rule, irrep);
  std::vector<GridFunction> out;
  out.reserve(static_cast<std::size_t>(d) * d);
  for (int idx = 0; idx < d * d; ++idx) {
    GridFunction e;
    e.rule = rule;
    e.band_limit = irrep.level();
    e.values.resize(rule->size());
    for (std::size_t n = 0; n < rule->size(); ++n) e.values[n] = samples(idx, static_cast<Eigen::Index>(n));
    GridFunction image = a(e);
    if (image.values.size() != rule->size()) throw DomainError("operator changed the sampling rule");
    for (std::size_t n = 0; n < image.values.size(); ++n) {
      if (!std::isfinite(image.values[n].real()) || !std::isfinite(image.values[n].imag())) {
        throw NumericError("operator returned a non-finite value at node " + std::to_string(n), n);
      }
    }
    out.push_back(std::move(image));
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd extract_symbol(const LinearMap& a, const RulePtr& rule, const Irrep& irrep, std::size_t x_node) {
  const std::size_t nodes[] = {x_node};
  return extract_symbol(a, rule, irrep, std::span<const std::size_t>(nodes)).front();
}

std::vector<Eigen::MatrixXcd> extract_symbol(const LinearMap& a, const RulePtr& rule, const Irrep& irrep,
                                             std::span<const std::size_t> x_nodes) {
  for (std::size_t node : x_nodes) {
    if (node >= rule->size()) throw DomainError("node index out of range");
  }
  const int d = irrep.dim;
  const auto images = apply_to_coefficients(a, rule, irrep);
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(x_nodes.size());
  for (std::size_t node : x_nodes) {
    Eigen::MatrixXcd a_xi(d, d);
    for (int j = 0; j < d; ++j) {
      for (int i = 0; i < d; ++i) a_xi(i, j) = images[i + j * d].values[node];
    }
    out.push_back(rep_eval(irrep, rule->node(node)).adjoint() * a_xi);
  }
  return out;
}

Eigen::MatrixXcd extract_symbol(const LinearMap& a, const RulePtr& rule, const Irrep& irrep, const GroupPoint& x) {
  validate_point(rule->group(), x);
  const int d = irrep.dim;
  const auto images = apply_to_coefficients(a, rule, irrep);
  const double cutoff = cutoff_for_level(rule->group(), rule->level());
  Eigen::MatrixXcd a_xi(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) a_xi(i, j) = inverse_ft(forward_ft(images[i + j * d], cutoff), x);
  }
  return rep_eval(irrep, x).adjoint() * a_xi;
}

TruncatedOperator assemble_matrix(const Symbol& sigma, double cutoff) {
  if (cutoff > sigma.cutoff() * (1.0 + 1e-12)) {
    throw DomainError("assembly cutoff exceeds the symbol cutoff");
  }
  TruncatedOperator op;
  op.group = sigma.group();
  op.cutoff = cutoff;
  op.irreps = enumerate_dual(sigma.group(), cutoff);
  std::size_t n = 0;
  double max_level = 0.0;
  for (std::size_t k = 0; k < op.irreps.size(); ++k) {
    const int d = op.irreps[k].dim;
    op.offsets.push_back(n);
    for (int j = 0; j < d; ++j) {
      for (int i = 0; i < d; ++i) op.basis.push_back({k, i, j});
    }
    n += static_cast<std::size_t>(d) * d;
    max_level = std::max(max_level, op.irreps[k].level());
  }
  const auto N = static_cast<Eigen::Index>(n);
  op.matrix = Eigen::MatrixXcd::Zero(N, N);

  if (!sigma.x_dependent()) {
    // Op(sigma) (sqrt(d) xi_ij) = sum_k sigma_kj sqrt(d) xi_ik: sigma kron I_d.
    for (std::size_t k = 0; k < op.irreps.size(); ++k) {
      const int d = op.irreps[k].dim;
      const Eigen::MatrixXcd s = sigma.block(op.irreps[k]).to_dense();
      const auto off = static_cast<Eigen::Index>(op.offsets[k]);
      for (int col_j = 0; col_j < d; ++col_j) {
        for (int row_k = 0; row_k < d; ++row_k) {
          if (s(row_k, col_j) == Complex(0.0)) continue;
          for (int i = 0; i < d; ++i) op.matrix(off + i + row_k * d, off + i + col_j * d) = s(row_k, col_j);
        }
      }
    }
    return op;
  }

  const QuadratureRule& rule = *sigma.sample_rule();
  // Integrands are xi' * sigma * xi; without a declared x-band assume sigma
  // is no rougher than the basis itself.
  const double band = sigma.kind() == SymbolKind::Separable && sigma.factor().band_limit
                          ? *sigma.factor().band_limit
                          : max_level;
  if (2.0 * rule.level() < 2.0 * max_level + band) {
    std::ostringstream os;
    os << "exactness shortfall: rule level " << rule.level() << " below " << max_level + 0.5 * band;
    op.warnings.push_back(os.str());
  }
  const auto nodes = static_cast<Eigen::Index>(rule.size());
  // basis(row, node) = sqrt(d) xi_ij(node); image(node, col) = w * sqrt(d) (xi sigma)_ij(node).
  Eigen::MatrixXcd basis(N, nodes);
  Eigen::MatrixXcd image(nodes, N);
  parallel_for(op.irreps.size(), [&](std::size_t k) {
    const Irrep& irrep = op.irreps[k];
    const int d = irrep.dim;
    const double sd = std::sqrt(static_cast<double>(d));
    const auto off = static_cast<Eigen::Index>(op.offsets[k]);
    const Eigen::MatrixXcd samples = rep_samples(rule, irrep);
    basis.middleRows(off, d * d) = sd * samples;
    for (Eigen::Index node = 0; node < nodes; ++node) {
      const Eigen::MatrixXcd xi = samples.col(node).reshaped(d, d);
      const Eigen::MatrixXcd prod = xi * sigma.block_at(static_cast<std::size_t>(node), irrep).to_dense();
      const double w = rule.weight(static_cast<std::size_t>(node)) * sd;
      image.row(node).segment(off, d * d) = w * prod.reshaped(1, d * d);
    }
  });
  // Fixed column chunks keep every GEMM shape independent of thread count.
  constexpr Eigen::Index kChunk = 32;
  const Eigen::MatrixXcd basis_conj = basis.conjugate();
  const auto chunks = static_cast<std::size_t>((N + kChunk - 1) / kChunk);
  parallel_for(chunks, [&](std::size_t c) {
    const Eigen::Index c0 = static_cast<Eigen::Index>(c) * kChunk;
    const Eigen::Index nc = std::min(kChunk, N - c0);
    op.matrix.middleCols(c0, nc).noalias() = basis_conj * image.middleCols(c0, nc);
  });
  return op;
}

}  // namespace lienuc
