#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "lienuc/catalog.hpp"
#include "lienuc/errors.hpp"
#include "lienuc/quantize.hpp"

using namespace lienuc;

TEST_CASE("torus multipliers act on exponentials") {
  const GroupId t1 = GroupId::torus(1);
  const double cutoff = cutoff_for_level(t1, 4.0);
  const Symbol heat = heat_symbol(t1, 0.01, cutoff);
  const auto rule = quadrature(t1, 4.0);
  for (int k : {-3, 0, 2}) {
    auto e = GridFunction::sample(rule, [&](const GroupPoint& x) { return std::exp(Complex(0, 2 * std::numbers::pi * k * x.c[0])); }, std::abs(k));
    const GridFunction out = apply_op(heat, e);
    const double factor = std::exp(-0.01 * 4 * std::numbers::pi * std::numbers::pi * k * k);
    for (std::size_t i = 0; i < e.values.size(); ++i) CHECK(std::abs(out.values[i] - factor * e.values[i]) < 1e-13);
  }
}

TEST_CASE("identity kernel on the circle is the Dirichlet kernel") {
  const GroupId t1 = GroupId::torus(1);
  const int k = 6;
  const Symbol id = identity_symbol(t1, cutoff_for_level(t1, k));
  GroupPoint x, y;
  x.c = {0.3, 0, 0};
  CHECK(std::abs(kernel_eval(id, x, x) - double(2 * k + 1)) < 1e-12);
  y.c = {0.55, 0, 0};
  const double u = x.c[0] - y.c[0];
  const double dirichlet = std::sin((2 * k + 1) * std::numbers::pi * u) / std::sin(std::numbers::pi * u);
  CHECK(std::abs(kernel_eval(id, x, y) - dirichlet) < 1e-12);
}

TEST_CASE("kernel integrates to the operator") {
  const GroupId g = GroupId::su2();
  const double cutoff = cutoff_for_level(g, 2.0);
  const Symbol sigma = random_hermitian_symbol(g, 3, cutoff);
  const auto rule = quadrature(g, 2.0);
  auto f = GridFunction::sample(rule, [](const GroupPoint& p) { return Complex(std::cos(p.c[1]), std::sin(p.c[0]) * std::sin(p.c[1])); }, 1.0);
  const GridFunction af = apply_op(sigma, f);
  for (std::size_t node : {0ul, 41ul, 97ul}) {
    Complex v = 0;
    for (std::size_t j = 0; j < rule->size(); ++j) v += rule->weight(j) * kernel_eval(sigma, rule->node(node), rule->node(j)) * f.values[j];
    CHECK(std::abs(v - af.values[node]) < 1e-11);
  }
}

TEST_CASE("symbol recovery at arbitrary points") {
  const GroupId g = GroupId::su2();
  const double cutoff = cutoff_for_level(g, 2.0);
  const Symbol sep = separable_demo_symbol(g, 1.0, 0.5, cutoff);
  const LinearMap a = [&](const GridFunction& f) { return apply_op(sep, f); };
  for (const auto& x : enumerate_dual(g, cutoff)) {
    GroupPoint p;
    p.c = {1.3, 0.77, 5.1};
    const Eigen::MatrixXcd got = extract_symbol(a, sep.sample_rule(), x, p);
    const double gx = 1.0 + 0.5 * std::cos(p.c[1]);
    const double want = gx * std::exp(-x.lambda_sq);
    CHECK((got - want * Eigen::MatrixXcd::Identity(x.dim, x.dim)).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("assembled matrix matches the operator on basis functions") {
  const GroupId g = GroupId::su2();
  const double cutoff = cutoff_for_level(g, 1.5);
  const Symbol sep = separable_demo_symbol(g, 0.5, 0.7, cutoff);
  const TruncatedOperator op = assemble_matrix(sep, cutoff);
  const auto rule = sep.sample_rule();
  REQUIRE(op.size() == 1 + 4 + 9 + 16);
  CHECK(op.warnings.empty());
  // Basis functions sqrt(d) xi_ij, irreps in dual order, i fastest.
  std::vector<GridFunction> basis;
  for (const auto& x : op.irreps) {
    for (int j = 0; j < x.dim; ++j) {
      for (int i = 0; i < x.dim; ++i) {
        basis.push_back(GridFunction::sample(rule, [&](const GroupPoint& p) { return std::sqrt(double(x.dim)) * rep_eval(x, p)(i, j); }, x.level()));
      }
    }
  }
  double worst = 0;
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const GridFunction ab = apply_op(sep, basis[b]);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      Complex v = 0;
      for (std::size_t n = 0; n < rule->size(); ++n) v += rule->weight(n) * std::conj(basis[a].values[n]) * ab.values[n];
      worst = std::max(worst, std::abs(v - op.matrix(Eigen::Index(a), Eigen::Index(b))));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("invariant symbols assemble to block-diagonal matrices") {
  const GroupId g = GroupId::so3();
  const double cutoff = cutoff_for_level(g, 2.0);
  const TruncatedOperator op = assemble_matrix(heat_symbol(g, 0.3, cutoff), cutoff);
  REQUIRE(op.size() == 1 + 9 + 25);
  Eigen::VectorXcd want(op.size());
  Eigen::Index k = 0;
  for (const auto& x : op.irreps) {
    for (int n = 0; n < x.dim * x.dim; ++n) want[k++] = std::exp(-0.3 * x.lambda_sq);
  }
  CHECK((op.matrix - Eigen::MatrixXcd(want.asDiagonal())).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("domain checks") {
  const GroupId g = GroupId::su2();
  const Symbol sep = separable_demo_symbol(g, 1.0, 0.5, 3.0);
  auto f = GridFunction::sample(quadrature(g, 1.0), [](const GroupPoint&) { return Complex(1.0); }, 0.0);
  CHECK_THROWS_AS(apply_op(sep, f), DomainError);
}
