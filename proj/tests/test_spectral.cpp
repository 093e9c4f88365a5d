#include <cmath>
#include <numbers>

#include <doctest.h>

#include "lienuc/catalog.hpp"
#include "lienuc/errors.hpp"
#include "lienuc/spectral.hpp"

using namespace lienuc;

TEST_CASE("heat eigenvalues on SU(2) up to l = 1") {
  const GroupId g = GroupId::su2();
  const double c = cutoff_for_level(g, 1.0);
  const auto eigs = eigenvalues_truncated(assemble_matrix(heat_symbol(g, 1.0, c), c));
  REQUIRE(eigs.size() == 14);
  std::vector<double> want(9, std::exp(-2.0));
  want.insert(want.begin(), 4, std::exp(-0.75));
  want.insert(want.begin(), 1.0);
  for (std::size_t i = 0; i < 14; ++i) CHECK(eigs[i].real() == doctest::Approx(want[i]).epsilon(1e-14));
}

TEST_CASE("multiplier eigenvalues repeat d times") {
  const GroupId g = GroupId::so3();
  const Irrep x = make_spin_irrep(GroupKind::SO3, 2);
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(3, 3);
  b.diagonal() << 2.0, 3.0, 5.0;
  const double c = cutoff_for_level(g, 1.0);
  const auto eigs = eigenvalues_truncated(assemble_matrix(multiplier_from_sequence(g, c, {{x, b}}), c));
  const std::vector<Complex> want{5, 5, 5, 3, 3, 3, 2, 2, 2, 0};
  REQUIRE(eigs.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(eigs[i] - want[i]) < 1e-14);
}

TEST_CASE("traces of separable symbols") {
  const GroupId g = GroupId::su2();
  const double c = cutoff_for_level(g, 3.0);
  const Symbol heat = heat_symbol(g, 1.0, c);
  const Symbol demo = separable_demo_symbol(g, 1.0, 0.5, c);
  // int g = 1, so the trace is the heat trace.
  CHECK(std::abs(trace_symbol(demo, c) - trace_symbol(heat, c)) < 1e-12);
  const auto rule = quadrature(g, 4.0);
  const Symbol odd = separable_symbol(GridFunction::sample(rule, [](const GroupPoint& p) { return Complex(std::cos(p.c[1])); }, 1.0), heat);
  CHECK(std::abs(trace_symbol(odd, c)) < 1e-13);
  CHECK(std::abs(trace_kernel_diagonal(odd, *rule, c)) < 1e-12);
  CHECK(trace_symbol(heat, c).real() == doctest::Approx(heat_trace(g, 1.0, c).value).epsilon(1e-14));
}

TEST_CASE("divergent traces are refused") {
  const GroupId t1 = GroupId::torus(1);
  const double c = cutoff_for_level(t1, 4096);
  CHECK_THROWS_AS(trace_symbol(identity_symbol(t1, c), c), DivergenceRefused);
}

TEST_CASE("Lidskii hypothesis gate") {
  CHECK(!lidskii_hypothesis(0.8, 2.0).accepted);
  CHECK(lidskii_hypothesis(0.8, 4.0).accepted);
  CHECK(lidskii_hypothesis(0.8, 4.0 / 3.0).accepted);
  CHECK(!lidskii_hypothesis(0.8, 3.0).accepted);
  CHECK(lidskii_hypothesis(1.0, 2.0).accepted);
  CHECK(lidskii_hypothesis(0.5, 7.0).regime == "r<=2/3");
  CHECK(lidskii_hypothesis(2.0 / 3.0, 1.0).accepted);
  CHECK(lidskii_hypothesis(0.8, 4.0).regime == "1/r=1+|1/2-1/p|");
}

TEST_CASE("Lidskii verification") {
  const GroupId g = GroupId::su2();
  const double c = cutoff_for_level(g, 2.0);
  const Symbol demo = separable_demo_symbol(g, 1.0, 0.5, c);
  const auto ok = lidskii_verify(demo, {2.0 / 3.0, 4.0, 4.0}, c);
  CHECK(!ok.refused);
  CHECK(ok.lidskii_residual < 1e-10);
  CHECK(ok.kernel_residual < 1e-10);
  CHECK(std::abs(ok.trace_eigsum - ok.matrix_trace) < 1e-12);
  CHECK(lidskii_verify(demo, {0.8, 2.0, 2.0}, c).refused);
  CHECK(lidskii_verify(demo, {2.0 / 3.0, 2.0, 4.0}, c).refused);
}

TEST_CASE("summability exponent and check") {
  const std::vector<Complex> e{3.0, Complex(0, 4.0)};
  const Summability s1 = summability_check(e, 1.0, 5.0);
  CHECK(s1.s == 2.0);
  CHECK(s1.value == doctest::Approx(25.0));
  CHECK(s1.pass);
  const Summability s23 = summability_check(e, 2.0 / 3.0, 6.9);
  CHECK(s23.s == doctest::Approx(1.0));
  CHECK(!s23.pass);
}

TEST_CASE("heat trace tail bounds") {
  for (const char* name : {"su2", "so3", "t1", "t2"}) {
    const GroupId g = GroupId::parse(name);
    const double t = 0.05;
    const HeatTrace lo = heat_trace(g, t, 20.0);
    const HeatTrace hi = heat_trace(g, t, 400.0);
    CHECK(lo.value <= hi.value);
    CHECK(hi.value <= lo.value + lo.tail_bound + 1e-14 * hi.value);
  }
  // Poisson summation on T^2 factorizes.
  const double t = 0.02;
  const double one = heat_trace(GroupId::torus(1), t, 400).value;
  CHECK(heat_trace(GroupId::torus(2), t, 400).value == doctest::Approx(one * one).epsilon(1e-12));
}
