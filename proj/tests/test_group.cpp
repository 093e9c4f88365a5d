#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "lienuc/errors.hpp"
#include "lienuc/group.hpp"

using namespace lienuc;

namespace {

GroupPoint random_point(const GroupId& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GroupPoint x;
  if (g.kind() == GroupKind::Torus) {
    for (int i = 0; i < g.torus_rank(); ++i) x.c[i] = u(rng);
  } else {
    x.c = {2 * std::numbers::pi * u(rng), std::numbers::pi * u(rng),
           (g.kind() == GroupKind::SU2 ? 4 : 2) * std::numbers::pi * u(rng)};
  }
  return x;
}

}  // namespace

TEST_CASE("parse and dimensions") {
  CHECK(GroupId::parse("SU2") == GroupId::su2());
  CHECK(GroupId::parse("t3").dim() == 3);
  CHECK(GroupId::so3().dim() == 3);
  CHECK(GroupId::torus(2).dual_growth_dim() == 2);
  CHECK(GroupId::su2().dual_growth_dim() == 1);
  CHECK_THROWS_AS(GroupId::parse("su7"), DomainError);
  CHECK_THROWS_AS(GroupId::torus(4), DomainError);
}

TEST_CASE("irrep labels, dimensions and Laplacian eigenvalues") {
  const Irrep h = make_spin_irrep(GroupKind::SU2, 3);
  CHECK(h.dim == 4);
  CHECK(h.lambda_sq == doctest::Approx(1.5 * 2.5));
  CHECK(h.weight == doctest::Approx(std::sqrt(1 + 3.75)));
  const Irrep k = make_torus_irrep({1, -2});
  CHECK(k.dim == 1);
  CHECK(k.lambda_sq == doctest::Approx(4 * std::numbers::pi * std::numbers::pi * 5));
  CHECK_THROWS_AS(make_spin_irrep(GroupKind::SO3, 1), DomainError);
}

TEST_CASE("dual enumeration counts and order") {
  CHECK(enumerate_dual(GroupId::su2(), cutoff_for_level(GroupId::su2(), 5)).size() == 11);
  CHECK(enumerate_dual(GroupId::so3(), cutoff_for_level(GroupId::so3(), 5)).size() == 6);
  CHECK(enumerate_dual(GroupId::torus(1), cutoff_for_level(GroupId::torus(1), 5)).size() == 11);
  // Lattice points with |k| <= 2 in Z^2: 1 + 4 + 4 + 4 = 13.
  CHECK(enumerate_dual(GroupId::torus(2), cutoff_for_level(GroupId::torus(2), 2)).size() == 13);
  for (const char* name : {"su2", "so3", "t1", "t2", "t3"}) {
    const auto d = enumerate_dual(GroupId::parse(name), 40.0);
    REQUIRE(!d.empty());
    CHECK(d.front().lambda_sq == 0.0);
    for (std::size_t i = 1; i < d.size(); ++i) {
      CHECK(d[i - 1].lambda_sq <= d[i].lambda_sq);
      CHECK(d[i].weight <= 40.0);
    }
  }
  CHECK_THROWS_AS(enumerate_dual(GroupId::su2(), 0.5), DomainError);
}

TEST_CASE("spin-1/2 representation is the defining SU(2) matrix") {
  std::mt19937_64 rng(1);
  const Irrep half = make_spin_irrep(GroupKind::SU2, 1);
  const Complex i(0, 1);
  for (int n = 0; n < 10; ++n) {
    const GroupPoint x = random_point(GroupId::su2(), rng);
    const double a = x.c[0], b = x.c[1], g = x.c[2];
    Eigen::Matrix2cd rz_a, ry, rz_g;
    rz_a << std::exp(-i * a / 2.0), 0, 0, std::exp(i * a / 2.0);
    ry << std::cos(b / 2), -std::sin(b / 2), std::sin(b / 2), std::cos(b / 2);
    rz_g << std::exp(-i * g / 2.0), 0, 0, std::exp(i * g / 2.0);
    const Eigen::MatrixXcd want = rz_a * ry * rz_g;
    CHECK((rep_eval(half, x) - want).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("Wigner d^1 closed forms") {
  for (double b : {0.0, 0.3, 1.2, 2.9, std::numbers::pi}) {
    const Eigen::MatrixXd d = wigner_small_d(2, b);
    CHECK(d(0, 0) == doctest::Approx((1 + std::cos(b)) / 2));
    CHECK(d(0, 1) == doctest::Approx(-std::sin(b) / std::sqrt(2.0)));
    CHECK(d(0, 2) == doctest::Approx((1 - std::cos(b)) / 2));
    CHECK(d(1, 1) == doctest::Approx(std::cos(b)));
  }
}

TEST_CASE("representations are unitary and multiplicative on the torus") {
  std::mt19937_64 rng(2);
  for (const char* name : {"su2", "so3"}) {
    const GroupId g = GroupId::parse(name);
    for (int tl = (g.kind() == GroupKind::SO3 ? 2 : 1); tl <= 24; tl += (g.kind() == GroupKind::SO3 ? 2 : 3)) {
      const Irrep x = make_spin_irrep(g.kind(), tl);
      const Eigen::MatrixXcd u = rep_eval(x, random_point(g, rng));
      CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(x.dim, x.dim)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  const Irrep k = make_torus_irrep({2, -1, 3});
  GroupPoint x, y, xy;
  x.c = {0.1, 0.7, 0.25};
  y.c = {0.4, 0.2, 0.5};
  for (int i = 0; i < 3; ++i) xy.c[i] = std::fmod(x.c[i] + y.c[i], 1.0);
  CHECK(std::abs(rep_eval(k, xy)(0, 0) - rep_eval(k, x)(0, 0) * rep_eval(k, y)(0, 0)) < 1e-13);
}

TEST_CASE("chart and capability limits") {
  GroupPoint bad;
  bad.c = {0.0, 4.0, 0.0};
  CHECK_THROWS_AS(validate_point(GroupId::su2(), bad), DomainError);
  CHECK_THROWS_AS(wigner_small_d(kMaxTwiceSpin + 2, 0.3), CapabilityError);
}
