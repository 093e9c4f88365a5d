#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lienuc {

using Complex = std::complex<double>;

enum class GroupKind { Torus, SU2, SO3 };

// One of the concrete compact groups: the n-torus, SU(2) or SO(3).
class GroupId {
 public:
  static GroupId torus(int n);
  static GroupId su2() { return GroupId(GroupKind::SU2, 0); }
  static GroupId so3() { return GroupId(GroupKind::SO3, 0); }

  // Accepts "su2", "so3", "t1", "t2", "torus1", ... (case-insensitive).
  static GroupId parse(const std::string& text);

  GroupKind kind() const { return kind_; }
  int torus_rank() const { return n_; }
  // Manifold dimension: n for T^n, 3 for SU(2) and SO(3).
  int dim() const { return kind_ == GroupKind::Torus ? n_ : 3; }
  // Growth rate of the number of irreps with weight <= L (~ L^k).
  int dual_growth_dim() const { return kind_ == GroupKind::Torus ? n_ : 1; }
  std::string name() const;

  bool operator==(const GroupId& other) const = default;

 private:
  GroupId(GroupKind kind, int n) : kind_(kind), n_(n) {}
  GroupKind kind_;
  int n_;
};

// Equivalence class of an irreducible unitary representation.
//
// Labels: torus irreps carry the frequency vector k; SU(2)/SO(3) irreps
// carry twice the spin, 2l, so half-integers stay exact.
struct Irrep {
  GroupKind kind = GroupKind::Torus;
  std::vector<int> k;
  int twice_l = 0;
  int dim = 1;
  double lambda_sq = 0.0;
  double weight = 1.0;

  double ell() const { return 0.5 * twice_l; }
  // Max |k_i| on the torus, l on SU(2)/SO(3); the quadrature level needed
  // to resolve this irrep.
  double level() const;
  // Exact integer ordering key: |k|^2 on the torus, 2l otherwise.
  std::int64_t order_key() const;
  std::string label_string() const;

  bool operator==(const Irrep& other) const {
    return kind == other.kind && k == other.k && twice_l == other.twice_l;
  }
};

Irrep make_torus_irrep(std::vector<int> k);
Irrep make_spin_irrep(GroupKind kind, int twice_l);

// Strict weak ordering used for the dual: ascending lambda_sq, then label.
bool dual_less(const Irrep& a, const Irrep& b);

// Torus: coordinates in [0,1)^n. SU(2): zyz Euler angles
// (alpha in [0,2pi), beta in [0,pi], gamma in [0,4pi)); SO(3): gamma in
// [0,2pi).
struct GroupPoint {
  std::array<double, 3> c{0.0, 0.0, 0.0};
};

void validate_point(const GroupId& group, const GroupPoint& x);

// All irreps with weight <= cutoff, sorted by dual_less.
std::vector<Irrep> enumerate_dual(const GroupId& group, double cutoff);

// Cutoff that admits exactly the irreps of level <= level (SU(2)/SO(3)) or
// Euclidean |k| <= level (torus).
double cutoff_for_level(const GroupId& group, double level);

// Largest spin rep_eval accepts.
inline constexpr int kMaxTwiceSpin = 128;

// Wigner small-d matrix d^l_{m'm}(beta); row index i <-> m' = l - i,
// column index j <-> m = l - j.
Eigen::MatrixXd wigner_small_d(int twice_l, double beta);

// Unitary matrix of the representation at x. SU(2)/SO(3) use
// D^l_{m'm}(alpha,beta,gamma) = exp(-i m' alpha) d^l_{m'm}(beta) exp(-i m gamma).
Eigen::MatrixXcd rep_eval(const Irrep& irrep, const GroupPoint& x);

}  // namespace lienuc
