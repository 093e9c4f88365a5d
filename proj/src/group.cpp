#include "lienuc/group.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lienuc/errors.hpp"

namespace lienuc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Relative slack on cutoff comparisons so that cutoff_for_level(l) admits l.
constexpr double kCutoffSlack = 1e-12;

// log(n!) for 0 <= n <= kMaxTwiceSpin + 1, accumulated exactly once.
const std::vector<long double>& log_factorials() {
  static const std::vector<long double> table = [] {
    std::vector<long double> t(kMaxTwiceSpin + 2, 0.0L);
    for (std::size_t n = 2; n < t.size(); ++n) {
      t[n] = t[n - 1] + std::log(static_cast<long double>(n));
    }
    return t;
  }();
  return table;
}

}  // namespace

GroupId GroupId::torus(int n) {
  if (n < 1 || n > 3) {
    throw DomainError("torus rank must be 1, 2 or 3, got " + std::to_string(n));
  }
  return GroupId(GroupKind::Torus, n);
}

GroupId GroupId::parse(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (ch != '^' && ch != '_' && ch != '(' && ch != ')') {
      s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
  }
  if (s == "su2") return su2();
  if (s == "so3") return so3();
  std::string digits;
  if (s.rfind("torus", 0) == 0) {
    digits = s.substr(5);
  } else if (!s.empty() && s[0] == 't') {
    digits = s.substr(1);
  }
  if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
    return torus(std::stoi(digits));
  }
  throw DomainError("unknown group '" + text + "' (expected t1, t2, t3, su2 or so3)");
}

std::string GroupId::name() const {
  switch (kind_) {
    case GroupKind::Torus:
      return "T" + std::to_string(n_);
    case GroupKind::SU2:
      return "SU2";
    case GroupKind::SO3:
      return "SO3";
  }
  return "?";
}

double Irrep::level() const {
  if (kind == GroupKind::Torus) {
    int m = 0;
    for (int ki : k) m = std::max(m, std::abs(ki));
    return m;
  }
  return ell();
}

std::int64_t Irrep::order_key() const {
  if (kind == GroupKind::Torus) {
    std::int64_t s = 0;
    for (int ki : k) s += static_cast<std::int64_t>(ki) * ki;
    return s;
  }
  return twice_l;
}

std::string Irrep::label_string() const {
  std::ostringstream os;
  if (kind == GroupKind::Torus) {
    os << '(';
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i) os << ',';
      os << k[i];
    }
    os << ')';
  } else if (twice_l % 2 == 0) {
    os << twice_l / 2;
  } else {
    os << twice_l << "/2";
  }
  return os.str();
}

Irrep make_torus_irrep(std::vector<int> k) {
  Irrep r;
  r.kind = GroupKind::Torus;
  r.k = std::move(k);
  r.dim = 1;
  std::int64_t s = 0;
  for (int ki : r.k) s += static_cast<std::int64_t>(ki) * ki;
  r.lambda_sq = kTwoPi * kTwoPi * static_cast<double>(s);
  r.weight = std::sqrt(1.0 + r.lambda_sq);
  return r;
}

Irrep make_spin_irrep(GroupKind kind, int twice_l) {
  if (kind == GroupKind::Torus) throw DomainError("spin irrep requested for a torus");
  if (twice_l < 0) throw DomainError("negative spin");
  if (kind == GroupKind::SO3 && twice_l % 2 != 0) {
    throw DomainError("SO(3) has integer spins only");
  }
  Irrep r;
  r.kind = kind;
  r.twice_l = twice_l;
  r.dim = twice_l + 1;
  const double l = 0.5 * twice_l;
  r.lambda_sq = l * (l + 1.0);
  r.weight = std::sqrt(1.0 + r.lambda_sq);
  return r;
}

bool dual_less(const Irrep& a, const Irrep& b) {
  const auto ka = a.order_key();
  const auto kb = b.order_key();
  if (ka != kb) return ka < kb;
  return a.k < b.k;
}

void validate_point(const GroupId& group, const GroupPoint& x) {
  constexpr double tol = 1e-12;
  auto in = [&](double v, double lo, double hi) { return v >= lo - tol && v <= hi + tol; };
  bool ok = true;
  if (group.kind() == GroupKind::Torus) {
    for (int i = 0; i < group.torus_rank(); ++i) ok = ok && in(x.c[i], 0.0, 1.0);
  } else {
    const double gamma_period = group.kind() == GroupKind::SU2 ? 2.0 * kTwoPi : kTwoPi;
    ok = in(x.c[0], 0.0, kTwoPi) && in(x.c[1], 0.0, std::numbers::pi) &&
         in(x.c[2], 0.0, gamma_period);
  }
  if (!ok || !std::isfinite(x.c[0]) || !std::isfinite(x.c[1]) || !std::isfinite(x.c[2])) {
    throw DomainError("point outside the coordinate chart of " + group.name());
  }
}

std::vector<Irrep> enumerate_dual(const GroupId& group, double cutoff) {
  if (!(cutoff >= 1.0)) {
    throw DomainError("dual cutoff must be >= 1, got " + std::to_string(cutoff));
  }
  const double limit_sq = cutoff * cutoff * (1.0 + kCutoffSlack);
  std::vector<Irrep> out;
  if (group.kind() == GroupKind::Torus) {
    const int n = group.torus_rank();
    const double rsq = (limit_sq - 1.0) / (kTwoPi * kTwoPi);
    const int kmax = static_cast<int>(std::floor(std::sqrt(std::max(0.0, rsq))));
    std::vector<int> k(n, -kmax);
    while (true) {
      std::int64_t s = 0;
      for (int ki : k) s += static_cast<std::int64_t>(ki) * ki;
      if (1.0 + kTwoPi * kTwoPi * static_cast<double>(s) <= limit_sq) {
        out.push_back(make_torus_irrep(k));
      }
      int axis = n - 1;
      while (axis >= 0 && k[axis] == kmax) {
        k[axis] = -kmax;
        --axis;
      }
      if (axis < 0) break;
      ++k[axis];
    }
  } else {
    const int step = group.kind() == GroupKind::SO3 ? 2 : 1;
    for (int tl = 0;; tl += step) {
      const double l = 0.5 * tl;
      if (1.0 + l * (l + 1.0) > limit_sq) break;
      out.push_back(make_spin_irrep(group.kind(), tl));
    }
  }
  std::stable_sort(out.begin(), out.end(), dual_less);
  return out;
}

double cutoff_for_level(const GroupId& group, double level) {
  if (level < 0) throw DomainError("negative level");
  if (group.kind() == GroupKind::Torus) {
    return std::sqrt(1.0 + kTwoPi * kTwoPi * level * level);
  }
  return std::sqrt(1.0 + level * (level + 1.0));
}

Eigen::MatrixXd wigner_small_d(int twice_l, double beta) {
  if (twice_l < 0) throw DomainError("negative spin");
  if (twice_l > kMaxTwiceSpin) {
    throw CapabilityError("Wigner d-matrix limited to l <= 64, got 2l = " +
                          std::to_string(twice_l));
  }
  const auto& lf = log_factorials();
  const int d = twice_l + 1;
  const long double c = std::cos(0.5L * beta);
  const long double s = std::sin(0.5L * beta);
  Eigen::MatrixXd out(d, d);
  // All factorial arguments are integers: with J = 2l, M = 2m, j+m = (J+M)/2.
  for (int i = 0; i < d; ++i) {
    const int twice_mp = twice_l - 2 * i;
    const int jpmp = (twice_l + twice_mp) / 2;
    const int jmmp = (twice_l - twice_mp) / 2;
    for (int j = 0; j < d; ++j) {
      const int twice_m = twice_l - 2 * j;
      const int jpm = (twice_l + twice_m) / 2;
      const int jmm = (twice_l - twice_m) / 2;
      const int mp_minus_m = (twice_mp - twice_m) / 2;
      const long double pref = 0.5L * (lf[jpmp] + lf[jmmp] + lf[jpm] + lf[jmm]);
      const int s_lo = std::max(0, -mp_minus_m);
      const int s_hi = std::min(jpm, jmmp);
      long double acc = 0.0L;
      for (int k = s_lo; k <= s_hi; ++k) {
        const long double mag =
            std::exp(pref - lf[jpm - k] - lf[k] - lf[mp_minus_m + k] - lf[jmmp - k]);
        const int pc = twice_l - mp_minus_m - 2 * k;
        const int ps = mp_minus_m + 2 * k;
        long double term = mag * std::pow(c, pc) * std::pow(s, ps);
        if ((mp_minus_m + k) % 2 != 0) term = -term;
        acc += term;
      }
      out(i, j) = static_cast<double>(acc);
    }
  }
  return out;
}

Eigen::MatrixXcd rep_eval(const Irrep& irrep, const GroupPoint& x) {
  if (irrep.kind == GroupKind::Torus) {
    double phase = 0.0;
    for (std::size_t i = 0; i < irrep.k.size(); ++i) phase += irrep.k[i] * x.c[i];
    Eigen::MatrixXcd out(1, 1);
    // Reduce the phase first so that integer phases are exact.
    phase -= std::floor(phase);
    out(0, 0) = std::polar(1.0, kTwoPi * phase);
    return out;
  }
  const Eigen::MatrixXd small = wigner_small_d(irrep.twice_l, x.c[1]);
  const int d = irrep.dim;
  Eigen::MatrixXcd out(d, d);
  for (int i = 0; i < d; ++i) {
    const double mp = 0.5 * irrep.twice_l - i;
    const Complex left = std::polar(1.0, -mp * x.c[0]);
    for (int j = 0; j < d; ++j) {
      const double m = 0.5 * irrep.twice_l - j;
      out(i, j) = left * small(i, j) * std::polar(1.0, -m * x.c[2]);
    }
  }
  return out;
}

}  // namespace lienuc
