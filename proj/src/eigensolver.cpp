#include "lienuc/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "lienuc/errors.hpp"

namespace lienuc {

bool is_hermitian(const Eigen::MatrixXcd& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  double dev = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) dev = std::max(dev, std::abs(a(i, j) - std::conj(a(j, i))));
  }
  return dev <= rel_tol * scale;
}

void reduce_to_hessenberg(Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index m = n - k - 1;
    Eigen::VectorXcd v = a.block(k + 1, k, m, 1);
    const double xnorm = v.norm();
    if (xnorm == 0.0) continue;
    const Complex x0 = v(0);
    const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    const Complex alpha = -phase * xnorm;
    v(0) -= alpha;
    const double vnorm = v.norm();
    if (vnorm == 0.0) continue;
    v /= vnorm;
    // A <- (I - 2vv^*) A (I - 2vv^*) on the trailing rows and columns.
    Eigen::RowVectorXcd left = v.adjoint() * a.bottomRows(m);
    a.bottomRows(m).noalias() -= 2.0 * v * left;
    Eigen::VectorXcd right = a.rightCols(m) * v;
    a.rightCols(m).noalias() -= 2.0 * right * v.adjoint();
    a(k + 1, k) = alpha;
    for (Eigen::Index i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

std::vector<Complex> hessenberg_qr_eigenvalues(Eigen::MatrixXcd h, int max_iterations_per_eigenvalue) {
  const Eigen::Index n = h.rows();
  std::vector<Complex> eig(static_cast<std::size_t>(n));
  if (n == 0) return eig;
  const double eps = std::numeric_limits<double>::epsilon();
  const double norm_est = std::max(h.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  Eigen::Index hi = n - 1;
  int iter = 0;
  long total = 0;
  while (hi >= 0) {
    // Locate the active unreduced block [lo, hi].
    Eigen::Index lo = hi;
    while (lo > 0) {
      double s = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (s == 0.0) s = norm_est;
      if (std::abs(h(lo, lo - 1)) <= eps * s) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig[static_cast<std::size_t>(hi)] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    ++iter;
    ++total;
    if (iter > max_iterations_per_eigenvalue) {
      std::ostringstream os;
      os << "QR iteration failed to converge: eigenvalue index " << hi << " of " << n << " after " << iter
         << " sweeps (" << total << " total), subdiagonal |h| = " << std::abs(h(hi, hi - 1));
      throw NumericError(os.str());
    }
    Complex mu;
    if (iter % 10 == 0) {
      // Exceptional shift to break cycles.
      mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1).real()) + Complex(0.0, 0.75 * std::abs(h(hi, hi - 1).imag()));
    } else {
      const Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
      const Complex half = 0.5 * (a - d);
      const Complex disc = std::sqrt(half * half + b * c);
      const Complex m1 = 0.5 * (a + d) + disc;
      const Complex m2 = 0.5 * (a + d) - disc;
      mu = std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
    }
    // Implicit single-shift sweep by Givens rotations on [lo, hi].
    Complex x = h(lo, lo) - mu;
    Complex y = h(lo + 1, lo);
    for (Eigen::Index k = lo; k < hi; ++k) {
      if (k > lo) {
        x = h(k, k - 1);
        y = h(k + 1, k - 1);
      }
      const double r = std::hypot(std::abs(x), std::abs(y));
      if (r == 0.0) continue;
      const Complex c = x / r;
      const Complex s = y / r;
      for (Eigen::Index j = std::max(lo, k - 1); j <= hi; ++j) {
        const Complex t1 = h(k, j), t2 = h(k + 1, j);
        h(k, j) = std::conj(c) * t1 + std::conj(s) * t2;
        h(k + 1, j) = -s * t1 + c * t2;
      }
      const Eigen::Index imax = std::min(k + 2, hi);
      for (Eigen::Index i = lo; i <= imax; ++i) {
        const Complex t1 = h(i, k), t2 = h(i, k + 1);
        h(i, k) = t1 * c + t2 * s;
        h(i, k + 1) = -t1 * std::conj(s) + t2 * std::conj(c);
      }
      if (k > lo) h(k + 1, k - 1) = 0.0;
    }
  }
  return eig;
}

void sort_spectrum(std::vector<Complex>& v) {
  auto arg = [](Complex z) {
    const double a = std::arg(z);
    return a <= -std::numbers::pi ? std::numbers::pi : a;
  };
  std::stable_sort(v.begin(), v.end(), [&](Complex a, Complex b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma > mb;
    return arg(a) < arg(b);
  });
}

std::vector<Complex> eigenvalues(const Eigen::MatrixXcd& a, const EigenOptions& opts) {
  if (a.rows() != a.cols()) throw DomainError("eigenvalues of a non-square matrix");
  if (a.rows() > opts.max_dim) {
    throw CapabilityError("matrix side " + std::to_string(a.rows()) + " exceeds the dense eigenproblem budget " +
                          std::to_string(opts.max_dim));
  }
  if (!a.allFinite()) throw NumericError("matrix has non-finite entries");
  std::vector<Complex> out;
  if (is_hermitian(a, opts.hermitian_tol)) {
    const Eigen::MatrixXcd sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("self-adjoint eigensolver did not converge");
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.emplace_back(es.eigenvalues()(i), 0.0);
  } else {
    Eigen::MatrixXcd h = a;
    reduce_to_hessenberg(h);
    out = hessenberg_qr_eigenvalues(std::move(h), opts.max_iterations_per_eigenvalue);
  }
  sort_spectrum(out);
  return out;
}

}  // namespace lienuc
