#include "lienuc/norms.hpp"

#include <cmath>
#include <limits>

#include "lienuc/errors.hpp"

namespace lienuc {

double schatten_norm(const Block& b, double r) {
  if (!b.all_finite()) throw NumericError("non-finite matrix passed to schatten_norm");
  const double p = b.schatten_power(r);
  return p == 0.0 ? 0.0 : std::pow(p, 1.0 / r);
}

double schatten_norm(const Eigen::MatrixXcd& m, double r) {
  if (!(r > 0.0)) throw DomainError("Schatten order must be positive");
  if (!m.allFinite()) throw NumericError("non-finite matrix passed to schatten_norm");
  return schatten_norm(Block::dense(m), r);
}

double opinf_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double lp_norm_x(std::span<const double> values, double p, const QuadratureRule& rule) {
  if (!(p >= 1.0)) throw DomainError("L^p order must be >= 1");
  if (values.size() != rule.size()) throw DomainError("value count does not match rule size");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
  }
  std::vector<double> powered(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0.0) throw DomainError("lp_norm_x expects nonnegative values");
    powered[i] = values[i] == 0.0 ? 0.0 : std::pow(values[i], p);
  }
  const double integral = integrate_values(rule, powered);
  return integral <= 0.0 ? 0.0 : std::pow(integral, 1.0 / p);
}

}  // namespace lienuc
