#include "lienuc/fourier.hpp"

#include <cmath>
#include <sstream>

#include "lienuc/errors.hpp"
#include "lienuc/parallel.hpp"

namespace lienuc {

GridFunction GridFunction::sample(RulePtr rule, const std::function<Complex(const GroupPoint&)>& f,
                                  std::optional<double> band_limit) {
  GridFunction g;
  g.values.resize(rule->size());
  for (std::size_t i = 0; i < rule->size(); ++i) g.values[i] = f(rule->node(i));
  g.rule = std::move(rule);
  g.band_limit = band_limit;
  return g;
}

std::ptrdiff_t FourierCoefficients::find(const Irrep& irrep) const {
  for (std::size_t i = 0; i < irreps.size(); ++i) {
    if (irreps[i] == irrep) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

FourierCoefficients forward_ft(const GridFunction& f, double cutoff) {
  return forward_ft(f, enumerate_dual(f.rule->group(), cutoff), cutoff);
}

FourierCoefficients forward_ft(const GridFunction& f, const std::vector<Irrep>& duals, double cutoff) {
  const QuadratureRule& rule = *f.rule;
  if (f.values.size() != rule.size()) throw DomainError("grid function does not match its rule");
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (!std::isfinite(f.values[i].real()) || !std::isfinite(f.values[i].imag())) {
      throw NumericError("non-finite grid value at node " + std::to_string(i), i);
    }
  }
  FourierCoefficients out;
  out.group = rule.group();
  out.cutoff = cutoff;
  out.irreps = duals;
  out.blocks.resize(duals.size());

  double max_level = 0.0;
  for (const auto& irrep : duals) max_level = std::max(max_level, irrep.level());
  if (!f.band_limit) {
    if (max_level > rule.level()) {
      out.warnings.push_back("band limit undeclared and requested level exceeds rule level; "
                             "coefficients may alias");
    }
  } else if (max_level + *f.band_limit > 2.0 * rule.level()) {
    std::ostringstream os;
    os << "exactness shortfall: level " << max_level << " + band limit " << *f.band_limit
       << " exceeds rule degree " << 2.0 * rule.level();
    out.warnings.push_back(os.str());
  }

  Eigen::VectorXcd wf(static_cast<Eigen::Index>(rule.size()));
  for (std::size_t i = 0; i < rule.size(); ++i) wf(static_cast<Eigen::Index>(i)) = rule.weight(i) * f.values[i];

  parallel_for(duals.size(), [&](std::size_t k) {
    const Irrep& irrep = duals[k];
    const int d = irrep.dim;
    const Eigen::MatrixXcd samples = rep_samples(rule, irrep);
    // y(i + j d) = sum w f conj(xi_ij); fhat_{mn} = y(n + m d).
    const Eigen::VectorXcd y = samples.conjugate() * wf;
    out.blocks[k] = y.reshaped(d, d).transpose();
  });
  return out;
}

Complex inverse_ft(const FourierCoefficients& coeffs, const GroupPoint& x) {
  validate_point(coeffs.group, x);
  Complex acc = 0.0;
  for (std::size_t k = 0; k < coeffs.irreps.size(); ++k) {
    const Irrep& irrep = coeffs.irreps[k];
    const Eigen::MatrixXcd xi = rep_eval(irrep, x);
    acc += static_cast<double>(irrep.dim) * (xi * coeffs.blocks[k]).trace();
  }
  return acc;
}

GridFunction inverse_ft(const FourierCoefficients& coeffs, RulePtr rule) {
  if (!(rule->group() == coeffs.group)) throw DomainError("rule and coefficients on different groups");
  const std::size_t n = coeffs.irreps.size();
  std::vector<Eigen::VectorXcd> parts(n);
  parallel_for(n, [&](std::size_t k) {
    const Irrep& irrep = coeffs.irreps[k];
    const int d = irrep.dim;
    const Eigen::MatrixXcd samples = rep_samples(*rule, irrep);
    // d * sum_ij xi_ij fhat_ji.
    const Eigen::MatrixXcd ft = coeffs.blocks[k].transpose();
    const Eigen::VectorXcd coeff = ft.reshaped(d * d, 1);
    parts[k] = static_cast<double>(d) * (samples.transpose() * coeff);
  });
  GridFunction g;
  g.values.assign(rule->size(), Complex(0.0));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < rule->size(); ++i) g.values[i] += parts[k](static_cast<Eigen::Index>(i));
  }
  double band = 0.0;
  for (const auto& irrep : coeffs.irreps) band = std::max(band, irrep.level());
  g.band_limit = band;
  g.rule = std::move(rule);
  return g;
}

double parseval_defect(const GridFunction& f, const FourierCoefficients& coeffs) {
  std::vector<double> sq(f.values.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = std::norm(f.values[i]);
  const double lhs = integrate_values(*f.rule, sq);
  double rhs = 0.0;
  for (std::size_t k = 0; k < coeffs.irreps.size(); ++k) {
    rhs += coeffs.irreps[k].dim * coeffs.blocks[k].squaredNorm();
  }
  return std::abs(lhs - rhs);
}

nlohmann::json group_to_json(const GroupId& group) { return group.name(); }

GroupId group_from_json(const nlohmann::json& j) {
  if (!j.is_string()) throw DomainError("group must be a string such as \"su2\"");
  return GroupId::parse(j.get<std::string>());
}

nlohmann::json label_to_json(const Irrep& irrep) {
  if (irrep.kind == GroupKind::Torus) return irrep.k;
  if (irrep.twice_l % 2 == 0) return irrep.twice_l / 2;
  return 0.5 * irrep.twice_l;
}

Irrep irrep_from_label(const GroupId& group, const nlohmann::json& label) {
  if (group.kind() == GroupKind::Torus) {
    if (!label.is_array() || static_cast<int>(label.size()) != group.torus_rank()) {
      throw DomainError("torus label must be an integer array of length " +
                        std::to_string(group.torus_rank()));
    }
    return make_torus_irrep(label.get<std::vector<int>>());
  }
  if (!label.is_number()) throw DomainError("spin label must be a number");
  const double twice = 2.0 * label.get<double>();
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-9) throw DomainError("spin label must be a half-integer");
  return make_spin_irrep(group.kind(), static_cast<int>(rounded));
}

void matrix_to_json(const Eigen::MatrixXcd& m, nlohmann::json& re, nlohmann::json& im) {
  re = nlohmann::json::array();
  im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json rr = nlohmann::json::array();
    nlohmann::json ii = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ii.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
}

Eigen::MatrixXcd matrix_from_json(const nlohmann::json& re, const nlohmann::json& im, int dim) {
  if (!re.is_array() || static_cast<int>(re.size()) != dim) {
    throw DomainError("matrix must have " + std::to_string(dim) + " rows");
  }
  const bool has_im = !im.is_null();
  if (has_im && (!im.is_array() || static_cast<int>(im.size()) != dim)) {
    throw DomainError("imaginary part has the wrong shape");
  }
  Eigen::MatrixXcd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (!re[i].is_array() || static_cast<int>(re[i].size()) != dim ||
        (has_im && static_cast<int>(im[i].size()) != dim)) {
      throw DomainError("matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    for (int j = 0; j < dim; ++j) {
      m(i, j) = Complex(re[i][j].get<double>(), has_im ? im[i][j].get<double>() : 0.0);
    }
  }
  return m;
}

nlohmann::json to_json(const FourierCoefficients& coeffs) {
  nlohmann::json j;
  j["group"] = group_to_json(coeffs.group);
  j["cutoff"] = coeffs.cutoff;
  auto& list = j["coefficients"] = nlohmann::json::array();
  for (std::size_t k = 0; k < coeffs.irreps.size(); ++k) {
    nlohmann::json e;
    e["label"] = label_to_json(coeffs.irreps[k]);
    e["dim"] = coeffs.irreps[k].dim;
    matrix_to_json(coeffs.blocks[k], e["re"], e["im"]);
    list.push_back(std::move(e));
  }
  return j;
}

FourierCoefficients coefficients_from_json(const nlohmann::json& j) {
  FourierCoefficients c;
  c.group = group_from_json(j.at("group"));
  c.cutoff = j.at("cutoff").get<double>();
  for (const auto& e : j.at("coefficients")) {
    Irrep irrep = irrep_from_label(c.group, e.at("label"));
    if (e.contains("dim") && e["dim"].get<int>() != irrep.dim) {
      throw DomainError("declared dim does not match label " + irrep.label_string());
    }
    c.blocks.push_back(matrix_from_json(e.at("re"), e.value("im", nlohmann::json()), irrep.dim));
    c.irreps.push_back(std::move(irrep));
  }
  return c;
}

}  // namespace lienuc
