#include "lienuc/catalog.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>

#include <fftw3.h>

#include "lienuc/errors.hpp"
#include "lienuc/quadrature.hpp"

namespace lienuc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_positive_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("heat parameter t must be positive");
}

double max_level_at(const GroupId& group, double cutoff) {
  double m = 0.0;
  for (const auto& x : enumerate_dual(group, cutoff)) m = std::max(m, x.level());
  return m;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

Symbol heat_symbol(const GroupId& group, double t, double cutoff) {
  check_positive_t(t);
  return Symbol::invariant(
      group, cutoff, [t](const Irrep& x) { return Block::scalar(x.dim, std::exp(-t * x.lambda_sq)); }, "heat");
}

Symbol bessel_symbol(const GroupId& group, double alpha, double cutoff) {
  if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
  return Symbol::invariant(
      group, cutoff, [alpha](const Irrep& x) { return Block::scalar(x.dim, std::pow(x.weight, -alpha)); },
      "bessel");
}

Symbol sublaplacian_symbol(const GroupId& group, double alpha, double cutoff) {
  if (group.kind() == GroupKind::Torus) throw DomainError("the sub-Laplacian symbol is defined on SU2 and SO3");
  if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
  return Symbol::diagonal(
      group, cutoff,
      [alpha](const Irrep& x) {
        const double l = x.ell();
        Eigen::VectorXcd v(x.dim);
        for (int i = 0; i < x.dim; ++i) {
          const double m = l - i;
          v(i) = std::pow(1.0 + l * (l + 1.0) - m * m, -0.5 * alpha);
        }
        return v;
      },
      "sublaplacian");
}

Symbol identity_symbol(const GroupId& group, double cutoff) {
  return Symbol::invariant(group, cutoff, [](const Irrep& x) { return Block::scalar(x.dim, 1.0); }, "identity");
}

Symbol multiplier_from_sequence(const GroupId& group, double cutoff,
                                const std::vector<std::pair<Irrep, Eigen::MatrixXcd>>& blocks) {
  std::vector<Irrep> irreps;
  std::vector<Eigen::MatrixXcd> mats;
  for (const auto& [irrep, m] : blocks) {
    irreps.push_back(irrep);
    mats.push_back(m);
  }
  return Symbol::invariant_from_map(group, cutoff, irreps, mats, "multiplier");
}

Symbol separable_symbol(GridFunction g, const Symbol& a) {
  return Symbol::separable(std::move(g), a, "separable:" + a.name());
}

Symbol separable_demo_symbol(const GroupId& group, double t, double amplitude, double cutoff) {
  const Symbol heat = heat_symbol(group, t, cutoff);
  const RulePtr rule = quadrature(group, max_level_at(group, cutoff) + 1.0);
  GridFunction g;
  if (group.kind() == GroupKind::Torus) {
    g = GridFunction::sample(
        rule, [amplitude](const GroupPoint& x) { return Complex(1.0 + amplitude * std::cos(kTwoPi * x.c[0])); }, 1.0);
  } else {
    g = GridFunction::sample(
        rule, [amplitude](const GroupPoint& x) { return Complex(1.0 + amplitude * std::cos(x.c[1])); }, 1.0);
  }
  return Symbol::separable(std::move(g), heat, "separable-demo");
}

Symbol random_hermitian_symbol(const GroupId& group, std::uint64_t seed, double cutoff) {
  const bool spin = group.kind() != GroupKind::Torus;
  return Symbol::invariant(
      group, cutoff,
      [seed, spin](const Irrep& x) {
        std::mt19937_64 rng(splitmix(seed ^ fnv1a(x.label_string())));
        auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5; };
        const int d = x.dim;
        Eigen::MatrixXcd m(d, d);
        for (int j = 0; j < d; ++j) {
          for (int i = 0; i < d; ++i) {
            const double re = uniform();
            const double im = uniform();
            m(i, j) = Complex(re, im);
          }
        }
        Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
        const double target = spin ? std::pow(static_cast<double>(d), -4.0) : std::pow(x.weight, -4.0);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
        const double s1 = es.eigenvalues().cwiseAbs().sum();
        if (s1 > 0.0) h *= target / s1;
        return Block::dense(h);
      },
      "random-hermitian");
}

double carleman_coefficient(std::int64_t n) {
  if (n < 2) return 0.0;
  const int k = std::bit_width(static_cast<std::uint64_t>(n)) - 1;
  const std::uint64_t j = static_cast<std::uint64_t>(n) - (std::uint64_t{1} << k);
  const double sign = (std::popcount(j & (j >> 1)) % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(static_cast<double>(k), -2.0) * std::pow(2.0, -0.5 * k);
}

CarlemanData carleman_coefficients(std::int64_t max_frequency) {
  if (max_frequency < 2) throw DomainError("Carleman frequency budget must be >= 2");
  CarlemanData out;
  out.max_frequency = max_frequency;
  out.coefficients.resize(static_cast<std::size_t>(max_frequency) + 1);
  for (std::int64_t n = 0; n <= max_frequency; ++n) {
    const double c = carleman_coefficient(n);
    out.coefficients[static_cast<std::size_t>(n)] = c;
    out.l2_mass += c * c;
  }
  // Rudin-Shapiro partial sums of length M are at most (2 + sqrt 2) sqrt M;
  // each block contributes at most (2 + sqrt 2) k^{-2}.
  out.certified_sup = (2.0 + std::sqrt(2.0)) * std::numbers::pi * std::numbers::pi / 6.0;
  out.l2_limit = std::pow(std::numbers::pi, 4) / 90.0;

  const std::size_t m = 2 * std::bit_ceil(static_cast<std::size_t>(max_frequency) + 1);
  std::lock_guard lock(fftw_mutex());
  auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m));
  if (buf == nullptr) throw CapabilityError("FFT buffer allocation failed");
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(m), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  for (std::size_t i = 0; i < m; ++i) {
    buf[i][0] = i < out.coefficients.size() ? out.coefficients[i] : 0.0;
    buf[i][1] = 0.0;
  }
  fftw_execute(plan);
  double sup = 0.0;
  for (std::size_t i = 0; i < m; ++i) sup = std::max(sup, std::hypot(buf[i][0], buf[i][1]));
  fftw_destroy_plan(plan);
  fftw_free(buf);
  out.sampled_sup = sup;
  return out;
}

double carleman_power_sum(std::int64_t max_frequency, double r) {
  if (!(r > 0.0)) throw DomainError("power must be positive");
  double total = 0.0;
  for (int k = 1; (std::int64_t{1} << k) <= max_frequency; ++k) {
    const std::int64_t first = std::int64_t{1} << k;
    const std::int64_t last = std::min(max_frequency, (first << 1) - 1);
    const double amp = std::pow(static_cast<double>(k), -2.0) * std::pow(2.0, -0.5 * k);
    total += static_cast<double>(last - first + 1) * std::pow(amp, r);
  }
  return total;
}

Symbol carleman_symbol(double cutoff) {
  return Symbol::invariant(
      GroupId::torus(1), cutoff, [](const Irrep& x) { return Block::scalar(1, carleman_coefficient(x.k[0])); },
      "carleman");
}

std::vector<std::string> catalog_names() {
  return {"bessel", "carleman", "heat", "identity", "random-hermitian", "separable-demo", "sublaplacian"};
}

std::string catalog_description(const std::string& name) {
  if (name == "heat") return "heat semigroup exp(-t L), symbol exp(-t lambda^2) I";
  if (name == "bessel") return "Bessel potential (I - L)^{-alpha/2}, symbol <xi>^{-alpha} I";
  if (name == "sublaplacian") return "(I - sub-Laplacian)^{-alpha/2} on SU2/SO3, diagonal symbol";
  if (name == "carleman") return "convolution with a continuous function whose coefficients are not r-summable, r < 2 (T1)";
  if (name == "identity") return "identity operator, symbol I";
  if (name == "separable-demo") return "(1 + amplitude cos) times the heat symbol, x-dependent";
  if (name == "random-hermitian") return "seeded random Hermitian multiplier with fast Schatten decay";
  throw ConfigError("unknown catalog entry '" + name + "'");
}

CatalogEntry make_catalog_entry(const std::string& name, const GroupId& group,
                                const std::map<std::string, double>& parameters, double cutoff) {
  const auto names = catalog_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::ostringstream os;
    os << "unknown catalog entry '" << name << "'; known:";
    for (const auto& n : names) os << ' ' << n;
    throw ConfigError(os.str());
  }
  auto param = [&](const std::string& key, double fallback) {
    const auto it = parameters.find(key);
    return it == parameters.end() ? fallback : it->second;
  };
  std::map<std::string, double> used;
  std::vector<ExpectedCriterion> expected;
  auto converged = [](std::string criterion, double r, double p1, double p2, std::string ref) {
    ExpectedCriterion e;
    e.criterion = std::move(criterion);
    e.r = r;
    e.p1 = p1;
    e.p2 = p2;
    e.above = Verdict::ConvergedNumerically;
    e.below = Verdict::ConvergedNumerically;
    e.reference = std::move(ref);
    return e;
  };

  if (name == "heat") {
    const double t = param("t", 1.0);
    used["t"] = t;
    expected.push_back(converged("invariant_l2", 1.0, 2.0, 2.0, "heat semigroup: Gaussian decay of the symbol"));
    expected.push_back(converged("invariant_lp", 1.0, 1.0, 4.0, "heat semigroup: Gaussian decay dominates powers of d"));
    return {name, group, used, heat_symbol(group, t, cutoff), expected, catalog_description(name)};
  }
  if (name == "bessel") {
    const double alpha = param("alpha", 2.0);
    used["alpha"] = alpha;
    ExpectedCriterion e;
    e.parameter = "alpha";
    if (group.kind() == GroupKind::Torus) {
      e.criterion = "invariant_l2";
      e.boundary = group.dim();
      e.equivalence = true;
      e.reference = "Bessel potential on the torus: r-nuclear iff alpha r > n";
    } else {
      e.criterion = "diagonal";
      e.boundary = 3.0;
      e.reference = "Bessel potential on SU2/SO3: r-nuclear for alpha r > 3, sharp at p = 2";
    }
    expected.push_back(e);
    return {name, group, used, bessel_symbol(group, alpha, cutoff), expected, catalog_description(name)};
  }
  if (name == "sublaplacian") {
    const double alpha = param("alpha", 5.0);
    used["alpha"] = alpha;
    ExpectedCriterion e;
    e.criterion = "diagonal";
    e.parameter = "alpha";
    e.boundary = 4.0;
    e.reference = "sub-Laplacian powers on SU2/SO3: r-nuclear for alpha r > 4";
    expected.push_back(e);
    return {name, group, used, sublaplacian_symbol(group, alpha, cutoff), expected, catalog_description(name)};
  }
  if (name == "carleman") {
    if (!(group == GroupId::torus(1))) throw ConfigError("the carleman entry lives on T1");
    ExpectedCriterion e;
    e.criterion = "invariant_l2";
    e.above = Verdict::DivergenceDetected;
    e.below = Verdict::DivergenceDetected;
    e.reference = "continuous kernel, coefficients not summable: convolution is not nuclear";
    expected.push_back(e);
    return {name, group, used, carleman_symbol(cutoff), expected, catalog_description(name)};
  }
  if (name == "identity") {
    ExpectedCriterion e;
    e.criterion = "invariant_l2";
    e.above = Verdict::DivergenceDetected;
    e.below = Verdict::DivergenceDetected;
    e.reference = "identity: sum of d^2 diverges";
    expected.push_back(e);
    return {name, group, used, identity_symbol(group, cutoff), expected, catalog_description(name)};
  }
  if (name == "separable-demo") {
    const double t = param("t", 1.0);
    const double amplitude = param("amplitude", 0.5);
    used["t"] = t;
    used["amplitude"] = amplitude;
    expected.push_back(converged("general", 1.0, 2.0, 2.0, "x-dependent symbol with Gaussian decay in xi"));
    expected.push_back(converged("general", 2.0 / 3.0, 4.0, 4.0, "x-dependent symbol with Gaussian decay in xi"));
    return {name, group, used, separable_demo_symbol(group, t, amplitude, cutoff), expected, catalog_description(name)};
  }
  // random-hermitian
  const double seed = param("seed", 0.0);
  if (seed < 0.0 || seed != std::floor(seed)) throw ConfigError("seed must be a nonnegative integer");
  used["seed"] = seed;
  expected.push_back(converged("invariant_l2", 1.0, 2.0, 2.0, "Schatten-1 norms decaying like d^{-4}"));
  return {name, group, used, random_hermitian_symbol(group, static_cast<std::uint64_t>(seed), cutoff), expected,
          catalog_description(name)};
}

}  // namespace lienuc
