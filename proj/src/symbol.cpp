#include "lienuc/symbol.hpp"

#include <cmath>

#include "lienuc/errors.hpp"

namespace lienuc {

std::string to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::Invariant:
      return "invariant";
    case SymbolKind::Diagonal:
      return "diagonal";
    case SymbolKind::Separable:
      return "separable";
    case SymbolKind::General:
      return "general";
  }
  return "?";
}

namespace {

SymbolKind kind_from_string(const std::string& s) {
  if (s == "invariant") return SymbolKind::Invariant;
  if (s == "diagonal") return SymbolKind::Diagonal;
  if (s == "separable") return SymbolKind::Separable;
  if (s == "general") return SymbolKind::General;
  throw DomainError("unknown symbol kind '" + s + "'");
}

void check_cutoff(double cutoff) {
  if (!(cutoff >= 1.0)) throw DomainError("symbol cutoff must be >= 1");
}

}  // namespace

void Symbol::check_in_range(const Irrep& irrep) const {
  if (irrep.kind != group_.kind()) throw DomainError("irrep does not belong to " + group_.name());
  if (irrep.weight > cutoff_ * (1.0 + 1e-12)) {
    throw DomainError("irrep " + irrep.label_string() + " lies beyond the symbol cutoff");
  }
}

Symbol Symbol::invariant(const GroupId& group, double cutoff, BlockFn fn, std::string name) {
  check_cutoff(cutoff);
  Symbol s(group, SymbolKind::Invariant, cutoff, std::move(name));
  s.fn_ = std::move(fn);
  return s;
}

Symbol Symbol::invariant_from_map(const GroupId& group, double cutoff, const std::vector<Irrep>& irreps,
                                  const std::vector<Eigen::MatrixXcd>& blocks, std::string name) {
  if (irreps.size() != blocks.size()) throw DomainError("irrep and block counts differ");
  auto table = std::make_shared<std::map<std::string, Eigen::MatrixXcd>>();
  for (std::size_t i = 0; i < irreps.size(); ++i) {
    if (irreps[i].kind != group.kind()) throw DomainError("irrep does not belong to " + group.name());
    if (blocks[i].rows() != irreps[i].dim || blocks[i].cols() != irreps[i].dim) {
      throw DomainError("block for irrep " + irreps[i].label_string() + " must be " +
                        std::to_string(irreps[i].dim) + "x" + std::to_string(irreps[i].dim));
    }
    (*table)[irreps[i].label_string()] = blocks[i];
  }
  return invariant(
      group, cutoff,
      [table](const Irrep& irrep) {
        const auto it = table->find(irrep.label_string());
        if (it == table->end()) return Block::scalar(irrep.dim, 0.0);
        return Block::dense(it->second);
      },
      std::move(name));
}

Symbol Symbol::diagonal(const GroupId& group, double cutoff, DiagonalFn fn, std::string name) {
  check_cutoff(cutoff);
  Symbol s(group, SymbolKind::Diagonal, cutoff, std::move(name));
  s.fn_ = [fn = std::move(fn)](const Irrep& irrep) {
    Eigen::VectorXcd v = fn(irrep);
    if (v.size() != irrep.dim) throw DomainError("diagonal symbol returned the wrong length");
    return Block::diagonal(std::move(v));
  };
  return s;
}

Symbol Symbol::separable(GridFunction g, const Symbol& a, std::string name) {
  if (!g.rule) throw DomainError("separable factor needs a quadrature rule");
  if (a.x_dependent()) throw DomainError("separable symbol needs an x-independent factor");
  if (!(g.rule->group() == a.group())) throw DomainError("separable factors live on different groups");
  if (g.values.size() != g.rule->size()) throw DomainError("separable factor does not match its rule");
  Symbol s(a.group(), SymbolKind::Separable, a.cutoff(), std::move(name));
  s.rule_ = g.rule;
  s.g_ = std::move(g);
  s.a_ = std::make_shared<const Symbol>(a);
  return s;
}

Symbol Symbol::general(RulePtr rule, double cutoff, const SampleFn& fn, std::string name) {
  check_cutoff(cutoff);
  Symbol s(rule->group(), SymbolKind::General, cutoff, std::move(name));
  const auto irreps = enumerate_dual(rule->group(), cutoff);
  auto samples = std::make_shared<std::vector<std::vector<Eigen::MatrixXcd>>>(irreps.size());
  auto index = std::make_shared<std::map<std::string, std::size_t>>();
  for (std::size_t k = 0; k < irreps.size(); ++k) {
    (*index)[irreps[k].label_string()] = k;
    auto& per_node = (*samples)[k];
    per_node.resize(rule->size());
    for (std::size_t n = 0; n < rule->size(); ++n) {
      per_node[n] = fn(n, irreps[k]);
      if (per_node[n].rows() != irreps[k].dim || per_node[n].cols() != irreps[k].dim) {
        throw DomainError("general symbol sample has the wrong shape at irrep " + irreps[k].label_string());
      }
    }
  }
  s.rule_ = std::move(rule);
  s.samples_ = std::move(samples);
  s.sample_index_ = std::move(index);
  return s;
}

Block Symbol::block(const Irrep& irrep) const {
  if (x_dependent()) throw DomainError("symbol '" + name_ + "' depends on x; use block_at");
  check_in_range(irrep);
  return fn_(irrep);
}

Block Symbol::block_at(std::size_t node, const Irrep& irrep) const {
  switch (kind_) {
    case SymbolKind::Invariant:
    case SymbolKind::Diagonal:
      return block(irrep);
    case SymbolKind::Separable:
      check_in_range(irrep);
      if (node >= g_.values.size()) throw DomainError("node index out of range");
      return a_->block(irrep).scaled(g_.values[node]);
    case SymbolKind::General: {
      check_in_range(irrep);
      if (node >= rule_->size()) throw DomainError("node index out of range");
      const auto it = sample_index_->find(irrep.label_string());
      if (it == sample_index_->end()) return Block::scalar(irrep.dim, 0.0);
      return Block::dense(general_scale_ * (*samples_)[it->second][node]);
    }
  }
  throw DomainError("unknown symbol kind");
}

Symbol Symbol::scaled(Complex c) const {
  Symbol s = *this;
  switch (kind_) {
    case SymbolKind::Invariant:
    case SymbolKind::Diagonal:
      s.fn_ = [fn = fn_, c](const Irrep& irrep) { return fn(irrep).scaled(c); };
      break;
    case SymbolKind::Separable:
      for (auto& v : s.g_.values) v *= c;
      break;
    case SymbolKind::General:
      s.general_scale_ *= c;
      break;
  }
  return s;
}

nlohmann::json to_json(const Symbol& sigma) {
  nlohmann::json j;
  j["schema"] = "lienuc.symbol/1";
  j["name"] = sigma.name();
  j["kind"] = to_string(sigma.kind());
  j["group"] = group_to_json(sigma.group());
  j["cutoff"] = sigma.cutoff();
  const auto irreps = enumerate_dual(sigma.group(), sigma.cutoff());
  switch (sigma.kind()) {
    case SymbolKind::Invariant: {
      auto& list = j["blocks"] = nlohmann::json::array();
      for (const auto& irrep : irreps) {
        nlohmann::json e;
        e["label"] = label_to_json(irrep);
        e["dim"] = irrep.dim;
        matrix_to_json(sigma.block(irrep).to_dense(), e["re"], e["im"]);
        list.push_back(std::move(e));
      }
      break;
    }
    case SymbolKind::Diagonal: {
      auto& list = j["blocks"] = nlohmann::json::array();
      for (const auto& irrep : irreps) {
        const Eigen::VectorXcd v = sigma.block(irrep).diagonal_entries();
        nlohmann::json e;
        e["label"] = label_to_json(irrep);
        e["dim"] = irrep.dim;
        auto& re = e["diag_re"] = nlohmann::json::array();
        auto& im = e["diag_im"] = nlohmann::json::array();
        for (const auto& z : v) {
          re.push_back(z.real());
          im.push_back(z.imag());
        }
        list.push_back(std::move(e));
      }
      break;
    }
    case SymbolKind::Separable: {
      auto& g = j["g"];
      g["rule_level"] = sigma.factor().rule->level();
      auto& re = g["re"] = nlohmann::json::array();
      auto& im = g["im"] = nlohmann::json::array();
      for (const auto& z : sigma.factor().values) {
        re.push_back(z.real());
        im.push_back(z.imag());
      }
      j["a"] = to_json(sigma.invariant_factor());
      break;
    }
    case SymbolKind::General: {
      j["rule_level"] = sigma.sample_rule()->level();
      auto& list = j["samples"] = nlohmann::json::array();
      for (const auto& irrep : irreps) {
        nlohmann::json e;
        e["label"] = label_to_json(irrep);
        e["dim"] = irrep.dim;
        auto& nodes = e["nodes"] = nlohmann::json::array();
        for (std::size_t n = 0; n < sigma.sample_rule()->size(); ++n) {
          nlohmann::json m;
          matrix_to_json(sigma.block_at(n, irrep).to_dense(), m["re"], m["im"]);
          nodes.push_back(std::move(m));
        }
        list.push_back(std::move(e));
      }
      break;
    }
  }
  return j;
}

Symbol symbol_from_json(const nlohmann::json& j) {
  const GroupId group = group_from_json(j.at("group"));
  const double cutoff = j.at("cutoff").get<double>();
  const SymbolKind kind = kind_from_string(j.at("kind").get<std::string>());
  const std::string name = j.value("name", to_string(kind));
  switch (kind) {
    case SymbolKind::Invariant: {
      std::vector<Irrep> irreps;
      std::vector<Eigen::MatrixXcd> blocks;
      for (const auto& e : j.at("blocks")) {
        irreps.push_back(irrep_from_label(group, e.at("label")));
        blocks.push_back(matrix_from_json(e.at("re"), e.value("im", nlohmann::json()), irreps.back().dim));
      }
      return Symbol::invariant_from_map(group, cutoff, irreps, blocks, name);
    }
    case SymbolKind::Diagonal: {
      auto table = std::make_shared<std::map<std::string, Eigen::VectorXcd>>();
      for (const auto& e : j.at("blocks")) {
        const Irrep irrep = irrep_from_label(group, e.at("label"));
        const auto re = e.at("diag_re").get<std::vector<double>>();
        const auto im = e.value("diag_im", std::vector<double>(re.size(), 0.0));
        if (static_cast<int>(re.size()) != irrep.dim || im.size() != re.size()) {
          throw DomainError("diagonal for irrep " + irrep.label_string() + " has the wrong length");
        }
        Eigen::VectorXcd v(irrep.dim);
        for (int i = 0; i < irrep.dim; ++i) v(i) = Complex(re[i], im[i]);
        (*table)[irrep.label_string()] = v;
      }
      return Symbol::diagonal(
          group, cutoff,
          [table](const Irrep& irrep) -> Eigen::VectorXcd {
            const auto it = table->find(irrep.label_string());
            if (it == table->end()) return Eigen::VectorXcd::Zero(irrep.dim);
            return it->second;
          },
          name);
    }
    case SymbolKind::Separable: {
      const auto& g = j.at("g");
      RulePtr rule = quadrature(group, g.at("rule_level").get<double>());
      const auto re = g.at("re").get<std::vector<double>>();
      const auto im = g.value("im", std::vector<double>(re.size(), 0.0));
      if (re.size() != rule->size() || im.size() != re.size()) {
        throw DomainError("separable factor sample count does not match its rule");
      }
      GridFunction gf;
      gf.rule = rule;
      gf.values.resize(re.size());
      for (std::size_t i = 0; i < re.size(); ++i) gf.values[i] = Complex(re[i], im[i]);
      return Symbol::separable(std::move(gf), symbol_from_json(j.at("a")), name);
    }
    case SymbolKind::General: {
      RulePtr rule = quadrature(group, j.at("rule_level").get<double>());
      std::map<std::string, const nlohmann::json*> by_label;
      for (const auto& e : j.at("samples")) {
        by_label[irrep_from_label(group, e.at("label")).label_string()] = &e;
      }
      return Symbol::general(
          rule, cutoff,
          [&](std::size_t node, const Irrep& irrep) -> Eigen::MatrixXcd {
            const auto it = by_label.find(irrep.label_string());
            if (it == by_label.end()) return Eigen::MatrixXcd::Zero(irrep.dim, irrep.dim);
            const auto& nodes = it->second->at("nodes");
            if (nodes.size() != rule->size()) throw DomainError("general symbol node count mismatch");
            const auto& m = nodes[node];
            return matrix_from_json(m.at("re"), m.value("im", nlohmann::json()), irrep.dim);
          },
          name);
    }
  }
  throw DomainError("unknown symbol kind");
}

}  // namespace lienuc
