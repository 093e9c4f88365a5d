#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "lienuc/block.hpp"
#include "lienuc/fourier.hpp"
#include "lienuc/group.hpp"
#include "lienuc/quadrature.hpp"

namespace lienuc {

enum class SymbolKind { Invariant, Diagonal, Separable, General };

std::string to_string(SymbolKind kind);

// Matrix-valued symbol sigma(x, xi) on G x dual(G), defined for irreps of
// weight <= cutoff.
//
// Invariant and Diagonal symbols are x-independent and produced lazily by a
// block function. Separable symbols are g(x) a(xi) with g sampled on a rule;
// General symbols are stored as samples at the nodes of their rule.
class Symbol {
 public:
  using BlockFn = std::function<Block(const Irrep&)>;
  using DiagonalFn = std::function<Eigen::VectorXcd(const Irrep&)>;
  using SampleFn = std::function<Eigen::MatrixXcd(std::size_t node, const Irrep&)>;

  static Symbol invariant(const GroupId& group, double cutoff, BlockFn fn, std::string name = "invariant");
  // Irreps absent from the mapping get the zero block.
  static Symbol invariant_from_map(const GroupId& group, double cutoff, const std::vector<Irrep>& irreps,
                                   const std::vector<Eigen::MatrixXcd>& blocks, std::string name = "multiplier");
  static Symbol diagonal(const GroupId& group, double cutoff, DiagonalFn fn, std::string name = "diagonal");
  static Symbol separable(GridFunction g, const Symbol& a, std::string name = "separable");
  static Symbol general(RulePtr rule, double cutoff, const SampleFn& fn, std::string name = "general");

  SymbolKind kind() const { return kind_; }
  const GroupId& group() const { return group_; }
  double cutoff() const { return cutoff_; }
  const std::string& name() const { return name_; }
  bool x_dependent() const { return kind_ == SymbolKind::Separable || kind_ == SymbolKind::General; }
  // Rule carrying the x-samples (Separable/General); null otherwise.
  const RulePtr& sample_rule() const { return rule_; }

  // sigma(xi) of an x-independent symbol.
  Block block(const Irrep& irrep) const;
  // sigma(x_node, xi); for x-independent symbols the node is ignored.
  Block block_at(std::size_t node, const Irrep& irrep) const;

  // Separable parts.
  const GridFunction& factor() const { return g_; }
  const Symbol& invariant_factor() const { return *a_; }

  Symbol scaled(Complex c) const;

 private:
  Symbol(const GroupId& group, SymbolKind kind, double cutoff, std::string name)
      : group_(group), kind_(kind), cutoff_(cutoff), name_(std::move(name)) {}
  void check_in_range(const Irrep& irrep) const;

  GroupId group_;
  SymbolKind kind_;
  double cutoff_;
  std::string name_;
  BlockFn fn_;
  RulePtr rule_;
  GridFunction g_;
  std::shared_ptr<const Symbol> a_;
  // General: samples_[irrep index][node].
  std::shared_ptr<const std::vector<std::vector<Eigen::MatrixXcd>>> samples_;
  std::shared_ptr<const std::map<std::string, std::size_t>> sample_index_;
  Complex general_scale_{1.0};
};

// JSON mirroring FourierCoefficients plus a "kind" tag; x-dependent symbols
// carry "rule_level" and per-node arrays.
nlohmann::json to_json(const Symbol& sigma);
Symbol symbol_from_json(const nlohmann::json& j);

}  // namespace lienuc
