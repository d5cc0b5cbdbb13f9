#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qcrystal/cartan.hpp"
#include "qcrystal/matrix.hpp"

namespace qcrystal {

/// Integer or +infinity. Infinity never enters arithmetic.
class ExtInt {
 public:
  ExtInt() = default;
  ExtInt(int v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  static ExtInt infinity() {
    ExtInt x;
    x.inf_ = true;
    return x;
  }
  bool is_inf() const { return inf_; }
  // Throws InvalidArgument on infinity.
  int value() const;

  friend bool operator==(const ExtInt& a, const ExtInt& b) { return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_); }
  friend bool operator!=(const ExtInt& a, const ExtInt& b) { return !(a == b); }
  friend bool operator<(const ExtInt& a, const ExtInt& b) {
    if (a.inf_) return false;
    return b.inf_ || a.v_ < b.v_;
  }
  friend bool operator>(const ExtInt& a, const ExtInt& b) { return b < a; }
  friend bool operator>=(const ExtInt& a, const ExtInt& b) { return !(a < b); }

  std::string to_string() const { return inf_ ? "inf" : std::to_string(v_); }

 private:
  bool inf_ = false;
  int v_ = 0;
};

struct CrystalNode {
  int id = 0;
  WeightPoint wt;
  std::vector<int> eps;
  std::vector<ExtInt> phi;
  RatVector residue;  // coordinates in the lattice basis of the weight space

  friend bool operator==(const CrystalNode& a, const CrystalNode& b) {
    return a.id == b.id && a.wt == b.wt && a.eps == b.eps && a.phi == b.phi && a.residue == b.residue;
  }
};

struct CrystalEdge {
  int src;
  int dst;
  Index i;
  friend bool operator==(const CrystalEdge& a, const CrystalEdge& b) {
    return a.src == b.src && a.dst == b.dst && a.i == b.i;
  }
};

/// Colored directed graph with edges b -> f~_i b. Node ids are positions in `nodes`.
class CrystalGraph {
 public:
  CrystalGraph() = default;
  CrystalGraph(int n_indices, std::vector<std::string> labels)
      : n_(n_indices), labels_(std::move(labels)) {}

  int n_indices() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<CrystalNode>& nodes() const { return nodes_; }
  const std::vector<CrystalEdge>& edges() const { return edges_; }
  std::vector<CrystalNode>& mutable_nodes() { return nodes_; }
  nlohmann::json& meta() { return meta_; }
  const nlohmann::json& meta() const { return meta_; }

  int add_node(CrystalNode node);
  // Throws InvalidArgument when the node already has an outgoing or incoming i-edge.
  void add_edge(int src, int dst, Index i);

  // Target of the i-edge out of / into a node, if any.
  std::optional<int> f_target(int node, Index i) const;
  std::optional<int> e_target(int node, Index i) const;

  // Nodes without incoming edges.
  std::vector<int> sources() const;
  std::size_t size() const { return nodes_.size(); }

  friend bool operator==(const CrystalGraph& a, const CrystalGraph& b);

 private:
  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<CrystalNode> nodes_;
  std::vector<CrystalEdge> edges_;
  std::vector<std::vector<int>> out_, in_;  // per node, per index; -1 for none
  nlohmann::json meta_ = nlohmann::json::object();
};

// "crystal/1" JSON schema; ∞ is the string "inf".
nlohmann::json graph_to_json(const CrystalGraph& g);
CrystalGraph graph_from_json(const nlohmann::json& j);
std::string graph_to_dot(const CrystalGraph& g);

struct IsoResult {
  bool isomorphic = false;
  // witness[k] = node of the second graph matched with node k of the first.
  std::vector<int> witness;
  std::string certificate;  // reason for failure
};

// Label-preserving isomorphism (wt, eps, phi and colored edges), anchored at
// the highest-weight nodes and propagated along f~-edges.
IsoResult graph_isomorphic(const CrystalGraph& g1, const CrystalGraph& g2);

}  // namespace qcrystal
