#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qcrystal/crystal_graph.hpp"
#include "qcrystal/lattice.hpp"
#include "qcrystal/module.hpp"

namespace qcrystal {

/// Crystal lattice and crystal basis of one weight space.
struct WeightCrystal {
  Lattice lattice;
  std::vector<RatVector> elements;  // residues in lattice coordinates, lexicographically decreasing
  std::vector<int> nodes;           // graph node of each element
};

/// Crystal basis (L, B) of a graded module up to a depth, with its graph.
///
/// The module is not owned and must outlive the crystal.
class Crystal {
 public:
  // L generated by f~-words on the top vector, B the nonzero residues of f~ B.
  static Crystal generate(GradedModule& m, int depth, nlohmann::json meta = nlohmann::json::object());
  // Lattices and elements supplied per weight (every weight up to depth).
  static Crystal from_lattices(GradedModule& m, int depth, std::map<RootVec, WeightCrystal> given,
                               nlohmann::json meta = nlohmann::json::object());

  GradedModule& module() const { return *m_; }
  int depth() const { return depth_; }
  const CrystalGraph& graph() const { return graph_; }
  const std::map<RootVec, WeightCrystal>& weights() const { return weights_; }
  // Throws InvalidArgument beyond the depth.
  const WeightCrystal& at(const RootVec& a) const;
  bool has(const RootVec& a) const { return weights_.count(a) > 0; }

  // Inconsistencies met while building: f~ or e~ leaving B ∪ {0}, residue
  // sets that are not bases, f~/e~ edges that disagree.
  const std::vector<std::string>& anomalies() const { return anomalies_; }

  // Residue of x ∈ V_a modulo qL_a. Throws NotInLattice.
  RatVector residue(const RootVec& a, const QVector& x) const { return at(a).lattice.residue(x); }
  QVector lift(const RootVec& a, const RatVector& r) const { return at(a).lattice.lift(r); }
  QVector lift_element(const RootVec& a, std::size_t k) const { return lift(a, at(a).elements.at(k)); }
  // Index of a residue among the elements of B_a, or -1.
  int find(const RootVec& a, const RatVector& r) const;
  const CrystalNode& node(int id) const { return graph_.nodes().at(id); }

 private:
  Crystal() = default;
  void finish(nlohmann::json meta);

  GradedModule* m_ = nullptr;
  int depth_ = 0;
  std::map<RootVec, WeightCrystal> weights_;
  CrystalGraph graph_;
  std::vector<std::string> anomalies_;
};

// ε_i by walking incoming i-edges; φ_i = ε_i + <h_i, wt> for real i, and
// 0 or ∞ by the sign of <h_i, wt> for imaginary i.
void assign_eps_phi(CrystalGraph& g, const CartanDatum& d);

// Nonzero residues are ordered lexicographically decreasing.
bool residue_greater(const RatVector& a, const RatVector& b);
bool is_zero(const RatVector& v);

/// V(λ) ⊗ V(μ) (or any two graded modules) with the coproduct
/// Δ(f_i) = f_i ⊗ 1 + K_i ⊗ f_i and Δ(e_i) = e_i ⊗ K_i^{-1} + 1 ⊗ e_i.
///
/// V_a = ⊕_{β+γ=a} A_β ⊗ B_γ; inside a block the index of x_r ⊗ y_s is r·dim B_γ + s.
class TensorModule : public GradedModule {
 public:
  struct Block {
    RootVec beta;
    RootVec gamma;
    std::size_t offset;
    std::size_t d1;
    std::size_t d2;
  };

  TensorModule(GradedModule& a, GradedModule& b);
  GradedModule& left() const { return a_; }
  GradedModule& right() const { return b_; }

  WeightPoint weight(const RootVec& a) const override;
  std::size_t dim(const RootVec& a) override;
  const QMatrix& f_matrix(Index i, const RootVec& a) override;
  const QMatrix& e_matrix(Index i, const RootVec& a) override;
  // Block-diagonal Kronecker product of the factor Gram matrices.
  const QMatrix& gram(const RootVec& a) override;

  const std::vector<Block>& blocks(const RootVec& a);
  // Coordinates of x ⊗ y in V_{β+γ}.
  QVector pure(const RootVec& beta, const QVector& x, const RootVec& gamma, const QVector& y);

 private:
  GradedModule& a_;
  GradedModule& b_;
  std::map<RootVec, std::vector<Block>> blocks_;
  std::map<std::pair<Index, RootVec>, QMatrix> f_cache_, e_cache_;
  std::map<RootVec, QMatrix> gram_cache_;
};

/// Which factor the Kashiwara operators act on under the tensor product rule.
struct TensorRule {
  bool f_left;  // f~_i acts on the left factor iff φ_i(b1) > ε_i(b2)
  bool e_left;  // e~_i acts on the left factor iff φ_i(b1) >= ε_i(b2)
};
TensorRule tensor_rule(const ExtInt& phi1, int eps2);

struct CombinatorialTensor {
  CrystalGraph graph;
  std::vector<std::pair<int, int>> pairs;  // factor nodes of each product node
  std::size_t rule_checks = 0;             // (b1 ⊗ b2, i) pairs decided by the rule
  std::vector<std::string> anomalies;      // f~/e~ rule results that are not mutually inverse
};

// Product of two crystal graphs computed to depths d1 and d2, restricted to
// total height <= depth. Throws DepthInsufficient when a factor operator would
// need a node beyond the computed depth of that factor.
CombinatorialTensor tensor_combinatorial(const CrystalGraph& g1, int d1, const CrystalGraph& g2, int d2, int depth,
                                         const CartanDatum& d);

/// Crystal of V(λ) ⊗ V(μ) computed from the module: lattice L(λ) ⊗ L(μ) and
/// basis B(λ) ⊗ B(μ), edges from the Kashiwara operators of the tensor module.
struct AlgebraicTensor {
  std::unique_ptr<VModule> left, right;
  std::unique_ptr<Crystal> left_crystal, right_crystal;
  std::unique_ptr<TensorModule> module;
  std::unique_ptr<Crystal> crystal;
};
AlgebraicTensor tensor_algebraic(const CartanDatum& d, const std::vector<int>& lam, const std::vector<int>& mu,
                                 int depth);

// Lattice and elements of the tensor product at weight a from the factor crystals.
WeightCrystal tensor_weight_crystal(TensorModule& t, const Crystal& c1, const Crystal& c2, const RootVec& a);

}  // namespace qcrystal
