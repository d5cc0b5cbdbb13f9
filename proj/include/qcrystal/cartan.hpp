#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qcrystal {

using Index = int;
// Root α = Σ k_i α_i, stored as the vector k.
using RootVec = std::vector<int>;
using Word = std::vector<Index>;

struct Violation {
  int row;
  int col;
  std::string rule;
};

/// Symmetrizable Borcherds-Cartan datum with finite index set 0..n-1.
class CartanDatum {
 public:
  CartanDatum() = default;
  CartanDatum(std::vector<std::vector<int>> a, std::vector<int> s,
              std::vector<std::string> labels = {});

  // Structured list of broken conditions; empty when valid.
  static std::vector<Violation> validate(const std::vector<std::vector<int>>& a,
                                         const std::vector<int>& s);

  static CartanDatum from_json(const nlohmann::json& j);
  static CartanDatum load(const std::string& path_or_builtin);
  static CartanDatum builtin(const std::string& name);
  static std::vector<std::string> builtin_names();
  nlohmann::json to_json() const;

  int n() const { return static_cast<int>(a_.size()); }
  int a(Index i, Index j) const { return a_[i][j]; }
  int s(Index i) const { return s_[i]; }
  bool is_real(Index i) const { return a_[i][i] == 2; }
  // c_i = -a_ii/2, only for imaginary i.
  int c(Index i) const;
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Index i) const { return labels_[i]; }
  const std::vector<std::vector<int>>& matrix() const { return a_; }
  const std::vector<int>& symmetrizers() const { return s_; }
  std::string name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  // Stable hex digest of matrix and symmetrizers.
  std::string hash() const;

  RootVec zero_root() const { return RootVec(a_.size(), 0); }
  RootVec simple_root(Index i) const;

 private:
  std::vector<std::vector<int>> a_;
  std::vector<int> s_;
  std::vector<std::string> labels_;
  std::string name_;
};

/// μ = λ − α, with λ given by its pairings λ(h_i).
struct WeightPoint {
  std::vector<int> lam;
  RootVec alpha;
  friend bool operator==(const WeightPoint& x, const WeightPoint& y) {
    return x.lam == y.lam && x.alpha == y.alpha;
  }
  friend bool operator<(const WeightPoint& x, const WeightPoint& y) {
    return x.lam != y.lam ? x.lam < y.lam : x.alpha < y.alpha;
  }
};

int height(const RootVec& alpha);
RootVec add_roots(const RootVec& a, const RootVec& b);
// a − b; entries may go negative, check with is_nonneg.
RootVec sub_roots(const RootVec& a, const RootVec& b);
bool is_nonneg(const RootVec& a);
// All α ∈ Q+ with height exactly h, in lexicographically decreasing order of k.
std::vector<RootVec> roots_of_height(int n, int h);

// ⟨h_i, λ − α⟩.
int pairing(const CartanDatum& d, Index i, const std::vector<int>& lam, const RootVec& alpha);
int pairing(const CartanDatum& d, Index i, const WeightPoint& mu);
// ⟨h_i, α⟩ = Σ_j k_j a_ij.
int root_pairing(const CartanDatum& d, Index i, const RootVec& alpha);
// (α | μ) = Σ_i k_i s_i μ(h_i).
int sym_bilinear(const CartanDatum& d, const RootVec& alpha, const WeightPoint& mu);
// (α | β) on roots.
int sym_roots(const CartanDatum& d, const RootVec& alpha, const RootVec& beta);
RootVec root_of_word(int n, const Word& w);
WeightPoint weight_of_word(const CartanDatum& d, const Word& w, const std::vector<int>& lam);

std::string root_to_string(const RootVec& a);

}  // namespace qcrystal
