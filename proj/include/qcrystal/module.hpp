#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "qcrystal/cartan.hpp"
#include "qcrystal/matrix.hpp"
#include "qcrystal/words.hpp"

namespace qcrystal {

/// i-string decomposition of a weight space V_a, in matrix form.
///
/// Block n holds a basis K_n of ker(raise_i) on V_{a-nα_i}; the columns of S
/// are f_i^{(n)} K_n over all blocks with nonzero image, so the coordinates
/// S^{-1} x are the string components of x.
struct StringData {
  struct Block {
    int n;
    RootVec beta;
    std::vector<QVector> kernel;  // columns in V_beta
    std::size_t offset;           // first column of the block in S
  };
  std::vector<Block> blocks;
  QMatrix S;
  QMatrix Sinv;
  QMatrix etil;  // V_a -> V_{a-α_i}
  QMatrix ftil;  // V_a -> V_{a+α_i}
  QMatrix q_op;  // Q_i: (n+1) on block n when a_ii = 0, identity otherwise

  // Number of columns in blocks with index >= n, i.e. dim (f_i^n V)_a.
  std::size_t count_at_least(int n) const;
  // Components u_n of x, as (n, coordinates in V_{a-nα_i}).
  std::vector<std::pair<int, QVector>> components(const QVector& x) const;
};

/// Weight-graded module with finite-dimensional weight spaces indexed by the
/// offset α below the top weight. Coordinates are with respect to a fixed
/// basis of each weight space.
class GradedModule {
 public:
  explicit GradedModule(const CartanDatum& d) : d_(d) {}
  virtual ~GradedModule() = default;
  GradedModule(const GradedModule&) = delete;
  GradedModule& operator=(const GradedModule&) = delete;

  const CartanDatum& datum() const { return d_; }

  virtual WeightPoint weight(const RootVec& a) const = 0;
  virtual std::size_t dim(const RootVec& a) = 0;
  // f_i: V_a -> V_{a+α_i}.
  virtual const QMatrix& f_matrix(Index i, const RootVec& a) = 0;
  // The raising operator (e_i, or e_i' on U_q^-): V_a -> V_{a-α_i}. Requires a_i > 0.
  virtual const QMatrix& e_matrix(Index i, const RootVec& a) = 0;
  // Gram matrix of the module's bilinear form on the basis of V_a.
  virtual const QMatrix& gram(const RootVec& a) = 0;

  int wt_pairing(Index i, const RootVec& a) const { return pairing(d_, i, weight(a)); }
  // f_i^{(n)}: V_a -> V_{a+nα_i}, including the [n]_i! normalization for real i.
  const QMatrix& fpow(Index i, const RootVec& a, int n);
  // The form on coordinate vectors.
  ScalarQ form(const RootVec& a, const QVector& x, const QVector& y);
  // Cached i-string data of V_a. Throws ReconstructionFailed when the
  // decomposition does not exist (an f_i^{(n)} that is neither injective nor
  // zero on the kernel, or blocks that do not fill V_a).
  const StringData& strings(Index i, const RootVec& a);

 protected:
  CartanDatum d_;

 private:
  std::map<std::pair<std::pair<Index, int>, RootVec>, QMatrix> fpow_cache_;
  std::map<std::pair<Index, RootVec>, std::unique_ptr<StringData>> string_cache_;
};

/// Module realized as f-words modulo the radical of a recursively defined form.
///
/// The basis of each weight space is the lexicographically least set of words
/// whose Gram rows are independent.
class WordModule : public GradedModule {
 public:
  struct Space {
    std::vector<Word> words;
    std::map<Word, std::size_t> index;
    QMatrix full_gram;
    std::vector<std::size_t> basis;  // indices into words
    QMatrix gram;
    QMatrix reduce;  // dim × #words, coordinates of every word
  };

  using GradedModule::GradedModule;

  const Space& space(const RootVec& a);
  std::size_t dim(const RootVec& a) override { return space(a).basis.size(); }
  const QMatrix& f_matrix(Index i, const RootVec& a) override;
  const QMatrix& e_matrix(Index i, const RootVec& a) override;
  const QMatrix& gram(const RootVec& a) override { return space(a).gram; }

  const Word& basis_word(const RootVec& a, std::size_t k) { return space(a).words[space(a).basis[k]]; }
  // Coordinates of a homogeneous element of weight a.
  QVector coords(const FVector& v, const RootVec& a);
  FVector element(const QVector& x, const RootVec& a);
  // Nullity of the full-word Gram matrix.
  std::size_t nullity(const RootVec& a) { return space(a).words.size() - dim(a); }

 protected:
  // Raising operator applied to a single word, as (coefficient, word) terms.
  virtual std::vector<std::pair<ScalarQ, Word>> raise_word(Index i, const Word& w) const = 0;
  // (f_i u, v) = form_factor(i, a) * (u, raise_i v) for v of weight a.
  virtual ScalarQ form_factor(Index i, const RootVec& a) const = 0;
  // Hook run once per newly built weight space.
  virtual void check_space(const RootVec&, std::size_t) const {}

 private:
  std::map<RootVec, std::unique_ptr<Space>> spaces_;
  std::map<std::pair<Index, RootVec>, QMatrix> f_cache_;
  std::map<std::pair<Index, RootVec>, QMatrix> e_cache_;
};

/// U_q^- with the Kashiwara form; weight of the offset a is -a.
class UmModule : public WordModule {
 public:
  explicit UmModule(const CartanDatum& d) : WordModule(d) {}
  WeightPoint weight(const RootVec& a) const override {
    return WeightPoint{std::vector<int>(a.size(), 0), a};
  }

 protected:
  std::vector<std::pair<ScalarQ, Word>> raise_word(Index i, const Word& w) const override;
  ScalarQ form_factor(Index, const RootVec&) const override { return ScalarQ(1); }
};

/// Irreducible highest-weight module V(λ) with its contravariant form.
class VModule : public WordModule {
 public:
  // Throws NotDominant when some λ(h_i) < 0.
  VModule(const CartanDatum& d, std::vector<int> lam);
  const std::vector<int>& lam() const { return lam_; }
  WeightPoint weight(const RootVec& a) const override { return WeightPoint{lam_, a}; }

  // e_i on the element x of V_a, i.e. the raise matrix applied to x.
  QVector apply_e(Index i, const RootVec& a, const QVector& x);
  // Contravariant form of two homogeneous elements.
  ScalarQ cform(const FVector& u, const FVector& v);

 protected:
  std::vector<std::pair<ScalarQ, Word>> raise_word(Index i, const Word& w) const override;
  ScalarQ form_factor(Index i, const RootVec& a) const override;
  // Imaginary pairings of nonzero weight spaces must be nonnegative.
  void check_space(const RootVec& a, std::size_t dim) const override;

 private:
  std::vector<int> lam_;
};

// π_λ on coordinates: V(λ)_{λ-a} ← U_q^-_{-a}, dim_V × dim_U.
QMatrix pi_matrix(UmModule& um, VModule& v, const RootVec& a);

struct WeightViolation {
  RootVec alpha;
  Index i;
  std::string rule;
};

// Integrability constraints for imaginary indices on V_a for all |a| <= depth.
std::vector<WeightViolation> check_weight_constraints(VModule& v, int depth);

}  // namespace qcrystal
