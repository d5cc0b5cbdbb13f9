#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcrystal/crystal.hpp"

namespace qcrystal {

/// Outcome of one statement or invariant on one configured run.
struct StatementReport {
  std::string id;  // "A".."O" or an invariant name
  std::string datum;
  std::vector<int> lam, mu;
  int r = 0;
  std::size_t instances = 0;
  std::vector<nlohmann::json> failures;  // each with a witness
  std::string note;
  bool pass() const { return failures.empty(); }
  bool vacuous() const { return instances == 0; }
  nlohmann::json to_json() const;
};

/// Replace one lattice basis vector b_k of L(λ) or L(∞) at alpha by q·b_k.
struct Corruption {
  std::string target = "lambda";  // "lambda" or "inf"
  RootVec alpha;
  std::size_t vector = 0;
};

/// Computed objects for one (datum, λ, μ, depth): V(λ), V(μ), V(λ+μ),
/// V(λ)⊗V(μ), U_q^- and their crystal lattices, built on first use.
class GrandLoop {
 public:
  GrandLoop(const CartanDatum& d, std::vector<int> lam, std::vector<int> mu, int depth);
  GrandLoop(const GrandLoop&) = delete;
  GrandLoop& operator=(const GrandLoop&) = delete;

  const CartanDatum& datum() const { return d_; }
  const std::vector<int>& lam() const { return lam_; }
  const std::vector<int>& mu() const { return mu_; }
  int depth() const { return depth_; }

  // Must be called before the corrupted crystal is first used.
  void corrupt(const Corruption& c);

  VModule& v_lam();
  VModule& v_mu();
  VModule& v_sum();
  UmModule& um();
  TensorModule& tensor();
  const Crystal& b_lam();
  const Crystal& b_mu();
  const Crystal& b_sum();
  const Crystal& b_inf();
  const Crystal& b_tensor();

  // Φ: V(λ+μ)_a -> (V(λ)⊗V(μ))_a. Throws WellDefinednessViolation if some
  // word in the radical of V(λ+μ) has nonzero image.
  const QMatrix& phi_matrix(const RootVec& a);
  // Ψ = G_{λ+μ}^{-1} Φ^T G_⊗, the adjoint of Φ.
  const QMatrix& psi_matrix(const RootVec& a);
  // S(u ⊗ v_μ) = u and S(V(λ) ⊗ Σ f_i V(μ)) = 0.
  QMatrix s_matrix(const RootVec& a);

  QVector phi(const RootVec& a, const QVector& x) { return phi_matrix(a) * x; }
  QVector psi(const RootVec& a, const QVector& w) { return psi_matrix(a) * w; }
  QVector s(const RootVec& a, const QVector& w) { return s_matrix(a) * w; }

  StatementReport check(char id);

 private:
  StatementReport report(const std::string& id) const;
  std::unique_ptr<Crystal> build(GradedModule& m, const std::string& target);

  CartanDatum d_;
  std::vector<int> lam_, mu_;
  int depth_;
  std::optional<Corruption> corruption_;
  std::unique_ptr<VModule> v_lam_, v_mu_, v_sum_;
  std::unique_ptr<UmModule> um_;
  std::unique_ptr<TensorModule> tensor_;
  std::unique_ptr<Crystal> b_lam_, b_mu_, b_sum_, b_inf_, b_tensor_;
  std::map<RootVec, QMatrix> phi_cache_, psi_cache_;
};

// One statement A..O on freshly computed data.
StatementReport check_statement(char id, const CartanDatum& d, const std::vector<int>& lam,
                                const std::vector<int>& mu, int r);

// dim (f_i^n V(λ))_{λ-α} against #{b ∈ B(λ)_{λ-α} : ε_i(b) >= n}, for n = 1..max_n.
StatementReport string_count_check(VModule& v, const Crystal& c, int max_n);
// Crystal-limit Gram on each B_a: diagonal, positive integers, all 1 when every a_ii != 0.
StatementReport orthogonality_check(GradedModule& m, const Crystal& c);
// eval0 (f~_i u, v) = eval0 (u, Q_i e~_i v) on lattice basis vectors.
StatementReport adjoint_check(GradedModule& m, const Crystal& c);
// Sampled u ∈ L(∞): (u*, u*) = (u, u) ∈ A0, u* ∈ L(∞), and q^{-1}u fails both
// (u,u) ∈ A0 and lattice membership whenever u ∉ qL(∞).
StatementReport star_check(UmModule& um, const Crystal& c, int samples, unsigned long long seed);
// (P v_λ, Q v_λ) ≡ Π_k (1 - q_{i_k}^2)^{-1} (P, Q) mod q^m A0 on word bases, λ(h_i) >= bound.
StatementReport pq_congruence_check(const CartanDatum& d, int depth, int bound, int m);
// f~_{i_1} ... f~_{i_r}(v_λ ⊗ v_μ) ≡ b ⊗ b' with λ = Λ_{i_t}, i_t != i_{t+1} = ... = i_r.
StatementReport key_lemma_check(const CartanDatum& d, const std::vector<int>& mu, int depth);
// For real i with the whole i-string inside the depth, φ_i(b) = max{n : f~_i^n b != 0}.
StatementReport phi_chain_check(const Crystal& c);
// Every f~/e~ and lattice anomaly met while building the crystal.
StatementReport anomaly_check(const Crystal& c, const std::string& what);

/// Aggregate of a configured suite.
struct SuiteReport {
  std::vector<StatementReport> reports;
  std::vector<std::string> unexercised;  // requested statements with no instance anywhere
  std::vector<std::string> errors;       // runs that could not be evaluated
  bool vacuous = false;                  // nothing was requested
  bool pass() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

// Config: {"depth", "seed", "large_lambda_bound", "statements", "invariants",
// "runs": [{"datum", "lambda", "mu", "depth"?, "statements"?, "invariants"?,
// "large_lambda"?, "corrupt"?}]}.
SuiteReport run_suite(const nlohmann::json& config);

}  // namespace qcrystal
