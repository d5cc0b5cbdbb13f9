#include "qcrystal/harness.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "qcrystal/error.hpp"
#include "qcrystal/global_basis.hpp"

namespace qcrystal {

namespace {

using nlohmann::json;

json vec_json(const QVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

json rat_json(const RatVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

std::vector<RootVec> roots_upto(int n, int r) {
  std::vector<RootVec> out;
  for (int h = 0; h <= r; ++h)
    for (auto& a : roots_of_height(n, h)) out.push_back(std::move(a));
  return out;
}

RootVec shifted(RootVec a, Index i, int k) {
  a[i] += k;
  return a;
}

std::optional<RatVector> try_residue(const Crystal& c, const RootVec& a, const QVector& x) {
  try {
    return c.residue(a, x);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotInLattice) throw;
    return std::nullopt;
  }
}

// Index of the residue in B_a, -1 for zero, -2 outside B ∪ {0}, -3 outside L.
int classify(const Crystal& c, const RootVec& a, const QVector& x) {
  auto r = try_residue(c, a, x);
  if (!r) return -3;
  if (is_zero(*r)) return -1;
  const int k = c.find(a, *r);
  return k >= 0 ? k : -2;
}

const char* class_name(int k) {
  switch (k) {
    case -1: return "zero";
    case -2: return "a residue outside B";
    case -3: return "a vector outside the lattice";
    default: return "an element of B";
  }
}

QVector rat_to_q(const RatVector& r) {
  QVector out;
  out.reserve(r.size());
  for (const auto& x : r) out.emplace_back(x);
  return out;
}

QVector apply_word(GradedModule& m, const Word& w) {
  QVector x{ScalarQ(1)};
  RootVec cur(static_cast<std::size_t>(m.datum().n()), 0);
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    x = m.f_matrix(*it, cur) * x;
    ++cur[*it];
  }
  return x;
}

json witness(const RootVec& a, const std::string& what) { return json{{"alpha", a}, {"what", what}}; }

// Lattice stability under e~ (statements A and H).
void e_lattice(GradedModule& m, const Crystal& c, int r, StatementReport& rep) {
  const int n = m.datum().n();
  for (const auto& a : roots_upto(n, r))
    for (int i = 0; i < n; ++i) {
      if (a[i] == 0 || m.dim(a) == 0) continue;
      const RootVec b = shifted(a, i, -1);
      const QMatrix& et = m.strings(i, a).etil;
      for (const auto& v : c.at(a).lattice.basis()) {
        ++rep.instances;
        const QVector y = et * v;
        if (!c.at(b).lattice.contains(y)) {
          json w = witness(a, "e~ of a lattice basis vector leaves the lattice");
          w["i"] = m.datum().label(i);
          w["vector"] = vec_json(v);
          w["image"] = vec_json(y);
          w["image_lattice_coords"] = vec_json(c.at(b).lattice.coordinates(y));
          rep.failures.push_back(std::move(w));
        }
      }
    }
}

// e~ of B in B ∪ {0} (statements B and I).
void e_basis(GradedModule& m, const Crystal& c, int r, StatementReport& rep) {
  const int n = m.datum().n();
  for (const auto& a : roots_upto(n, r))
    for (int i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      const RootVec b = shifted(a, i, -1);
      const auto& els = c.at(a).elements;
      for (std::size_t k = 0; k < els.size(); ++k) {
        ++rep.instances;
        const QVector y = m.strings(i, a).etil * c.lift_element(a, k);
        const int t = classify(c, b, y);
        if (t < -1) {
          json w = witness(a, std::string("e~ of an element of B is ") + class_name(t));
          w["i"] = m.datum().label(i);
          w["element"] = rat_json(els[k]);
          w["image"] = vec_json(y);
          rep.failures.push_back(std::move(w));
        }
      }
    }
}

// f~ b = b' iff b = e~ b' (statement C).
void fe_pairing(GradedModule& m, const Crystal& c, int r, StatementReport& rep) {
  const int n = m.datum().n();
  for (const auto& a : roots_upto(n, r))
    for (int i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      const RootVec b = shifted(a, i, -1);
      const auto& lo = c.at(b).elements;
      const auto& hi = c.at(a).elements;
      if (lo.empty() || hi.empty()) continue;
      std::vector<int> f(lo.size()), e(hi.size());
      for (std::size_t k = 0; k < lo.size(); ++k) f[k] = classify(c, a, m.strings(i, b).ftil * c.lift_element(b, k));
      for (std::size_t k = 0; k < hi.size(); ++k) e[k] = classify(c, b, m.strings(i, a).etil * c.lift_element(a, k));
      for (std::size_t k = 0; k < lo.size(); ++k)
        for (std::size_t l = 0; l < hi.size(); ++l) {
          ++rep.instances;
          const bool fwd = f[k] == static_cast<int>(l);
          const bool bwd = e[l] == static_cast<int>(k);
          if (fwd != bwd) {
            json w = witness(a, "f~ b = b' and b = e~ b' disagree");
            w["i"] = m.datum().label(i);
            w["b"] = rat_json(lo[k]);
            w["b_prime"] = rat_json(hi[l]);
            w["f_b"] = class_name(f[k]);
            w["e_b_prime"] = class_name(e[l]);
            w["f_b_is_b_prime"] = fwd;
            w["e_b_prime_is_b"] = bwd;
            rep.failures.push_back(std::move(w));
          }
        }
    }
}

// If e~ b != 0 then b = f~ e~ b (statement J).
void fe_inverse(GradedModule& m, const Crystal& c, int r, StatementReport& rep) {
  const int n = m.datum().n();
  for (const auto& a : roots_upto(n, r))
    for (int i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      const RootVec b = shifted(a, i, -1);
      const auto& els = c.at(a).elements;
      for (std::size_t k = 0; k < els.size(); ++k) {
        ++rep.instances;
        const int t = classify(c, b, m.strings(i, a).etil * c.lift_element(a, k));
        if (t == -1) continue;
        int back = -3;
        if (t >= 0) back = classify(c, a, m.strings(i, b).ftil * c.lift_element(b, static_cast<std::size_t>(t)));
        if (back != static_cast<int>(k)) {
          json w = witness(a, "f~ e~ b is not b");
          w["i"] = m.datum().label(i);
          w["b"] = rat_json(els[k]);
          w["e_b"] = class_name(t);
          w["f_e_b"] = class_name(back);
          rep.failures.push_back(std::move(w));
        }
      }
    }
}

// Residues form a Q-basis of L/qL (statements D and K).
void residue_basis(GradedModule& m, const Crystal& c, int r, StatementReport& rep) {
  for (const auto& a : roots_upto(m.datum().n(), r)) {
    const WeightCrystal& wc = c.at(a);
    const std::size_t D = m.dim(a);
    if (D == 0) continue;
    ++rep.instances;
    std::vector<QVector> cols;
    for (const auto& e : wc.elements) cols.push_back(rat_to_q(e));
    const std::size_t rk = cols.empty() ? 0 : rank(QMatrix::from_columns(cols, wc.lattice.dim()));
    if (wc.elements.size() != D || wc.lattice.dim() != D || rk != D) {
      json w = witness(a, "B is not a basis of L/qL");
      w["dim"] = D;
      w["elements"] = wc.elements.size();
      w["rank"] = rk;
      rep.failures.push_back(std::move(w));
    }
  }
}

}  // namespace

json StatementReport::to_json() const {
  json j{{"id", id},          {"datum", datum},         {"lambda", lam},   {"mu", mu},
         {"r", r},            {"instances", instances}, {"pass", pass()}, {"vacuous", vacuous()},
         {"failures", failures}};
  if (!note.empty()) j["note"] = note;
  return j;
}

GrandLoop::GrandLoop(const CartanDatum& d, std::vector<int> lam, std::vector<int> mu, int depth)
    : d_(d), lam_(std::move(lam)), mu_(std::move(mu)), depth_(depth) {
  if (depth < 0) throw Error(ErrorKind::InvalidArgument, "depth must be nonnegative");
  if (static_cast<int>(lam_.size()) != d.n() || static_cast<int>(mu_.size()) != d.n())
    throw Error(ErrorKind::InvalidArgument, "weights need one pairing per index");
}

void GrandLoop::corrupt(const Corruption& c) {
  if (c.target != "lambda" && c.target != "inf")
    throw Error(ErrorKind::InvalidArgument, "corruption target must be 'lambda' or 'inf'");
  if (static_cast<int>(c.alpha.size()) != d_.n() || !is_nonneg(c.alpha) || height(c.alpha) > depth_)
    throw Error(ErrorKind::InvalidArgument, "corruption weight " + root_to_string(c.alpha) + " is out of range");
  corruption_ = c;
}

VModule& GrandLoop::v_lam() {
  if (!v_lam_) v_lam_ = std::make_unique<VModule>(d_, lam_);
  return *v_lam_;
}
VModule& GrandLoop::v_mu() {
  if (!v_mu_) v_mu_ = std::make_unique<VModule>(d_, mu_);
  return *v_mu_;
}
VModule& GrandLoop::v_sum() {
  if (!v_sum_) {
    std::vector<int> s = lam_;
    for (std::size_t k = 0; k < s.size(); ++k) s[k] += mu_[k];
    v_sum_ = std::make_unique<VModule>(d_, s);
  }
  return *v_sum_;
}
UmModule& GrandLoop::um() {
  if (!um_) um_ = std::make_unique<UmModule>(d_);
  return *um_;
}
TensorModule& GrandLoop::tensor() {
  if (!tensor_) tensor_ = std::make_unique<TensorModule>(v_lam(), v_mu());
  return *tensor_;
}

std::unique_ptr<Crystal> GrandLoop::build(GradedModule& m, const std::string& target) {
  Crystal c = Crystal::generate(m, depth_);
  if (!corruption_ || corruption_->target != target) return std::make_unique<Crystal>(std::move(c));
  std::map<RootVec, WeightCrystal> given = c.weights();
  WeightCrystal& wc = given.at(corruption_->alpha);
  std::vector<QVector> basis = wc.lattice.basis();
  if (corruption_->vector >= basis.size())
    throw Error(ErrorKind::InvalidArgument, "corruption vector index is out of range");
  basis[corruption_->vector] = scale(ScalarQ::q_power(1), basis[corruption_->vector]);
  wc.lattice = Lattice(std::move(basis));
  return std::make_unique<Crystal>(Crystal::from_lattices(m, depth_, std::move(given), {{"corrupted", target}}));
}

const Crystal& GrandLoop::b_lam() {
  if (!b_lam_) b_lam_ = build(v_lam(), "lambda");
  return *b_lam_;
}
const Crystal& GrandLoop::b_mu() {
  if (!b_mu_) b_mu_ = build(v_mu(), "mu");
  return *b_mu_;
}
const Crystal& GrandLoop::b_sum() {
  if (!b_sum_) b_sum_ = build(v_sum(), "sum");
  return *b_sum_;
}
const Crystal& GrandLoop::b_inf() {
  if (!b_inf_) b_inf_ = build(um(), "inf");
  return *b_inf_;
}
const Crystal& GrandLoop::b_tensor() {
  if (!b_tensor_) {
    std::map<RootVec, WeightCrystal> given;
    for (const auto& a : roots_upto(d_.n(), depth_))
      given.emplace(a, tensor_weight_crystal(tensor(), b_lam(), b_mu(), a));
    b_tensor_ = std::make_unique<Crystal>(Crystal::from_lattices(tensor(), depth_, std::move(given)));
  }
  return *b_tensor_;
}

const QMatrix& GrandLoop::phi_matrix(const RootVec& a) {
  if (auto it = phi_cache_.find(a); it != phi_cache_.end()) return it->second;
  VModule& vs = v_sum();
  TensorModule& t = tensor();
  const auto& sp = vs.space(a);
  QMatrix phi(t.dim(a), sp.basis.size());
  for (std::size_t k = 0; k < sp.basis.size(); ++k) phi.set_column(k, apply_word(t, sp.words[sp.basis[k]]));
  for (std::size_t j = 0; j < sp.words.size(); ++j) {
    if (apply_word(t, sp.words[j]) != phi * sp.reduce.column(j))
      throw Error(ErrorKind::WellDefinednessViolation,
                  "the image of " + word_to_string(sp.words[j], &d_) + " v_{λ+μ} under Φ at " + root_to_string(a) +
                      " does not match its reduction (implementation bug)");
  }
  return phi_cache_.emplace(a, std::move(phi)).first->second;
}

const QMatrix& GrandLoop::psi_matrix(const RootVec& a) {
  if (auto it = psi_cache_.find(a); it != psi_cache_.end()) return it->second;
  const QMatrix& phi = phi_matrix(a);
  QMatrix psi;
  if (phi.cols() == 0)
    psi = QMatrix(0, phi.rows());
  else
    psi = inverse(v_sum().gram(a)) * (phi.transpose() * tensor().gram(a));
  return psi_cache_.emplace(a, std::move(psi)).first->second;
}

QMatrix GrandLoop::s_matrix(const RootVec& a) {
  TensorModule& t = tensor();
  QMatrix s(v_lam().dim(a), t.dim(a));
  for (const auto& b : t.blocks(a))
    if (b.beta == a && b.d2 == 1)
      for (std::size_t r = 0; r < b.d1; ++r) s.at(r, b.offset + r) = ScalarQ(1);
  return s;
}

StatementReport GrandLoop::report(const std::string& id) const {
  StatementReport rep;
  rep.id = id;
  rep.datum = d_.name();
  rep.lam = lam_;
  rep.mu = mu_;
  rep.r = depth_;
  return rep;
}

StatementReport GrandLoop::check(char id) {
  StatementReport rep = report(std::string(1, id));
  const int n = d_.n();
  const int r = depth_;
  switch (id) {
    case 'A': e_lattice(v_lam(), b_lam(), r, rep); break;
    case 'B': e_basis(v_lam(), b_lam(), r, rep); break;
    case 'C': fe_pairing(v_lam(), b_lam(), r, rep); break;
    case 'D': residue_basis(v_lam(), b_lam(), r, rep); break;
    case 'H': e_lattice(um(), b_inf(), r, rep); break;
    case 'I': e_basis(um(), b_inf(), r, rep); break;
    case 'J': fe_inverse(um(), b_inf(), r, rep); break;
    case 'K': residue_basis(um(), b_inf(), r, rep); break;
    case 'E':
      rep.note = "checked on an A0-basis of L(λ+μ), which suffices by A0-linearity";
      for (const auto& a : roots_upto(n, r))
        for (const auto& v : b_sum().at(a).lattice.basis()) {
          ++rep.instances;
          const QVector y = phi(a, v);
          if (!b_tensor().at(a).lattice.contains(y)) {
            json w = witness(a, "Φ of a lattice vector is outside L(λ)⊗L(μ)");
            w["vector"] = vec_json(v);
            w["image"] = vec_json(y);
            rep.failures.push_back(std::move(w));
          }
        }
      break;
    case 'F':
      rep.note = "checked on an A0-basis of L(λ)⊗L(μ), which suffices by A0-linearity";
      for (const auto& a : roots_upto(n, r))
        for (const auto& v : b_tensor().at(a).lattice.basis()) {
          ++rep.instances;
          const QVector y = psi(a, v);
          if (!b_sum().at(a).lattice.contains(y)) {
            json w = witness(a, "Ψ of a lattice vector is outside L(λ+μ)");
            w["vector"] = vec_json(v);
            w["image"] = vec_json(y);
            rep.failures.push_back(std::move(w));
          }
        }
      break;
    case 'G':
      for (const auto& a : roots_upto(n, r)) {
        const auto& els = b_tensor().at(a).elements;
        for (std::size_t k = 0; k < els.size(); ++k) {
          ++rep.instances;
          const QVector y = psi(a, b_tensor().lift_element(a, k));
          const int t = classify(b_sum(), a, y);
          if (t < -1) {
            json w = witness(a, std::string("Ψ(b ⊗ b') is ") + class_name(t));
            w["element"] = rat_json(els[k]);
            w["image"] = vec_json(y);
            rep.failures.push_back(std::move(w));
          }
        }
      }
      break;
    case 'L':
      for (const auto& a : roots_upto(n, r)) {
        if (v_lam().dim(a) == 0) continue;
        ++rep.instances;
        const QMatrix pi = pi_matrix(um(), v_lam(), a);
        std::vector<QVector> img;
        for (const auto& p : b_inf().at(a).lattice.basis()) img.push_back(pi * p);
        bool inside = true;
        for (const auto& y : img)
          if (!b_lam().at(a).lattice.contains(y)) {
            json w = witness(a, "π_λ of a vector of L(∞) is outside L(λ)");
            w["image"] = vec_json(y);
            rep.failures.push_back(std::move(w));
            inside = false;
            break;
          }
        if (!inside) continue;
        const Lattice span(dvr_lattice_basis(img, v_lam().dim(a)).basis);
        for (const auto& v : b_lam().at(a).lattice.basis())
          if (!span.contains(v)) {
            json w = witness(a, "a vector of L(λ) is not in π_λ(L(∞))");
            w["vector"] = vec_json(v);
            rep.failures.push_back(std::move(w));
            break;
          }
      }
      break;
    case 'M':
      for (const auto& a : roots_upto(n, r))
        for (int i = 0; i < n; ++i) {
          if (a[i] == 0 || v_lam().dim(a) == 0) continue;
          const RootVec b = shifted(a, i, -1);
          if (v_lam().dim(b) == 0) continue;
          const QMatrix pib = pi_matrix(um(), v_lam(), b);
          const QMatrix pia = pi_matrix(um(), v_lam(), a);
          for (const auto& p : b_inf().at(b).lattice.basis()) {
            ++rep.instances;
            const QVector lhs = v_lam().strings(i, b).ftil * (pib * p);
            const QVector rhs = pia * (um().strings(i, b).ftil * p);
            const QVector diff = add(lhs, scale(ScalarQ(-1), rhs));
            const QVector co = b_lam().at(a).lattice.coordinates(diff);
            if (val0(co) < 1) {
              json w = witness(a, "f~(P v_λ) and (f~P) v_λ differ modulo qL(λ)");
              w["i"] = d_.label(i);
              w["P"] = vec_json(p);
              w["difference_lattice_coords"] = vec_json(co);
              rep.failures.push_back(std::move(w));
            }
          }
        }
      break;
    case 'N':
      for (const auto& a : roots_upto(n, r)) {
        const auto& binf = b_inf().at(a).elements;
        if (binf.empty()) continue;
        const QMatrix pi = pi_matrix(um(), v_lam(), a);
        std::vector<int> hit(b_lam().at(a).elements.size(), 0);
        for (std::size_t k = 0; k < binf.size(); ++k) {
          ++rep.instances;
          const int t = classify(b_lam(), a, pi * b_inf().lift_element(a, k));
          if (t >= 0) ++hit[static_cast<std::size_t>(t)];
          if (t < -1) {
            json w = witness(a, std::string("π̄_λ(b) is ") + class_name(t));
            w["b"] = rat_json(binf[k]);
            rep.failures.push_back(std::move(w));
          }
        }
        for (std::size_t t = 0; t < hit.size(); ++t)
          if (hit[t] != 1) {
            json w = witness(a, "an element of B(λ) has " + std::to_string(hit[t]) + " preimages under π̄_λ");
            w["element"] = rat_json(b_lam().at(a).elements[t]);
            rep.failures.push_back(std::move(w));
          }
      }
      break;
    case 'O':
      for (const auto& a : roots_upto(n, r)) {
        const auto& binf = b_inf().at(a).elements;
        if (binf.empty() || v_lam().dim(a) == 0) continue;
        const QMatrix pi = pi_matrix(um(), v_lam(), a);
        for (std::size_t k = 0; k < binf.size(); ++k) {
          const QVector x = b_inf().lift_element(a, k);
          auto pb = try_residue(b_lam(), a, pi * x);
          if (!pb || is_zero(*pb)) continue;
          for (int i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            ++rep.instances;
            const RootVec b = shifted(a, i, -1);
            auto lhs = try_residue(b_lam(), b, v_lam().strings(i, a).etil * b_lam().lift(a, *pb));
            std::optional<RatVector> rhs;
            auto eb = try_residue(b_inf(), b, um().strings(i, a).etil * x);
            if (eb) rhs = try_residue(b_lam(), b, pi_matrix(um(), v_lam(), b) * b_inf().lift(b, *eb));
            if (!lhs || !rhs || *lhs != *rhs) {
              json w = witness(a, "e~ π̄_λ(b) differs from π̄_λ(e~ b)");
              w["i"] = d_.label(i);
              w["b"] = rat_json(binf[k]);
              if (lhs) w["e_pi_b"] = rat_json(*lhs);
              if (rhs) w["pi_e_b"] = rat_json(*rhs);
              rep.failures.push_back(std::move(w));
            }
          }
        }
      }
      break;
    default:
      throw Error(ErrorKind::InvalidArgument, std::string("unknown statement '") + id + "'");
  }
  return rep;
}

StatementReport check_statement(char id, const CartanDatum& d, const std::vector<int>& lam,
                                const std::vector<int>& mu, int r) {
  GrandLoop g(d, lam, mu, r);
  return g.check(id);
}

namespace {

StatementReport blank(const std::string& id, const CartanDatum& d, const std::vector<int>& lam, int r) {
  StatementReport rep;
  rep.id = id;
  rep.datum = d.name();
  rep.lam = lam;
  rep.r = r;
  return rep;
}

std::vector<int> lam_of(GradedModule& m) {
  if (auto* v = dynamic_cast<VModule*>(&m)) return v->lam();
  return {};
}

}  // namespace

StatementReport string_count_check(VModule& v, const Crystal& c, int max_n) {
  const CartanDatum& d = v.datum();
  StatementReport rep = blank("string_count", d, v.lam(), c.depth());
  for (const auto& [a, wc] : c.weights()) {
    if (wc.nodes.empty()) continue;
    for (int i = 0; i < d.n(); ++i)
      for (int n = 1; n <= max_n; ++n) {
        ++rep.instances;
        std::size_t dim = 0;
        if (a[i] >= n) dim = rank(v.fpow(i, shifted(a, i, -n), n));
        std::size_t count = 0;
        for (int id : wc.nodes)
          if (c.node(id).eps[i] >= n) ++count;
        if (dim != count) {
          json w = witness(a, "dim f_i^n V differs from the number of b with ε_i(b) >= n");
          w["i"] = d.label(i);
          w["n"] = n;
          w["dim"] = dim;
          w["count"] = count;
          rep.failures.push_back(std::move(w));
        }
      }
  }
  return rep;
}

StatementReport orthogonality_check(GradedModule& m, const Crystal& c) {
  const CartanDatum& d = m.datum();
  StatementReport rep = blank("orthogonality", d, lam_of(m), c.depth());
  bool all_nonzero = true;
  for (int i = 0; i < d.n(); ++i) all_nonzero = all_nonzero && d.a(i, i) != 0;
  for (const auto& [a, wc] : c.weights()) {
    const std::size_t N = wc.elements.size();
    std::vector<QVector> lifts;
    for (std::size_t k = 0; k < N; ++k) lifts.push_back(c.lift_element(a, k));
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t l = k; l < N; ++l) {
        ++rep.instances;
        const ScalarQ f = m.form(a, lifts[k], lifts[l]);
        std::string bad;
        Rational v0;
        if (f.val0() < 0) {
          bad = "the form is not in A0 on L";
        } else {
          v0 = f.eval0();
          if (k != l && v0 != 0) bad = "distinct elements are not orthogonal";
          if (k == l && (v0 <= 0 || v0.get_den() != 1)) bad = "(b,b)_0 is not a positive integer";
          if (k == l && all_nonzero && v0 != 1) bad = "(b,b)_0 is not 1 although every a_ii != 0";
        }
        if (!bad.empty()) {
          json w = witness(a, bad);
          w["b"] = rat_json(wc.elements[k]);
          w["b_prime"] = rat_json(wc.elements[l]);
          w["form"] = f.to_string();
          rep.failures.push_back(std::move(w));
        }
      }
  }
  return rep;
}

StatementReport adjoint_check(GradedModule& m, const Crystal& c) {
  const CartanDatum& d = m.datum();
  StatementReport rep = blank("adjoint", d, lam_of(m), c.depth());
  for (const auto& [a, wc] : c.weights())
    for (int i = 0; i < d.n(); ++i) {
      if (a[i] == 0 || m.dim(a) == 0) continue;
      const RootVec b = shifted(a, i, -1);
      if (m.dim(b) == 0) continue;
      const StringData& lo = m.strings(i, b);
      const StringData& hi = m.strings(i, a);
      for (const auto& u : c.at(b).lattice.basis())
        for (const auto& v : wc.lattice.basis()) {
          ++rep.instances;
          const ScalarQ lhs = m.form(a, lo.ftil * u, v);
          const ScalarQ rhs = m.form(b, u, lo.q_op * (hi.etil * v));
          std::string bad;
          if (lhs.val0() < 0 || rhs.val0() < 0)
            bad = "the form is not in A0 on lattice vectors";
          else if (lhs.eval0() != rhs.eval0())
            bad = "(f~u, v) and (u, Q_i e~v) differ at q = 0";
          if (!bad.empty()) {
            json w = witness(a, bad);
            w["i"] = d.label(i);
            w["u"] = vec_json(u);
            w["v"] = vec_json(v);
            w["lhs"] = lhs.to_string();
            w["rhs"] = rhs.to_string();
            rep.failures.push_back(std::move(w));
          }
        }
    }
  return rep;
}

StatementReport star_check(UmModule& um, const Crystal& c, int samples, unsigned long long seed) {
  const CartanDatum& d = um.datum();
  StatementReport rep = blank("star", d, {}, c.depth());
  std::vector<RootVec> weights;
  for (const auto& [a, wc] : c.weights())
    if (height(a) > 0 && wc.lattice.dim() > 0) weights.push_back(a);
  if (weights.empty()) return rep;
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const ScalarQ one_plus_q(LaurentPoly::parse("1 + q"));
  for (int s = 0; s < samples; ++s) {
    const RootVec& a = weights[static_cast<std::size_t>(pick(0, static_cast<int>(weights.size()) - 1))];
    const Lattice& lat = c.at(a).lattice;
    const std::size_t lead = static_cast<std::size_t>(pick(0, static_cast<int>(lat.dim()) - 1));
    QVector u(lat.basis().front().size());
    for (std::size_t k = 0; k < lat.dim(); ++k) {
      ScalarQ coef = k == lead ? ScalarQ(pick(1, 3)) : ScalarQ(pick(-3, 3)) * ScalarQ::q_power(pick(0, 2));
      if (pick(0, 1)) coef /= one_plus_q;
      u = add(u, scale(coef, lat.basis()[k]));
    }
    ++rep.instances;
    const QVector us = um.coords(star(um.element(u, a)), a);
    const ScalarQ f = um.form(a, u, u);
    const ScalarQ fs = um.form(a, us, us);
    const QVector uq = scale(ScalarQ::q_power(-1), u);
    std::string bad;
    if (f.val0() < 0)
      bad = "(u,u) is not in A0";
    else if (fs != f)
      bad = "(u*,u*) differs from (u,u)";
    else if (!lat.contains(us))
      bad = "u* is outside L(∞)";
    else if (um.form(a, uq, uq).val0() >= 0 || lat.contains(uq))
      bad = "q^{-1}u passes the membership test";
    if (!bad.empty()) {
      json w = witness(a, bad);
      w["u"] = vec_json(u);
      w["u_star"] = vec_json(us);
      w["form"] = f.to_string();
      rep.failures.push_back(std::move(w));
    }
  }
  return rep;
}

StatementReport pq_congruence_check(const CartanDatum& d, int depth, int bound, int m) {
  const std::vector<int> lam(static_cast<std::size_t>(d.n()), bound);
  StatementReport rep = blank("pq_congruence", d, lam, depth);
  rep.note = "λ(h_i) = " + std::to_string(bound) + ", congruence modulo q^" + std::to_string(m);
  UmModule um(d);
  VModule v(d, lam);
  for (const auto& a : roots_upto(d.n(), depth)) {
    if (um.dim(a) == 0) continue;
    ScalarQ c(1);
    for (int i = 0; i < d.n(); ++i) {
      const ScalarQ f = ScalarQ(1) - ScalarQ::q_power(2 * d.s(i));
      for (int k = 0; k < a[i]; ++k) c /= f;
    }
    const QMatrix pi = pi_matrix(um, v, a);
    const QMatrix gv = pi.transpose() * (v.gram(a) * pi);
    const QMatrix& gu = um.gram(a);
    for (std::size_t r = 0; r < gu.rows(); ++r)
      for (std::size_t s = 0; s < gu.cols(); ++s) {
        ++rep.instances;
        const ScalarQ diff = gv.at(r, s) - c * gu.at(r, s);
        if (diff.val0() < m) {
          json w = witness(a, "(P v_λ, Q v_λ) - Π(1-q_i^2)^{-1}(P,Q) has order below m");
          w["P"] = word_to_string(um.basis_word(a, r), &d);
          w["Q"] = word_to_string(um.basis_word(a, s), &d);
          w["difference"] = diff.to_string();
          rep.failures.push_back(std::move(w));
        }
      }
  }
  return rep;
}

StatementReport key_lemma_check(const CartanDatum& d, const std::vector<int>& mu, int depth) {
  StatementReport rep = blank("key_lemma", d, {}, depth);
  rep.mu = mu;
  const int n = d.n();
  std::map<Index, std::unique_ptr<GrandLoop>> loops;
  for (int len = 2; len <= depth; ++len) {
    Word w(static_cast<std::size_t>(len), 0);
    while (true) {
      int t = len - 2;
      while (t >= 0 && w[t] == w[len - 1]) --t;
      if (t >= 0) {
        const Index it = w[t];
        auto& g = loops[it];
        if (!g) {
          std::vector<int> lam(static_cast<std::size_t>(n), 0);
          lam[it] = 1;
          g = std::make_unique<GrandLoop>(d, lam, mu, depth);
        }
        TensorModule& tm = g->tensor();
        const Crystal& bt = g->b_tensor();
        ++rep.instances;
        QVector x{ScalarQ(1)};
        RootVec cur(static_cast<std::size_t>(n), 0);
        for (auto p = w.rbegin(); p != w.rend(); ++p) {
          x = tm.strings(*p, cur).ftil * x;
          ++cur[*p];
        }
        auto r = try_residue(bt, cur, x);
        std::string bad;
        if (!r) {
          bad = "the f~-word leaves L(λ)⊗L(μ)";
        } else if (!is_zero(*r)) {
          if (bt.find(cur, *r) < 0) {
            bad = "the residue is not a pure tensor b ⊗ b'";
          } else {
            // The element sits in one block; both factor weights must be nonzero.
            for (const auto& blk : tm.blocks(cur)) {
              bool in = false;
              for (std::size_t k = blk.offset; k < blk.offset + blk.d1 * blk.d2; ++k) in = in || (*r)[k] != 0;
              if (in && (height(blk.beta) == 0 || height(blk.gamma) == 0))
                bad = "a factor of b ⊗ b' has weight zero offset";
            }
          }
        }
        if (!bad.empty()) {
          json wj = witness(cur, bad);
          wj["word"] = word_to_string(w, &d);
          wj["t"] = t + 1;
          wj["vector"] = vec_json(x);
          rep.failures.push_back(std::move(wj));
        }
      }
      int k = len - 1;
      while (k >= 0 && w[k] == n - 1) w[k--] = 0;
      if (k < 0) break;
      ++w[k];
    }
  }
  return rep;
}

StatementReport phi_chain_check(const Crystal& c) {
  const CartanDatum& d = c.module().datum();
  StatementReport rep = blank("phi_chain", d, lam_of(c.module()), c.depth());
  const CrystalGraph& g = c.graph();
  for (const auto& node : g.nodes()) {
    const int h = height(node.wt.alpha);
    for (int i = 0; i < d.n(); ++i) {
      const ExtInt& phi = node.phi[i];
      std::string bad;
      if (d.is_real(i)) {
        const int p = phi.value();
        if (p < 0) {
          bad = "φ_i is negative";
        } else if (h + p < c.depth()) {
          ++rep.instances;
          int len = 0;
          for (auto t = g.f_target(node.id, i); t; t = g.f_target(*t, i)) ++len;
          if (len != p) bad = "the f~_i-string has length " + std::to_string(len);
        }
      } else if (h < c.depth()) {
        ++rep.instances;
        const bool moves = g.f_target(node.id, i).has_value();
        if (moves != phi.is_inf()) bad = "f~_i b != 0 does not match φ_i(b) = inf";
      }
      if (!bad.empty()) {
        json w = witness(node.wt.alpha, bad);
        w["node"] = node.id;
        w["i"] = d.label(i);
        w["phi"] = phi.to_string();
        rep.failures.push_back(std::move(w));
      }
    }
  }
  return rep;
}

StatementReport anomaly_check(const Crystal& c, const std::string& what) {
  StatementReport rep = blank("anomalies:" + what, c.module().datum(), lam_of(c.module()), c.depth());
  rep.instances = c.graph().size();
  for (const auto& a : c.anomalies()) rep.failures.push_back(json{{"what", a}});
  return rep;
}

bool SuiteReport::pass() const {
  if (vacuous || !errors.empty() || !unexercised.empty()) return false;
  return std::all_of(reports.begin(), reports.end(), [](const StatementReport& r) { return r.pass(); });
}

json SuiteReport::to_json() const {
  json j{{"pass", pass()}, {"vacuous", vacuous}, {"unexercised", unexercised}, {"errors", errors}};
  j["reports"] = json::array();
  for (const auto& r : reports) j["reports"].push_back(r.to_json());
  return j;
}

std::string SuiteReport::to_text() const {
  std::ostringstream out;
  auto vec = [](const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s + ")";
  };
  std::size_t failed = 0;
  for (const auto& r : reports) {
    out << (r.pass() ? "PASS " : "FAIL ") << r.id << "(" << r.r << ") " << r.datum;
    if (!r.lam.empty()) out << " lambda=" << vec(r.lam);
    if (!r.mu.empty()) out << " mu=" << vec(r.mu);
    out << ": " << r.instances << " instances";
    if (r.vacuous()) out << " (vacuous)";
    out << "\n";
    if (!r.pass()) {
      ++failed;
      out << "  " << r.failures.size() << " failure(s); first witness: " << r.failures.front().dump() << "\n";
    }
  }
  for (const auto& e : errors) out << "ERROR " << e << "\n";
  for (const auto& u : unexercised) out << "UNEXERCISED " << u << ": no instance at the configured depths\n";
  if (vacuous) out << "VACUOUS: the configuration requests no checks\n";
  out << (pass() ? "suite passed" : "suite FAILED") << ": " << reports.size() << " reports, " << failed
      << " failing";
  if (failed) out << "; the statements are theorems, so a failure means an implementation bug or a corrupted input";
  out << "\n";
  return out.str();
}

namespace {

const std::vector<std::string> kAllInvariants = {"anomalies",   "maps",          "string_count",
                                                 "orthogonality", "adjoint",     "star",
                                                 "pq_congruence", "key_lemma",   "phi_chain",
                                                 "weight_constraints"};

std::string statement_list(const json& j) {
  std::string s;
  if (j.is_string()) {
    s = j.get<std::string>();
  } else {
    for (const auto& x : j) s += x.get<std::string>();
  }
  for (char c : s)
    if (c < 'A' || c > 'O') throw Error(ErrorKind::InvalidArgument, std::string("unknown statement '") + c + "'");
  return s;
}

std::vector<std::string> invariant_list(const json& j) {
  std::vector<std::string> out = j.get<std::vector<std::string>>();
  for (const auto& s : out)
    if (s != "global" && std::find(kAllInvariants.begin(), kAllInvariants.end(), s) == kAllInvariants.end())
      throw Error(ErrorKind::InvalidArgument, "unknown invariant '" + s + "'");
  return out;
}

// Ψ∘Φ = id, adjointness of Ψ and Φ, and S∘f~ ≡ f~∘S modulo qL(λ).
StatementReport maps_check(GrandLoop& g) {
  const CartanDatum& d = g.datum();
  StatementReport rep = blank("maps", d, g.lam(), g.depth());
  rep.mu = g.mu();
  for (const auto& a : roots_upto(d.n(), g.depth())) {
    if (g.v_sum().dim(a) == 0) continue;
    ++rep.instances;
    const QMatrix& phi = g.phi_matrix(a);
    const QMatrix& psi = g.psi_matrix(a);
    if (!(psi * phi == QMatrix::identity(phi.cols())))
      rep.failures.push_back(witness(a, "Ψ∘Φ is not the identity"));
    if (!(g.tensor().gram(a) * phi == psi.transpose() * g.v_sum().gram(a)))
      rep.failures.push_back(witness(a, "Ψ is not adjoint to Φ"));
  }
  for (const auto& a : roots_upto(d.n(), g.depth() - 1))
    for (int i = 0; i < d.n(); ++i) {
      const RootVec up = shifted(a, i, 1);
      const QMatrix s_a = g.s_matrix(a);
      const QMatrix s_up = g.s_matrix(up);
      if (g.v_lam().dim(up) == 0) continue;
      for (const auto& w : g.b_tensor().at(a).lattice.basis()) {
        ++rep.instances;
        const QVector lhs = s_up * (g.tensor().strings(i, a).ftil * w);
        const QVector rhs = g.v_lam().strings(i, a).ftil * (s_a * w);
        const QVector co = g.b_lam().at(up).lattice.coordinates(add(lhs, scale(ScalarQ(-1), rhs)));
        if (val0(co) < 1) {
          json wj = witness(a, "S∘f~ and f~∘S differ modulo qL(λ)");
          wj["i"] = d.label(i);
          wj["w"] = vec_json(w);
          rep.failures.push_back(std::move(wj));
        }
      }
    }
  return rep;
}

StatementReport weight_constraint_check(VModule& v, int depth) {
  StatementReport rep = blank("weight_constraints", v.datum(), v.lam(), depth);
  for (const auto& a : roots_upto(v.datum().n(), depth))
    if (v.dim(a) > 0) ++rep.instances;
  for (const auto& w : check_weight_constraints(v, depth)) {
    json j = witness(w.alpha, w.rule);
    j["i"] = v.datum().label(w.i);
    rep.failures.push_back(std::move(j));
  }
  return rep;
}

void global_checks(GrandLoop& g, int budget, std::vector<StatementReport>& out) {
  const CartanDatum& d = g.datum();
  StatementReport rep = blank("global", d, g.lam(), g.depth());
  const Crystal& c = g.b_lam();
  const auto gb = global_basis(g.v_lam(), c, budget);
  for (const auto& e : gb) {
    ++rep.instances;
    if (!e.certified())
      rep.failures.push_back(json{{"node", e.node},
                                  {"alpha", e.alpha},
                                  {"what", "certificate failed"},
                                  {"laurent", e.laurent},
                                  {"bar_fixed", e.bar_fixed},
                                  {"residue_ok", e.residue_ok}});
  }
  for (const auto& [a, wc] : c.weights()) {
    std::vector<CheckReport> cr{balanced_check(g.v_lam(), c, gb, a), transition_check(g.v_lam(), c, gb, a)};
    for (int i = 0; i < d.n(); ++i)
      for (int n = 1; n <= 2; ++n) cr.push_back(integral_string_check(g.v_lam(), c, gb, i, n, a));
    for (const auto& x : cr)
      for (const auto& f : x.failures) rep.failures.push_back(json{{"alpha", a}, {"check", x.name}, {"what", f}});
  }
  out.push_back(std::move(rep));
}

}  // namespace

SuiteReport run_suite(const json& config) {
  SuiteReport suite;
  const int depth = config.value("depth", 3);
  const unsigned long long seed = config.value("seed", 1ULL);
  const int bound = config.value("large_lambda_bound", depth + 2);
  const std::string default_stmts = statement_list(config.value("statements", json("ABCDEFGHIJKLMNO")));
  const std::vector<std::string> default_invs = invariant_list(config.value("invariants", json(kAllInvariants)));
  const int star_samples = config.value("star_samples", 100);
  const int pq_bound = config.value("pq_bound", 4 * depth + 4);
  const int pq_order = config.value("pq_order", 2);
  const int budget = config.value("degree_budget", 10);
  std::map<std::string, std::size_t> stmt_instances;

  const json runs = config.value("runs", json::array());
  bool requested = false;
  for (const auto& run : runs) {
    const CartanDatum d =
        run.at("datum").is_string() ? CartanDatum::load(run.at("datum").get<std::string>()) : CartanDatum::from_json(run.at("datum"));
    const int r = run.value("depth", depth);
    const std::string stmts = run.contains("statements") ? statement_list(run.at("statements")) : default_stmts;
    const std::vector<std::string> invs =
        run.contains("invariants") ? invariant_list(run.at("invariants")) : default_invs;
    if (!stmts.empty() || !invs.empty()) requested = true;
    const std::vector<int> lam = run.at("lambda").get<std::vector<int>>();
    const std::vector<int> mu = run.value("mu", lam);
    std::vector<std::pair<std::vector<int>, std::vector<int>>> weights{{lam, mu}};
    if (run.value("large_lambda", false)) {
      const std::vector<int> big(static_cast<std::size_t>(d.n()), std::max(bound, r + 2));
      weights.emplace_back(big, big);
    }
    for (std::size_t wi = 0; wi < weights.size(); ++wi) {
      const auto& [l, m] = weights[wi];
      const bool large = wi > 0;
      try {
        GrandLoop g(d, l, m, r);
        if (run.contains("corrupt") && !large) {
          const json& cj = run.at("corrupt");
          g.corrupt(Corruption{cj.value("target", "lambda"), cj.at("alpha").get<RootVec>(),
                               cj.value("vector", std::size_t{0})});
        }
        for (char id : stmts) {
          StatementReport rep = g.check(id);
          if (large) rep.note += std::string(rep.note.empty() ? "" : "; ") + "large λ (all pairings >= " +
                                 std::to_string(l.front()) + ")";
          stmt_instances[rep.id] += rep.instances;
          suite.reports.push_back(std::move(rep));
        }
        auto has = [&](const char* s) { return std::find(invs.begin(), invs.end(), s) != invs.end(); };
        if (has("anomalies")) {
          suite.reports.push_back(anomaly_check(g.b_lam(), "B(lambda)"));
          suite.reports.push_back(anomaly_check(g.b_inf(), "B(inf)"));
          suite.reports.push_back(anomaly_check(g.b_tensor(), "B(lambda)xB(mu)"));
        }
        if (has("maps")) suite.reports.push_back(maps_check(g));
        if (has("string_count")) suite.reports.push_back(string_count_check(g.v_lam(), g.b_lam(), 3));
        if (has("orthogonality")) {
          suite.reports.push_back(orthogonality_check(g.v_lam(), g.b_lam()));
          suite.reports.push_back(orthogonality_check(g.um(), g.b_inf()));
        }
        if (has("adjoint")) suite.reports.push_back(adjoint_check(g.v_lam(), g.b_lam()));
        if (has("phi_chain")) suite.reports.push_back(phi_chain_check(g.b_lam()));
        if (has("weight_constraints")) suite.reports.push_back(weight_constraint_check(g.v_lam(), r));
        if (has("global")) global_checks(g, budget, suite.reports);
        if (!large) {
          if (has("star")) suite.reports.push_back(star_check(g.um(), g.b_inf(), star_samples, seed));
          if (has("pq_congruence")) suite.reports.push_back(pq_congruence_check(d, r, pq_bound, pq_order));
          if (has("key_lemma")) suite.reports.push_back(key_lemma_check(d, m, r));
        }
      } catch (const Error& e) {
        suite.errors.push_back(d.name() + ": " + e.what());
      }
    }
    for (char id : stmts) stmt_instances.emplace(std::string(1, id), 0);
  }
  for (const auto& [id, count] : stmt_instances)
    if (count == 0) suite.unexercised.push_back(id);
  suite.vacuous = !requested;
  return suite;
}

}  // namespace qcrystal
