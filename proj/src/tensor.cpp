#include <algorithm>
#include <deque>

#include "qcrystal/crystal.hpp"
#include "qcrystal/error.hpp"
#include "qcrystal/qnumbers.hpp"

namespace qcrystal {

TensorModule::TensorModule(GradedModule& a, GradedModule& b) : GradedModule(a.datum()), a_(a), b_(b) {
  if (a.datum().matrix() != b.datum().matrix() || a.datum().symmetrizers() != b.datum().symmetrizers())
    throw Error(ErrorKind::InvalidArgument, "tensor factors use different data");
}

WeightPoint TensorModule::weight(const RootVec& a) const {
  const RootVec z = d_.zero_root();
  std::vector<int> lam = a_.weight(z).lam;
  const auto& l2 = b_.weight(z).lam;
  for (std::size_t k = 0; k < lam.size(); ++k) lam[k] += l2[k];
  return WeightPoint{lam, a};
}

const std::vector<TensorModule::Block>& TensorModule::blocks(const RootVec& a) {
  if (auto it = blocks_.find(a); it != blocks_.end()) return it->second;
  std::vector<Block> out;
  if (is_nonneg(a)) {
    // β runs over 0 <= β <= a in lexicographic order.
    RootVec beta(a.size(), 0);
    std::size_t off = 0;
    while (true) {
      RootVec gamma = sub_roots(a, beta);
      const std::size_t d1 = a_.dim(beta), d2 = b_.dim(gamma);
      if (d1 && d2) {
        out.push_back({beta, gamma, off, d1, d2});
        off += d1 * d2;
      }
      std::size_t k = a.size();
      while (k > 0 && beta[k - 1] == a[k - 1]) beta[--k] = 0;
      if (k == 0) break;
      ++beta[k - 1];
    }
  }
  return blocks_.emplace(a, std::move(out)).first->second;
}

std::size_t TensorModule::dim(const RootVec& a) {
  const auto& bs = blocks(a);
  return bs.empty() ? 0 : bs.back().offset + bs.back().d1 * bs.back().d2;
}

namespace {

const TensorModule::Block* find_block(const std::vector<TensorModule::Block>& bs, const RootVec& beta) {
  for (const auto& b : bs)
    if (b.beta == beta) return &b;
  return nullptr;
}

}  // namespace

const QMatrix& TensorModule::f_matrix(Index i, const RootVec& a) {
  auto key = std::make_pair(i, a);
  if (auto it = f_cache_.find(key); it != f_cache_.end()) return it->second;
  RootVec up = a;
  ++up[i];
  const auto src = blocks(a);
  const auto& dst = blocks(up);
  QMatrix m(dim(up), dim(a));
  for (const auto& s : src) {
    // f_i ⊗ 1 into block (β+α_i, γ).
    RootVec b1 = s.beta;
    ++b1[i];
    if (const auto* t = find_block(dst, b1)) {
      const QMatrix& F = a_.f_matrix(i, s.beta);
      for (std::size_t r1 = 0; r1 < s.d1; ++r1)
        for (std::size_t t1 = 0; t1 < t->d1; ++t1) {
          const ScalarQ& c = F.at(t1, r1);
          if (c.is_zero()) continue;
          for (std::size_t r2 = 0; r2 < s.d2; ++r2) m.at(t->offset + t1 * t->d2 + r2, s.offset + r1 * s.d2 + r2) += c;
        }
    }
    // K_i ⊗ f_i into block (β, γ+α_i).
    if (const auto* t = find_block(dst, s.beta)) {
      const QMatrix& F = b_.f_matrix(i, s.gamma);
      const ScalarQ k = qi_pow(d_, i, a_.wt_pairing(i, s.beta));
      for (std::size_t r2 = 0; r2 < s.d2; ++r2)
        for (std::size_t t2 = 0; t2 < t->d2; ++t2) {
          const ScalarQ& c = F.at(t2, r2);
          if (c.is_zero()) continue;
          const ScalarQ kc = k * c;
          for (std::size_t r1 = 0; r1 < s.d1; ++r1) m.at(t->offset + r1 * t->d2 + t2, s.offset + r1 * s.d2 + r2) += kc;
        }
    }
  }
  return f_cache_.emplace(key, std::move(m)).first->second;
}

const QMatrix& TensorModule::e_matrix(Index i, const RootVec& a) {
  auto key = std::make_pair(i, a);
  if (auto it = e_cache_.find(key); it != e_cache_.end()) return it->second;
  RootVec down = a;
  --down[i];
  QMatrix m(a[i] > 0 ? dim(down) : 0, dim(a));
  if (a[i] > 0) {
    const auto src = blocks(a);
    const auto& dst = blocks(down);
    for (const auto& s : src) {
      // e_i ⊗ K_i^{-1} into block (β-α_i, γ).
      if (s.beta[i] > 0) {
        RootVec b1 = s.beta;
        --b1[i];
        if (const auto* t = find_block(dst, b1)) {
          const QMatrix& E = a_.e_matrix(i, s.beta);
          const ScalarQ k = qi_pow(d_, i, -b_.wt_pairing(i, s.gamma));
          for (std::size_t r1 = 0; r1 < s.d1; ++r1)
            for (std::size_t t1 = 0; t1 < t->d1; ++t1) {
              const ScalarQ& c = E.at(t1, r1);
              if (c.is_zero()) continue;
              const ScalarQ kc = k * c;
              for (std::size_t r2 = 0; r2 < s.d2; ++r2)
                m.at(t->offset + t1 * t->d2 + r2, s.offset + r1 * s.d2 + r2) += kc;
            }
        }
      }
      // 1 ⊗ e_i into block (β, γ-α_i).
      if (s.gamma[i] > 0) {
        if (const auto* t = find_block(dst, s.beta)) {
          const QMatrix& E = b_.e_matrix(i, s.gamma);
          for (std::size_t r2 = 0; r2 < s.d2; ++r2)
            for (std::size_t t2 = 0; t2 < t->d2; ++t2) {
              const ScalarQ& c = E.at(t2, r2);
              if (c.is_zero()) continue;
              for (std::size_t r1 = 0; r1 < s.d1; ++r1)
                m.at(t->offset + r1 * t->d2 + t2, s.offset + r1 * s.d2 + r2) += c;
            }
        }
      }
    }
  }
  return e_cache_.emplace(key, std::move(m)).first->second;
}

const QMatrix& TensorModule::gram(const RootVec& a) {
  if (auto it = gram_cache_.find(a); it != gram_cache_.end()) return it->second;
  QMatrix g(dim(a), dim(a));
  for (const auto& s : blocks(a)) {
    const QMatrix& g1 = a_.gram(s.beta);
    const QMatrix& g2 = b_.gram(s.gamma);
    for (std::size_t r1 = 0; r1 < s.d1; ++r1)
      for (std::size_t c1 = 0; c1 < s.d1; ++c1) {
        if (g1.at(r1, c1).is_zero()) continue;
        for (std::size_t r2 = 0; r2 < s.d2; ++r2)
          for (std::size_t c2 = 0; c2 < s.d2; ++c2)
            if (!g2.at(r2, c2).is_zero())
              g.at(s.offset + r1 * s.d2 + r2, s.offset + c1 * s.d2 + c2) = g1.at(r1, c1) * g2.at(r2, c2);
      }
  }
  return gram_cache_.emplace(a, std::move(g)).first->second;
}

QVector TensorModule::pure(const RootVec& beta, const QVector& x, const RootVec& gamma, const QVector& y) {
  const RootVec a = add_roots(beta, gamma);
  QVector out(dim(a));
  const auto* b = find_block(blocks(a), beta);
  if (!b) return out;
  for (std::size_t r1 = 0; r1 < b->d1; ++r1) {
    if (x[r1].is_zero()) continue;
    for (std::size_t r2 = 0; r2 < b->d2; ++r2)
      if (!y[r2].is_zero()) out[b->offset + r1 * b->d2 + r2] = x[r1] * y[r2];
  }
  return out;
}

WeightCrystal tensor_weight_crystal(TensorModule& t, const Crystal& c1, const Crystal& c2, const RootVec& a) {
  WeightCrystal wc;
  const std::size_t D = t.dim(a);
  std::vector<QVector> basis;
  for (const auto& s : t.blocks(a)) {
    const WeightCrystal& w1 = c1.at(s.beta);
    const WeightCrystal& w2 = c2.at(s.gamma);
    for (const auto& x : w1.lattice.basis())
      for (const auto& y : w2.lattice.basis()) basis.push_back(t.pure(s.beta, x, s.gamma, y));
    for (const auto& r1 : w1.elements)
      for (const auto& r2 : w2.elements) {
        RatVector r(D);
        for (std::size_t k1 = 0; k1 < r1.size(); ++k1)
          for (std::size_t k2 = 0; k2 < r2.size(); ++k2) r[s.offset + k1 * s.d2 + k2] = r1[k1] * r2[k2];
        wc.elements.push_back(std::move(r));
      }
  }
  wc.lattice = Lattice(std::move(basis));
  return wc;
}

AlgebraicTensor tensor_algebraic(const CartanDatum& d, const std::vector<int>& lam, const std::vector<int>& mu,
                                 int depth) {
  AlgebraicTensor out;
  out.left = std::make_unique<VModule>(d, lam);
  out.right = std::make_unique<VModule>(d, mu);
  out.left_crystal = std::make_unique<Crystal>(Crystal::generate(*out.left, depth, {{"lambda", lam}}));
  out.right_crystal = std::make_unique<Crystal>(Crystal::generate(*out.right, depth, {{"lambda", mu}}));
  out.module = std::make_unique<TensorModule>(*out.left, *out.right);
  std::map<RootVec, WeightCrystal> given;
  for (int h = 0; h <= depth; ++h)
    for (const auto& a : roots_of_height(d.n(), h))
      given.emplace(a, tensor_weight_crystal(*out.module, *out.left_crystal, *out.right_crystal, a));
  out.crystal = std::make_unique<Crystal>(
      Crystal::from_lattices(*out.module, depth, std::move(given), {{"lambda", lam}, {"mu", mu}, {"tensor", "alg"}}));
  return out;
}

TensorRule tensor_rule(const ExtInt& phi1, int eps2) {
  return TensorRule{phi1 > ExtInt(eps2), phi1 >= ExtInt(eps2)};
}

CombinatorialTensor tensor_combinatorial(const CrystalGraph& g1, int d1, const CrystalGraph& g2, int d2, int depth,
                                         const CartanDatum& d) {
  CombinatorialTensor out;
  out.graph = CrystalGraph(d.n(), d.labels());
  auto h = [](const CrystalNode& n) { return height(n.wt.alpha); };
  // Product nodes sorted by height, root order, then factor ids.
  std::map<RootVec, int> root_rank;
  for (int k = 0, hh = 0; hh <= depth; ++hh)
    for (const auto& a : roots_of_height(d.n(), hh)) root_rank[a] = k++;
  struct P {
    int hgt, rank, b1, b2;
  };
  std::vector<P> ps;
  for (const auto& n1 : g1.nodes())
    for (const auto& n2 : g2.nodes()) {
      const int hh = h(n1) + h(n2);
      if (hh > depth) continue;
      ps.push_back({hh, root_rank.at(add_roots(n1.wt.alpha, n2.wt.alpha)), n1.id, n2.id});
    }
  std::sort(ps.begin(), ps.end(), [](const P& x, const P& y) {
    return std::tie(x.hgt, x.rank, x.b1, x.b2) < std::tie(y.hgt, y.rank, y.b1, y.b2);
  });
  std::map<std::pair<int, int>, int> id;
  for (const auto& p : ps) {
    const auto& n1 = g1.nodes()[p.b1];
    const auto& n2 = g2.nodes()[p.b2];
    CrystalNode node;
    node.wt.lam = n1.wt.lam;
    for (std::size_t k = 0; k < node.wt.lam.size(); ++k) node.wt.lam[k] += n2.wt.lam[k];
    node.wt.alpha = add_roots(n1.wt.alpha, n2.wt.alpha);
    id[{p.b1, p.b2}] = out.graph.add_node(std::move(node));
    out.pairs.emplace_back(p.b1, p.b2);
  }
  auto need = [&](const CrystalNode& n, int dd, const char* side) {
    if (h(n) + 1 > dd)
      throw Error(ErrorKind::DepthInsufficient, std::string(side) + " factor node " + std::to_string(n.id) +
                                                    " at height " + std::to_string(h(n)) +
                                                    " needs f~ beyond computed depth " + std::to_string(dd));
  };
  std::map<std::pair<int, Index>, int> e_rule;
  for (const auto& p : ps) {
    const auto& n1 = g1.nodes()[p.b1];
    const auto& n2 = g2.nodes()[p.b2];
    const int src = id.at({p.b1, p.b2});
    for (int i = 0; i < d.n(); ++i) {
      const TensorRule rule = tensor_rule(n1.phi[i], n2.eps[i]);
      ++out.rule_checks;
      if (p.hgt < depth) {
        std::optional<int> t;
        if (rule.f_left) {
          need(n1, d1, "left");
          if (auto f = g1.f_target(n1.id, i)) t = id.at({*f, p.b2});
        } else {
          need(n2, d2, "right");
          if (auto f = g2.f_target(n2.id, i)) t = id.at({p.b1, *f});
        }
        if (t) out.graph.add_edge(src, *t, i);
      }
      std::optional<int> e;
      if (rule.e_left) {
        if (auto x = g1.e_target(n1.id, i)) e = id.at({*x, p.b2});
      } else {
        if (auto x = g2.e_target(n2.id, i)) e = id.at({p.b1, *x});
      }
      e_rule[{src, i}] = e.value_or(-1);
    }
  }
  for (const auto& [key, t] : e_rule)
    if (out.graph.e_target(key.first, key.second).value_or(-1) != t)
      out.anomalies.push_back("rule e~_" + d.label(key.second) + " of product node " + std::to_string(key.first) +
                              " is not inverse to f~");
  assign_eps_phi(out.graph, d);
  nlohmann::json meta;
  meta["datum"] = d.hash();
  meta["depth"] = depth;
  meta["tensor"] = "comb";
  out.graph.meta() = meta;
  return out;
}

}  // namespace qcrystal
