#include <algorithm>

#include "qcrystal/crystal.hpp"
#include "qcrystal/error.hpp"

namespace qcrystal {

bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

bool residue_greater(const RatVector& a, const RatVector& b) {
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

void assign_eps_phi(CrystalGraph& g, const CartanDatum& d) {
  auto& nodes = g.mutable_nodes();
  for (auto& node : nodes) {
    node.eps.assign(static_cast<std::size_t>(d.n()), 0);
    node.phi.assign(static_cast<std::size_t>(d.n()), ExtInt(0));
    for (int i = 0; i < d.n(); ++i) {
      int e = 0;
      for (auto t = g.e_target(node.id, i); t; t = g.e_target(*t, i)) ++e;
      node.eps[i] = e;
      const int p = pairing(d, i, node.wt);
      if (d.is_real(i))
        node.phi[i] = ExtInt(e + p);
      else
        node.phi[i] = p == 0 ? ExtInt(0) : ExtInt::infinity();
    }
  }
}

const WeightCrystal& Crystal::at(const RootVec& a) const {
  auto it = weights_.find(a);
  if (it == weights_.end())
    throw Error(ErrorKind::InvalidArgument, "weight " + root_to_string(a) + " is beyond the computed depth " +
                                                std::to_string(depth_));
  return it->second;
}

int Crystal::find(const RootVec& a, const RatVector& r) const {
  const auto& els = at(a).elements;
  auto it = std::lower_bound(els.begin(), els.end(), r, residue_greater);
  if (it == els.end() || *it != r) return -1;
  return static_cast<int>(it - els.begin());
}

Crystal Crystal::generate(GradedModule& m, int depth, nlohmann::json meta) {
  if (depth < 0) throw Error(ErrorKind::InvalidArgument, "depth must be nonnegative");
  const CartanDatum& d = m.datum();
  Crystal c;
  c.m_ = &m;
  c.depth_ = depth;
  for (int h = 0; h <= depth; ++h) {
    for (const auto& a : roots_of_height(d.n(), h)) {
      WeightCrystal wc;
      const std::size_t D = m.dim(a);
      if (h == 0) {
        QVector top(D);
        if (D) top[0] = ScalarQ(1);
        wc.lattice = Lattice(D ? std::vector<QVector>{top} : std::vector<QVector>{});
        if (D) wc.elements.push_back(RatVector{Rational(1)});
      } else if (D > 0) {
        std::vector<QVector> span;
        std::vector<std::pair<Index, QVector>> images;
        for (int i = 0; i < d.n(); ++i) {
          if (a[i] == 0) continue;
          RootVec b = a;
          --b[i];
          if (m.dim(b) == 0) continue;
          const QMatrix& ft = m.strings(i, b).ftil;
          const WeightCrystal& low = c.weights_.at(b);
          for (const auto& v : low.lattice.basis()) span.push_back(ft * v);
          for (const auto& r : low.elements) images.emplace_back(i, ft * low.lattice.lift(r));
        }
        LatticeBasis lb = dvr_lattice_basis(span, D);
        wc.lattice = Lattice(std::move(lb.basis));
        for (const auto& [i, v] : images) {
          RatVector r = wc.lattice.residue(v);
          if (!is_zero(r)) wc.elements.push_back(std::move(r));
        }
        std::sort(wc.elements.begin(), wc.elements.end(), residue_greater);
        wc.elements.erase(std::unique(wc.elements.begin(), wc.elements.end()), wc.elements.end());
      } else {
        wc.lattice = Lattice(std::vector<QVector>{});
      }
      c.weights_.emplace(a, std::move(wc));
    }
  }
  meta["mode"] = "generated";
  c.finish(std::move(meta));
  return c;
}

Crystal Crystal::from_lattices(GradedModule& m, int depth, std::map<RootVec, WeightCrystal> given,
                               nlohmann::json meta) {
  Crystal c;
  c.m_ = &m;
  c.depth_ = depth;
  for (int h = 0; h <= depth; ++h)
    for (const auto& a : roots_of_height(m.datum().n(), h)) {
      auto it = given.find(a);
      if (it == given.end())
        throw Error(ErrorKind::InvalidArgument, "no lattice supplied at " + root_to_string(a));
      std::sort(it->second.elements.begin(), it->second.elements.end(), residue_greater);
      c.weights_.emplace(a, std::move(it->second));
    }
  meta["mode"] = "given";
  c.finish(std::move(meta));
  return c;
}

void Crystal::finish(nlohmann::json meta) {
  GradedModule& m = *m_;
  const CartanDatum& d = m.datum();
  graph_ = CrystalGraph(d.n(), d.labels());
  meta["datum"] = d.hash();
  meta["depth"] = depth_;
  graph_.meta() = std::move(meta);

  // Nodes: height, then roots in roots_of_height order, then residues.
  for (int h = 0; h <= depth_; ++h)
    for (const auto& a : roots_of_height(d.n(), h)) {
      WeightCrystal& wc = weights_.at(a);
      if (wc.elements.size() != wc.lattice.dim())
        anomalies_.push_back("B at " + root_to_string(a) + " has " + std::to_string(wc.elements.size()) +
                             " elements, dimension is " + std::to_string(wc.lattice.dim()));
      wc.nodes.clear();
      for (const auto& r : wc.elements) {
        CrystalNode node;
        node.wt = m.weight(a);
        node.residue = r;
        wc.nodes.push_back(graph_.add_node(std::move(node)));
      }
    }

  auto describe = [&](const RootVec& a, std::size_t k) {
    return "node " + std::to_string(weights_.at(a).nodes[k]) + " at " + root_to_string(a);
  };

  // f~ edges, then check e~ against them.
  std::map<std::pair<int, Index>, int> e_result;  // node, i -> node or -1 for zero
  for (int h = 0; h <= depth_; ++h)
    for (const auto& a : roots_of_height(d.n(), h)) {
      const WeightCrystal& wc = weights_.at(a);
      for (std::size_t k = 0; k < wc.elements.size(); ++k) {
        const QVector x = wc.lattice.lift(wc.elements[k]);
        for (int i = 0; i < d.n(); ++i) {
          const StringData& sd = m.strings(i, a);
          if (h < depth_) {
            RootVec up = a;
            ++up[i];
            try {
              RatVector r = residue(up, sd.ftil * x);
              if (!is_zero(r)) {
                int t = find(up, r);
                if (t < 0)
                  anomalies_.push_back("f~_" + d.label(i) + " of " + describe(a, k) + " is not in B");
                else
                  graph_.add_edge(wc.nodes[k], weights_.at(up).nodes[t], i);
              }
            } catch (const Error& e) {
              if (e.kind() != ErrorKind::NotInLattice) throw;
              anomalies_.push_back("f~_" + d.label(i) + " of " + describe(a, k) + " leaves the lattice");
            }
          }
          if (a[i] > 0) {
            RootVec down = a;
            --down[i];
            try {
              RatVector r = residue(down, sd.etil * x);
              int t = -1;
              if (!is_zero(r)) {
                t = find(down, r);
                if (t < 0) {
                  anomalies_.push_back("e~_" + d.label(i) + " of " + describe(a, k) + " is not in B");
                  continue;
                }
                t = weights_.at(down).nodes[t];
              }
              e_result[{wc.nodes[k], i}] = t;
            } catch (const Error& e) {
              if (e.kind() != ErrorKind::NotInLattice) throw;
              anomalies_.push_back("e~_" + d.label(i) + " of " + describe(a, k) + " leaves the lattice");
            }
          } else {
            e_result[{wc.nodes[k], i}] = -1;
          }
        }
      }
    }
  for (const auto& [key, t] : e_result) {
    auto src = graph_.e_target(key.first, key.second);
    if (src.value_or(-1) != t)
      anomalies_.push_back("e~_" + d.label(key.second) + " of node " + std::to_string(key.first) +
                           " disagrees with the f~ edges");
  }
  assign_eps_phi(graph_, d);
}

}  // namespace qcrystal
