#include "qcrystal/crystal_graph.hpp"

#include <deque>
#include <sstream>

#include "qcrystal/error.hpp"

namespace qcrystal {

using nlohmann::json;

int ExtInt::value() const {
  if (inf_) throw Error(ErrorKind::InvalidArgument, "infinite value has no integer representation");
  return v_;
}

int CrystalGraph::add_node(CrystalNode node) {
  node.id = static_cast<int>(nodes_.size());
  nodes_.push_back(std::move(node));
  out_.emplace_back(static_cast<std::size_t>(n_), -1);
  in_.emplace_back(static_cast<std::size_t>(n_), -1);
  return nodes_.back().id;
}

void CrystalGraph::add_edge(int src, int dst, Index i) {
  if (src < 0 || dst < 0 || src >= static_cast<int>(nodes_.size()) || dst >= static_cast<int>(nodes_.size()) ||
      i < 0 || i >= n_)
    throw Error(ErrorKind::InvalidArgument, "edge out of range");
  if (out_[src][i] != -1 || in_[dst][i] != -1)
    throw Error(ErrorKind::InvalidArgument, "node " + std::to_string(src) + " -> " + std::to_string(dst) +
                                                ": duplicate " + std::to_string(i) + "-edge");
  out_[src][i] = dst;
  in_[dst][i] = src;
  edges_.push_back({src, dst, i});
}

std::optional<int> CrystalGraph::f_target(int node, Index i) const {
  int t = out_.at(node).at(i);
  return t < 0 ? std::nullopt : std::optional<int>(t);
}

std::optional<int> CrystalGraph::e_target(int node, Index i) const {
  int t = in_.at(node).at(i);
  return t < 0 ? std::nullopt : std::optional<int>(t);
}

std::vector<int> CrystalGraph::sources() const {
  std::vector<int> out;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    bool src = true;
    for (int i = 0; i < n_; ++i) src = src && in_[k][i] < 0;
    if (src) out.push_back(static_cast<int>(k));
  }
  return out;
}

bool operator==(const CrystalGraph& a, const CrystalGraph& b) {
  return a.n_ == b.n_ && a.labels_ == b.labels_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_ &&
         a.meta_ == b.meta_;
}

json graph_to_json(const CrystalGraph& g) {
  json nodes = json::array(), edges = json::array();
  for (const auto& n : g.nodes()) {
    json phi = json::array(), res = json::array();
    for (const auto& p : n.phi) {
      if (p.is_inf())
        phi.push_back("inf");
      else
        phi.push_back(p.value());
    }
    for (const auto& r : n.residue) res.push_back(r.get_str());
    nodes.push_back({{"id", n.id}, {"alpha", n.wt.alpha}, {"lam", n.wt.lam}, {"eps", n.eps}, {"phi", phi},
                     {"residue", res}});
  }
  for (const auto& e : g.edges()) edges.push_back({{"src", e.src}, {"dst", e.dst}, {"i", g.labels().at(e.i)}});
  return {{"schema", "crystal/1"}, {"labels", g.labels()}, {"nodes", nodes}, {"edges", edges}, {"meta", g.meta()}};
}

CrystalGraph graph_from_json(const json& j) {
  try {
    if (j.at("schema") != "crystal/1") throw Error(ErrorKind::ParseError, "unknown schema");
    auto labels = j.at("labels").get<std::vector<std::string>>();
    CrystalGraph g(static_cast<int>(labels.size()), labels);
    for (const auto& n : j.at("nodes")) {
      CrystalNode node;
      node.wt.alpha = n.at("alpha").get<RootVec>();
      node.wt.lam = n.at("lam").get<std::vector<int>>();
      node.eps = n.at("eps").get<std::vector<int>>();
      for (const auto& p : n.at("phi")) node.phi.push_back(p.is_string() ? ExtInt::infinity() : ExtInt(p.get<int>()));
      if (n.contains("residue"))
        for (const auto& r : n.at("residue")) node.residue.emplace_back(r.get<std::string>());
      for (auto& r : node.residue) r.canonicalize();
      const int id = g.add_node(std::move(node));
      if (id != n.at("id").get<int>()) throw Error(ErrorKind::ParseError, "node ids must be 0..N-1 in order");
    }
    for (const auto& e : j.at("edges")) {
      const auto lab = e.at("i").get<std::string>();
      int i = -1;
      for (std::size_t k = 0; k < labels.size(); ++k)
        if (labels[k] == lab) i = static_cast<int>(k);
      if (i < 0) throw Error(ErrorKind::ParseError, "unknown edge label " + lab);
      g.add_edge(e.at("src").get<int>(), e.at("dst").get<int>(), i);
    }
    g.meta() = j.value("meta", json::object());
    return g;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("crystal graph: ") + e.what());
  }
}

std::string graph_to_dot(const CrystalGraph& g) {
  std::ostringstream os;
  os << "digraph crystal {\n";
  for (const auto& n : g.nodes()) {
    os << "  n" << n.id << " [label=\"";
    for (std::size_t k = 0; k < n.wt.alpha.size(); ++k) os << (k ? "," : "") << n.wt.alpha[k];
    os << "\"];\n";
  }
  for (const auto& e : g.edges())
    os << "  n" << e.src << " -> n" << e.dst << " [label=\"" << g.labels().at(e.i) << "\"];\n";
  os << "}\n";
  return os.str();
}

namespace {

bool same_label(const CrystalNode& a, const CrystalNode& b) {
  return a.wt == b.wt && a.eps == b.eps && a.phi == b.phi;
}

std::string describe(const CrystalNode& n) {
  std::string s = "alpha " + root_to_string(n.wt.alpha) + " eps (";
  for (std::size_t k = 0; k < n.eps.size(); ++k) s += (k ? "," : "") + std::to_string(n.eps[k]);
  s += ") phi (";
  for (std::size_t k = 0; k < n.phi.size(); ++k) s += (k ? "," : "") + n.phi[k].to_string();
  return s + ")";
}

// Extends the matching from (s1, s2) along f~-edges; returns false and leaves
// `why` set on the first conflict. New pairs are recorded in `added`.
bool propagate(const CrystalGraph& g1, const CrystalGraph& g2, int s1, int s2, std::vector<int>& fwd,
               std::vector<int>& bwd, std::vector<std::pair<int, int>>& added, std::string& why) {
  std::deque<std::pair<int, int>> todo;
  auto bind = [&](int a, int b) {
    if (fwd[a] == b) return true;
    if (fwd[a] >= 0 || bwd[b] >= 0) {
      why = "node " + std::to_string(a) + " cannot be matched consistently";
      return false;
    }
    if (!same_label(g1.nodes()[a], g2.nodes()[b])) {
      why = "label mismatch: " + describe(g1.nodes()[a]) + " vs " + describe(g2.nodes()[b]);
      return false;
    }
    fwd[a] = b;
    bwd[b] = a;
    added.emplace_back(a, b);
    todo.emplace_back(a, b);
    return true;
  };
  if (!bind(s1, s2)) return false;
  while (!todo.empty()) {
    auto [a, b] = todo.front();
    todo.pop_front();
    for (int i = 0; i < g1.n_indices(); ++i) {
      auto t1 = g1.f_target(a, i);
      auto t2 = g2.f_target(b, i);
      if (t1.has_value() != t2.has_value()) {
        why = "node " + std::to_string(a) + " has " + (t1 ? "an" : "no") + " outgoing " + g1.labels()[i] +
              "-edge, its image does not";
        return false;
      }
      if (t1 && !bind(*t1, *t2)) return false;
    }
  }
  return true;
}

}  // namespace

IsoResult graph_isomorphic(const CrystalGraph& g1, const CrystalGraph& g2) {
  IsoResult r;
  if (g1.n_indices() != g2.n_indices()) {
    r.certificate = "index sets differ";
    return r;
  }
  if (g1.size() != g2.size()) {
    r.certificate = "node counts differ: " + std::to_string(g1.size()) + " vs " + std::to_string(g2.size());
    return r;
  }
  if (g1.edges().size() != g2.edges().size()) {
    r.certificate = "edge counts differ: " + std::to_string(g1.edges().size()) + " vs " +
                    std::to_string(g2.edges().size());
    return r;
  }
  std::vector<int> fwd(g1.size(), -1), bwd(g2.size(), -1);
  const auto src2 = g2.sources();
  for (int s1 : g1.sources()) {
    bool matched = false;
    std::string last = "no highest-weight node with the same label";
    for (int s2 : src2) {
      if (bwd[s2] >= 0 || !same_label(g1.nodes()[s1], g2.nodes()[s2])) continue;
      std::vector<std::pair<int, int>> added;
      std::string why;
      if (propagate(g1, g2, s1, s2, fwd, bwd, added, why)) {
        matched = true;
        break;
      }
      last = why;
      for (auto [a, b] : added) fwd[a] = bwd[b] = -1;
    }
    if (!matched) {
      r.certificate = "highest-weight node " + std::to_string(s1) + " (" + describe(g1.nodes()[s1]) +
                      ") unmatched: " + last;
      return r;
    }
  }
  for (std::size_t k = 0; k < fwd.size(); ++k)
    if (fwd[k] < 0) {
      r.certificate = "node " + std::to_string(k) + " not reachable from a highest-weight node";
      return r;
    }
  for (const auto& e : g1.edges()) {
    auto t = g2.f_target(fwd[e.src], e.i);
    if (!t || *t != fwd[e.dst]) {
      r.certificate = "edge " + std::to_string(e.src) + " -> " + std::to_string(e.dst) + " not preserved";
      return r;
    }
  }
  r.isomorphic = true;
  r.witness = std::move(fwd);
  return r;
}

}  // namespace qcrystal
