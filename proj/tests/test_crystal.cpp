#include <doctest.h>

#include "qcrystal/crystal.hpp"
#include "qcrystal/error.hpp"

using namespace qcrystal;

namespace {

// Checks that the graph is a single i-chain 0 -> 1 -> ... in node order.
void check_chain(const CrystalGraph& g, std::size_t len) {
  REQUIRE(g.size() == len);
  CHECK(g.edges().size() == len - 1);
  for (std::size_t l = 0; l + 1 < len; ++l) CHECK(g.f_target(static_cast<int>(l), 0) == static_cast<int>(l + 1));
}

void check_edges_lower_weight(const CrystalGraph& g) {
  for (const auto& e : g.edges()) {
    RootVec a = g.nodes()[e.src].wt.alpha;
    ++a[e.i];
    CHECK(g.nodes()[e.dst].wt.alpha == a);
    CHECK(g.nodes()[e.dst].wt.lam == g.nodes()[e.src].wt.lam);
  }
}

}  // namespace

TEST_CASE("ExtInt ordering") {
  ExtInt inf = ExtInt::infinity();
  CHECK(inf > ExtInt(1000000));
  CHECK(inf >= inf);
  CHECK_FALSE(inf > inf);
  CHECK(ExtInt(2) > ExtInt(1));
  CHECK(inf.to_string() == "inf");
  CHECK_THROWS_AS(inf.value(), Error);
}

TEST_CASE("sl2 crystals are chains") {
  CartanDatum d = CartanDatum::builtin("sl2");
  for (int m = 0; m <= 5; ++m) {
    VModule v(d, {m});
    Crystal c = Crystal::generate(v, m + 2);
    CHECK(c.anomalies().empty());
    const auto& g = c.graph();
    check_chain(g, static_cast<std::size_t>(m + 1));
    for (int l = 0; l <= m; ++l) {
      const auto& n = g.nodes()[l];
      CHECK(n.wt.alpha == RootVec{l});
      CHECK(n.eps[0] == l);
      CHECK(n.phi[0] == ExtInt(m - l));
    }
  }
}

TEST_CASE("rank-1 imaginary crystals") {
  CartanDatum d = CartanDatum::builtin("imag2");
  VModule v0(d, {0});
  Crystal c0 = Crystal::generate(v0, 4);
  CHECK(c0.graph().size() == 1);
  CHECK(c0.graph().edges().empty());
  CHECK(c0.graph().nodes()[0].phi[0] == ExtInt(0));
  VModule v3(d, {3});
  Crystal c3 = Crystal::generate(v3, 6);
  CHECK(c3.anomalies().empty());
  check_chain(c3.graph(), 7);
  for (int l = 0; l <= 6; ++l) {
    CHECK(c3.graph().nodes()[l].eps[0] == l);
    CHECK(c3.graph().nodes()[l].phi[0].is_inf());
  }
  CartanDatum h = CartanDatum::builtin("heis");
  VModule w(h, {1});
  Crystal ch = Crystal::generate(w, 4);
  CHECK(ch.anomalies().empty());
  check_chain(ch.graph(), 5);
}

TEST_CASE("B(infinity) small cases") {
  for (const char* name : {"sl2", "imag2", "heis"}) {
    CartanDatum d = CartanDatum::builtin(name);
    UmModule um(d);
    Crystal c = Crystal::generate(um, 3, {{"lambda", "inf"}});
    CHECK(c.anomalies().empty());
    check_chain(c.graph(), 4);
    for (int l = 0; l <= 3; ++l) {
      CHECK(c.graph().nodes()[l].eps[0] == l);
      CHECK(c.graph().nodes()[l].wt.lam == std::vector<int>{0});
    }
    // φ on B(∞): ε + <h, -lα> for real, ∞ once the pairing is positive for imaginary.
    if (d.is_real(0))
      CHECK(c.graph().nodes()[2].phi[0] == ExtInt(2 - 4));
    else if (d.a(0, 0) < 0)
      CHECK(c.graph().nodes()[2].phi[0].is_inf());
    else
      CHECK(c.graph().nodes()[2].phi[0] == ExtInt(0));
  }
  CartanDatum d = CartanDatum::builtin("gkm2");
  UmModule um(d);
  Crystal c = Crystal::generate(um, 3);
  CHECK(c.anomalies().empty());
  check_edges_lower_weight(c.graph());
  for (const auto& [a, wc] : c.weights()) CHECK(wc.elements.size() == um.dim(a));
}

TEST_CASE("#B equals dim for rank 2 and monster3") {
  struct Case {
    const char* name;
    std::vector<int> lam;
    int depth;
  };
  for (const Case& cs : {Case{"gkm2", {1, 1}, 4}, Case{"gkm2", {0, 1}, 4}, Case{"gkm2", {2, 0}, 3},
                         Case{"monster3", {1, 0, 0}, 3}, Case{"monster3", {0, 1, 0}, 3}}) {
    CartanDatum d = CartanDatum::builtin(cs.name);
    VModule v(d, cs.lam);
    Crystal c = Crystal::generate(v, cs.depth);
    CAPTURE(cs.name);
    CHECK(c.anomalies().empty());
    for (const auto& [a, wc] : c.weights()) CHECK(wc.elements.size() == v.dim(a));
    check_edges_lower_weight(c.graph());
    CHECK(c.graph().sources().size() == 1);
  }
}

TEST_CASE("serialization") {
  CrystalGraph empty(1, {"1"});
  auto j = graph_to_json(empty);
  CHECK(j["nodes"].empty());
  CHECK(j["edges"].empty());
  CHECK(j["schema"] == "crystal/1");
  CartanDatum d = CartanDatum::builtin("sl2");
  VModule v(d, {1});
  Crystal c = Crystal::generate(v, 2);
  auto jc = graph_to_json(c.graph());
  CHECK(jc["nodes"].size() == 2);
  REQUIRE(jc["edges"].size() == 1);
  CHECK(jc["edges"][0]["i"] == "1");
  CHECK(graph_from_json(jc) == c.graph());
  CHECK(graph_from_json(nlohmann::json::parse(jc.dump())) == c.graph());
  const std::string dot = graph_to_dot(c.graph());
  CHECK(dot.find("n0 -> n1 [label=\"1\"]") != std::string::npos);
  CHECK(dot == graph_to_dot(graph_from_json(jc)));
  CartanDatum im = CartanDatum::builtin("imag2");
  VModule w(im, {1});
  Crystal ci = Crystal::generate(w, 2);
  auto ji = graph_to_json(ci.graph());
  CHECK(ji["nodes"][1]["phi"][0] == "inf");
  CHECK(graph_from_json(ji) == ci.graph());
  CartanDatum g2 = CartanDatum::builtin("gkm2");
  VModule x(g2, {1, 1});
  Crystal cx = Crystal::generate(x, 3);
  CHECK(graph_from_json(graph_to_json(cx.graph())) == cx.graph());
  CHECK_THROWS_AS(graph_from_json(nlohmann::json{{"schema", "other"}}), Error);
}

TEST_CASE("graph isomorphism") {
  CartanDatum d = CartanDatum::builtin("sl2");
  VModule v2(d, {2}), v1(d, {1});
  Crystal c2 = Crystal::generate(v2, 3), c1 = Crystal::generate(v1, 3);
  auto self = graph_isomorphic(c2.graph(), c2.graph());
  CHECK(self.isomorphic);
  CHECK(self.witness == std::vector<int>{0, 1, 2});
  auto diff = graph_isomorphic(c2.graph(), c1.graph());
  CHECK_FALSE(diff.isomorphic);
  CHECK(diff.certificate.find("node counts") != std::string::npos);
}

TEST_CASE("tensor rule examples") {
  // sl2, λ = μ = 1: f~(v ⊗ v) acts left, f~(f~v ⊗ v) acts right.
  CHECK(tensor_rule(ExtInt(1), 0).f_left);
  CHECK_FALSE(tensor_rule(ExtInt(0), 0).f_left);
  CHECK(tensor_rule(ExtInt(0), 0).e_left);
  CHECK(tensor_rule(ExtInt::infinity(), 1000).f_left);
  CHECK(tensor_rule(ExtInt::infinity(), 1000).e_left);
  // Exactly one branch per operator: f acts left or right, and e likewise.
  for (int p = 0; p <= 3; ++p)
    for (int e = 0; e <= 3; ++e) {
      TensorRule r = tensor_rule(ExtInt(p), e);
      CHECK(r.f_left == (p > e));
      CHECK(r.e_left == (p >= e));
    }
}

TEST_CASE("sl2 tensor product, both constructions") {
  CartanDatum d = CartanDatum::builtin("sl2");
  VModule v(d, {1});
  Crystal c = Crystal::generate(v, 3);
  auto comb = tensor_combinatorial(c.graph(), 3, c.graph(), 3, 3, d);
  CHECK(comb.anomalies.empty());
  CHECK(comb.graph.size() == 4);
  CHECK(comb.graph.sources().size() == 2);
  auto alg = tensor_algebraic(d, {1}, {1}, 3);
  CHECK(alg.crystal->anomalies().empty());
  CHECK(alg.crystal->graph().size() == 4);
  auto iso = graph_isomorphic(comb.graph, alg.crystal->graph());
  CHECK_MESSAGE(iso.isomorphic, iso.certificate);
  // v ⊗ v is the unique node at α = 0 without incoming edges.
  CHECK(alg.crystal->graph().nodes()[0].wt.alpha == RootVec{0});
  CHECK(alg.crystal->graph().e_target(0, 0) == std::nullopt);
}

TEST_CASE("B(lambda) tensor B(0) is B(lambda)") {
  CartanDatum d = CartanDatum::builtin("gkm2");
  VModule v(d, {1, 1}), z(d, {0, 0});
  Crystal cv = Crystal::generate(v, 3), cz = Crystal::generate(z, 3);
  auto comb = tensor_combinatorial(cv.graph(), 3, cz.graph(), 3, 3, d);
  auto iso = graph_isomorphic(comb.graph, cv.graph());
  CHECK_MESSAGE(iso.isomorphic, iso.certificate);
}

TEST_CASE("gkm2 tensor product, both constructions") {
  CartanDatum d = CartanDatum::builtin("gkm2");
  auto alg = tensor_algebraic(d, {1, 1}, {0, 1}, 3);
  CHECK(alg.crystal->anomalies().empty());
  auto comb = tensor_combinatorial(alg.left_crystal->graph(), 3, alg.right_crystal->graph(), 3, 3, d);
  CHECK(comb.anomalies.empty());
  auto iso = graph_isomorphic(comb.graph, alg.crystal->graph());
  CHECK_MESSAGE(iso.isomorphic, iso.certificate);
  check_edges_lower_weight(comb.graph);
}

TEST_CASE("imaginary rank-1 tensor: f~ acts on the left factor") {
  CartanDatum d = CartanDatum::builtin("imag2");
  auto alg = tensor_algebraic(d, {1}, {1}, 3);
  CHECK(alg.crystal->anomalies().empty());
  const Crystal& c = *alg.crystal;
  // The node f^l v ⊗ v is the lexicographically largest residue supported on block (l, 0).
  for (int l = 0; l < 3; ++l) {
    const RootVec a{l}, up{l + 1};
    auto& tm = *alg.module;
    const auto& b0 = tm.blocks(a).back();
    REQUIRE(b0.beta == RootVec{l});
    RatVector r(tm.dim(a));
    r[b0.offset] = 1;
    const int k = c.find(a, r);
    REQUIRE(k >= 0);
    auto t = c.graph().f_target(c.at(a).nodes[k], 0);
    REQUIRE(t);
    RatVector r2(tm.dim(up));
    r2[tm.blocks(up).back().offset] = 1;
    CHECK(c.graph().nodes()[*t].residue == r2);
  }
}

TEST_CASE("tensor associativity") {
  CartanDatum d = CartanDatum::builtin("gkm2");
  VModule a(d, {1, 0}), b(d, {0, 1}), e(d, {1, 1});
  Crystal ca = Crystal::generate(a, 3), cb = Crystal::generate(b, 3), ce = Crystal::generate(e, 3);
  auto ab = tensor_combinatorial(ca.graph(), 3, cb.graph(), 3, 3, d);
  auto ab_e = tensor_combinatorial(ab.graph, 3, ce.graph(), 3, 3, d);
  auto be = tensor_combinatorial(cb.graph(), 3, ce.graph(), 3, 3, d);
  auto a_be = tensor_combinatorial(ca.graph(), 3, be.graph, 3, 3, d);
  auto iso = graph_isomorphic(ab_e.graph, a_be.graph);
  CHECK_MESSAGE(iso.isomorphic, iso.certificate);
}

TEST_CASE("depth insufficient") {
  CartanDatum d = CartanDatum::builtin("sl2");
  VModule v(d, {3});
  Crystal c = Crystal::generate(v, 1);
  try {
    tensor_combinatorial(c.graph(), 1, c.graph(), 1, 3, d);
    FAIL("expected DepthInsufficient");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DepthInsufficient);
  }
}
