// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "oracle.hpp"
#include "qcrystal/error.hpp"
#include "qcrystal/global_basis.hpp"
#include "qcrystal/harness.hpp"

using namespace qcrystal;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (ok) detail << why;
    ok = false;
  }
};

bool is_chain(const CrystalGraph& g, std::size_t len) {
  if (g.size() != len || g.edges().size() + 1 != len) return false;
  for (std::size_t l = 0; l + 1 < len; ++l)
    if (g.f_target(static_cast<int>(l), 0) != std::optional<int>(static_cast<int>(l + 1))) return false;
  return true;
}

Outcome criterion1() {
  Outcome o;
  CartanDatum d = CartanDatum::builtin("sl2");
  for (int m = 0; m <= 5; ++m) {
    VModule v(d, {m});
    Crystal c = Crystal::generate(v, m + 1);
    const auto& g = c.graph();
    if (!c.anomalies().empty() || !is_chain(g, static_cast<std::size_t>(m + 1))) o.fail("m=" + std::to_string(m));
    for (int l = 0; l <= m && o.ok; ++l) {
      const auto& n = g.nodes()[l];
      if (n.eps[0] != l || n.phi[0] != ExtInt(m - l) || n.wt.alpha != RootVec{l} || n.wt.lam != std::vector<int>{m})
        o.fail("node " + std::to_string(l) + " of m=" + std::to_string(m));
    }
  }
  o.detail << "m = 0..5 chains with eps = l, phi = m - l";
  return o;
}

Outcome criterion2() {
  Outcome o;
  CartanDatum d = CartanDatum::builtin("imag2");
  VModule v0(d, {0});
  Crystal c0 = Crystal::generate(v0, 6);
  if (c0.graph().size() != 1 || !c0.graph().edges().empty()) o.fail("lambda(h)=0 is not a singleton");
  VModule v3(d, {3});
  Crystal c3 = Crystal::generate(v3, 6);
  if (!is_chain(c3.graph(), 7)) o.fail("lambda(h)=3 is not a 7-node chain");
  for (const auto& n : c3.graph().nodes())
    if (n.eps[0] != n.wt.alpha[0] || !n.phi[0].is_inf()) o.fail("eps/phi at node " + std::to_string(n.id));
  o.detail << "singleton for lambda(h)=0; 7-node chain with phi = inf for lambda(h)=3";
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 rng(20261017);
  std::vector<oracle::Q> ts;
  for (int k = 0; k < 3; ++k) {
    const long den = std::uniform_int_distribution<long>(5, 60)(rng);
    const long num = std::uniform_int_distribution<long>(1, den - 1)(rng);
    ts.emplace_back(num, den);
    ts.back().canonicalize();
  }
  std::size_t weights = 0;
  const std::vector<std::pair<std::string, std::vector<std::vector<int>>>> cases = {
      {"gkm2", {{1, 1}, {2, 1}, {0, 1}}}, {"monster3", {{1, 0, 1}, {0, 1, 0}}}};
  for (const auto& [name, lams] : cases) {
    CartanDatum d = CartanDatum::builtin(name);
    for (const auto& lam : lams) {
      VModule v(d, lam);
      Crystal c = Crystal::generate(v, 4);
      if (!c.anomalies().empty()) o.fail(name + " crystal anomalies");
      for (const auto& [a, wc] : c.weights()) {
        ++weights;
        const std::size_t dim = v.dim(a);
        for (const auto& t : ts)
          if (oracle::vdim(d.matrix(), d.symmetrizers(), lam, a, t) != dim)
            o.fail(name + " oracle mismatch at " + root_to_string(a) + " q=" + t.get_str());
        if (wc.elements.size() != dim) o.fail(name + " #B mismatch at " + root_to_string(a));
      }
    }
  }
  o.detail << weights << " weight spaces with |alpha| <= 4; q in {" << ts[0].get_str() << ", " << ts[1].get_str()
           << ", " << ts[2].get_str() << "}";
  return o;
}

Outcome criterion4() {
  Outcome o;
  struct Case {
    const char* datum;
    std::vector<int> lam, mu;
  };
  const std::vector<Case> cases = {
      {"sl2", {1}, {1}}, {"gkm2", {1, 1}, {0, 1}}, {"monster3", {1, 0, 0}, {0, 1, 0}}};
  for (const auto& cs : cases) {
    CartanDatum d = CartanDatum::builtin(cs.datum);
    auto alg = tensor_algebraic(d, cs.lam, cs.mu, 3);
    VModule v1(d, cs.lam), v2(d, cs.mu);
    Crystal c1 = Crystal::generate(v1, 4), c2 = Crystal::generate(v2, 4);
    auto comb = tensor_combinatorial(c1.graph(), 4, c2.graph(), 4, 3, d);
    auto iso = graph_isomorphic(comb.graph, alg.crystal->graph());
    if (!iso.isomorphic) o.fail(std::string(cs.datum) + ": " + iso.certificate);
    if (!comb.anomalies.empty() || !alg.crystal->anomalies().empty()) o.fail(std::string(cs.datum) + " anomalies");
    o.detail << cs.datum << " " << comb.graph.size() << " nodes; ";
  }
  o.detail << "combinatorial and algebraic crystals isomorphic at depth 3";
  return o;
}

Outcome criterion5() {
  Outcome o;
  CartanDatum d = CartanDatum::builtin("gkm2");
  std::size_t instances = 0;
  for (const auto& lam : {std::vector<int>{1, 1}, std::vector<int>{2, 1}, std::vector<int>{0, 2}}) {
    VModule v(d, lam);
    Crystal c = Crystal::generate(v, 4);
    StatementReport r = string_count_check(v, c, 3);
    instances += r.instances;
    if (!r.pass()) o.fail("witness " + r.failures.front().dump());
  }
  o.detail << instances << " (weight, i, n) instances on gkm2, |alpha| <= 4, n <= 3";
  return o;
}

Outcome criterion6() {
  Outcome o;
  {
    CartanDatum d = CartanDatum::builtin("sl2");
    for (int m = 0; m <= 4; ++m) {
      VModule v(d, {m});
      Crystal c = Crystal::generate(v, m + 1);
      const auto g = global_basis(v, c, 8);
      for (int k = 0; k <= m; ++k) {
        const QVector e = v.fpow(0, RootVec{0}, k) * QVector{ScalarQ(1)};
        if (g[k].coords != e && g[k].coords != scale(ScalarQ(-1), e)) o.fail("sl2 G is not f^(k) v");
      }
    }
  }
  {
    CartanDatum d = CartanDatum::builtin("imag2");
    VModule v(d, {3});
    Crystal c = Crystal::generate(v, 5);
    const auto g = global_basis(v, c, 8);
    QVector x{ScalarQ(1)};
    for (int k = 0; k <= 5; ++k) {
      if (g[k].coords != x && g[k].coords != scale(ScalarQ(-1), x)) o.fail("imag2 G is not f^k v");
      if (k < 5) x = v.f_matrix(0, RootVec{k}) * x;
    }
  }
  std::size_t elems = 0;
  CartanDatum d = CartanDatum::builtin("gkm2");
  for (const auto& lam : {std::vector<int>{1, 1}, std::vector<int>{2, 1}}) {
    VModule v(d, lam);
    Crystal c = Crystal::generate(v, 3);
    const auto g = global_basis(v, c, 10);
    for (const auto& e : g) {
      ++elems;
      if (!e.certified()) o.fail("uncertified element at " + root_to_string(e.alpha));
    }
    for (const auto& [a, wc] : c.weights()) {
      auto b = balanced_check(v, c, g, a);
      if (!b.pass()) o.fail("balanced_check at " + root_to_string(a) + ": " + b.failures.front());
    }
  }
  o.detail << "rank-1 bases exact; " << elems << " gkm2 elements certified and balanced per weight";
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::ifstream in(QC_DATA_DIR "/default_suite.json");
  const nlohmann::json cfg = nlohmann::json::parse(in);
  SuiteReport s = run_suite(cfg);
  std::map<std::string, std::size_t> counts;
  for (const auto& r : s.reports)
    if (r.id.size() == 1) counts[r.id] += r.instances;
  if (!s.pass()) o.fail("default suite failed:\n" + s.to_text());
  for (char id = 'A'; id <= 'O'; ++id)
    if (counts[std::string(1, id)] == 0) o.fail(std::string("statement ") + id + " not exercised");
  std::ifstream nin(QC_DATA_DIR "/negative_control.json");
  SuiteReport neg = run_suite(nlohmann::json::parse(nin));
  bool witnessed = false;
  for (const auto& r : neg.reports)
    for (const auto& f : r.failures) witnessed = witnessed || f.contains("alpha");
  if (neg.pass() || !witnessed) o.fail("negative control did not fail with a witness");
  o.detail << s.reports.size() << " reports pass; A..O instances min "
           << std::min_element(counts.begin(), counts.end(), [](auto& x, auto& y) { return x.second < y.second; })
                  ->second
           << "; negative control fails with witness";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const std::vector<std::pair<std::string, std::vector<int>>> cases = {
      {"sl2", {3}}, {"imag2", {2}}, {"heis", {2}}, {"gkm2", {1, 1}}, {"monster3", {1, 0, 1}}};
  std::size_t instances = 0;
  for (const auto& [name, lam] : cases) {
    CartanDatum d = CartanDatum::builtin(name);
    VModule v(d, lam);
    Crystal c = Crystal::generate(v, 3);
    UmModule um(d);
    Crystal ci = Crystal::generate(um, 3);
    for (const StatementReport& r : {orthogonality_check(v, c), orthogonality_check(um, ci)}) {
      instances += r.instances;
      if (!r.pass()) o.fail(name + ": " + r.failures.front().dump());
    }
  }
  o.detail << instances << " pairs; diagonal positive integers, 1 when every a_ii != 0";
  return o;
}

Outcome criterion9() {
  Outcome o;
  CartanDatum d = CartanDatum::builtin("gkm2");
  UmModule um(d);
  Crystal c = Crystal::generate(um, 4);
  StatementReport r = star_check(um, c, 100, 1);
  if (!r.pass()) o.fail(r.failures.front().dump());
  if (r.instances != 100) o.fail("sampled " + std::to_string(r.instances));
  o.detail << r.instances << " sampled elements of L(inf), |alpha| <= 4";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::function<Outcome()>, double>> criteria = {
      {criterion1, 1}, {criterion2, 1}, {criterion3, 120}, {criterion4, 120}, {criterion5, 0},
      {criterion6, 300}, {criterion7, 600}, {criterion8, 0}, {criterion9, 0}};
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].first();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double limit = criteria[k].second;
    if (limit > 0 && secs > limit) o.fail("runtime " + std::to_string(secs) + " s exceeds " + std::to_string(limit));
    all = all && o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << k + 1 << ": " << o.detail.str() << " ("
              << std::fixed;
    std::cout.precision(2);
    std::cout << secs << " s)" << std::endl;
  }
  return all ? 0 : 1;
}
