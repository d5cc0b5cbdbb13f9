#include <doctest.h>

#include "qcrystal/error.hpp"
#include "qcrystal/global_basis.hpp"
#include "qcrystal/qnumbers.hpp"

using namespace qcrystal;

namespace {

const GlobalElem& elem_at(const std::vector<GlobalElem>& g, int node) {
  for (const auto& e : g)
    if (e.node == node) return e;
  FAIL("no global element for node " << node);
  return g.front();
}

// Coordinates of f_i^n x for x ∈ V_a.
QVector apply_f(GradedModule& m, Index i, RootVec a, QVector x, int n) {
  for (int k = 0; k < n; ++k) {
    x = m.f_matrix(i, a) * x;
    ++a[i];
  }
  return x;
}

}  // namespace

TEST_CASE("bar on f-vectors") {
  FVector v = FVector::word({0}, ScalarQ(LaurentPoly::parse("q + 2*q^-3")));
  FVector b = bar_vec(v);
  CHECK(b.coeff({0}) == ScalarQ(LaurentPoly::parse("q^-1 + 2*q^3")));
  CHECK(bar_vec(b) == v);
  FVector bad = FVector::word({0}, ScalarQ(LaurentPoly(1), LaurentPoly::parse("1 + q")));
  CHECK_THROWS_AS(bar_vec(bad), Error);
  try {
    bar_vec(bad);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BarDomain);
  }
}

TEST_CASE("rank-1 real global basis is the divided powers") {
  CartanDatum d = CartanDatum::builtin("sl2");
  for (int m = 0; m <= 4; ++m) {
    VModule v(d, {m});
    Crystal c = Crystal::generate(v, m + 1);
    auto g = global_basis(v, c, 8);
    REQUIRE(g.size() == static_cast<std::size_t>(m + 1));
    for (int k = 0; k <= m; ++k) {
      const GlobalElem& e = g[k];
      CHECK(e.certified());
      const RootVec a{k};
      QVector expect = v.fpow(0, RootVec{0}, k) * QVector{ScalarQ(1)};
      // Residue is ±b; the element must be ±f^{(k)} v.
      CHECK((e.coords == expect || e.coords == scale(ScalarQ(-1), expect)));
      CHECK(e.monomials.terms().size() == 1);
    }
  }
}

TEST_CASE("rank-1 imaginary global basis is the plain powers") {
  for (const char* name : {"imag2", "heis"}) {
    CartanDatum d = CartanDatum::builtin(name);
    VModule v(d, {3});
    Crystal c = Crystal::generate(v, 5);
    auto g = global_basis(v, c, 8);
    REQUIRE(g.size() == 6);
    for (int k = 0; k <= 5; ++k) {
      CHECK(g[k].certified());
      QVector expect = apply_f(v, 0, RootVec{0}, QVector{ScalarQ(1)}, k);
      CHECK((g[k].coords == expect || g[k].coords == scale(ScalarQ(-1), expect)));
    }
  }
}

TEST_CASE("B(inf) global basis for sl2") {
  CartanDatum d = CartanDatum::builtin("sl2");
  UmModule um(d);
  Crystal c = Crystal::generate(um, 3);
  auto g = global_basis(um, c, 8);
  REQUIRE(g.size() == 4);
  for (int k = 0; k <= 3; ++k) {
    CHECK(g[k].certified());
    FVector expect = divided_power_word(d, 0, k);
    FVector got = um.element(g[k].coords, RootVec{k});
    CHECK((got == expect || got == ScalarQ(-1) * expect));
  }
}

TEST_CASE("gkm2 global basis certificates and checks") {
  CartanDatum d = CartanDatum::builtin("gkm2");
  for (const auto& lam : {std::vector<int>{1, 1}, std::vector<int>{2, 1}}) {
    VModule v(d, lam);
    Crystal c = Crystal::generate(v, 3);
    REQUIRE(c.anomalies().empty());
    auto g = global_basis(v, c, 10);
    CHECK(g.size() == c.graph().size());
    for (const auto& e : g) {
      CHECK(e.laurent);
      CHECK(e.bar_fixed);
      CHECK(e.residue_ok);
    }
    std::size_t string_instances = 0;
    for (const auto& [a, wc] : c.weights()) {
      auto b = balanced_check(v, c, g, a);
      CHECK_MESSAGE(b.pass(), root_to_string(a));
      CHECK(transition_check(v, c, g, a).pass());
      for (int i = 0; i < d.n(); ++i)
        for (int n = 1; n <= 3; ++n) {
          auto s = integral_string_check(v, c, g, i, n, a);
          CHECK(s.pass());
          string_instances += s.instances;
        }
    }
    CHECK(string_instances > 0);
  }
}

TEST_CASE("balanced check at the top weight and vacuous string checks") {
  CartanDatum d = CartanDatum::builtin("gkm2");
  VModule v(d, {1, 1});
  Crystal c = Crystal::generate(v, 2);
  auto g = global_basis(v, c, 8);
  auto top = balanced_check(v, c, g, RootVec{0, 0});
  CHECK(top.pass());
  CHECK(top.instances == 1);
  auto s = integral_string_check(v, c, g, 0, 3, RootVec{1, 0});
  CHECK(s.pass());
  CHECK(s.instances == 0);
}

TEST_CASE("imaginary f powers act on global bases") {
  CartanDatum d = CartanDatum::builtin("gkm2");
  VModule v(d, {1, 2});
  Crystal c = Crystal::generate(v, 3);
  auto g = global_basis(v, c, 10);
  const Index i = 1;
  REQUIRE_FALSE(d.is_real(i));
  std::size_t checked = 0;
  for (const auto& node : c.graph().nodes()) {
    int cur = node.id;
    for (int n = 1;; ++n) {
      auto t = c.graph().f_target(cur, i);
      if (!t) break;
      cur = *t;
      const GlobalElem& src = elem_at(g, node.id);
      const GlobalElem& dst = elem_at(g, cur);
      QVector fx = apply_f(v, i, src.alpha, src.coords, n);
      CHECK((dst.coords == fx || dst.coords == scale(ScalarQ(-1), fx)));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("G_inf(b) v_lambda is G_lambda of the projected element or zero") {
  CartanDatum d = CartanDatum::builtin("gkm2");
  const int depth = 3;
  UmModule um(d);
  Crystal cu = Crystal::generate(um, depth);
  auto gu = global_basis(um, cu, 10);
  for (const auto& lam : {std::vector<int>{1, 1}, std::vector<int>{0, 1}, std::vector<int>{1, 0}}) {
    VModule v(d, lam);
    Crystal cv = Crystal::generate(v, depth);
    auto gv = global_basis(v, cv, 10);
    std::size_t zero = 0, nonzero = 0;
    for (const auto& e : gu) {
      const QVector img = pi_matrix(um, v, e.alpha) * e.coords;
      const RatVector r = cv.residue(e.alpha, img);
      const int k = is_zero(r) ? -1 : cv.find(e.alpha, r);
      if (k < 0) {
        CHECK(is_zero(r));
        CHECK(is_zero(img));
        ++zero;
      } else {
        const GlobalElem& ge = elem_at(gv, cv.at(e.alpha).nodes[k]);
        CHECK(img == ge.coords);
        ++nonzero;
      }
    }
    CHECK(nonzero == cv.graph().size());
    if (lam != std::vector<int>{1, 1}) CHECK(zero > 0);
  }
}

TEST_CASE("star images of G_inf lie in L(inf) and are Laurent") {
  CartanDatum d = CartanDatum::builtin("gkm2");
  UmModule um(d);
  Crystal cu = Crystal::generate(um, 3);
  auto gu = global_basis(um, cu, 10);
  for (const auto& e : gu) {
    const FVector s = star(um.element(e.coords, e.alpha));
    const QVector x = um.coords(s, e.alpha);
    CHECK(cu.at(e.alpha).lattice.contains(x));
    // In divided-power monomials, star reverses each monomial.
    QVector y(x.size());
    for (const auto& [w, c] : e.monomials.terms()) {
      CHECK(c.is_laurent());
      y = add(y, scale(c, divided_monomial(um, Word(w.rbegin(), w.rend()))));
    }
    CHECK(y == x);
  }
}

TEST_CASE("degree budget and depth errors") {
  CartanDatum d = CartanDatum::builtin("gkm2");
  VModule v(d, {1, 1});
  Crystal c = Crystal::generate(v, 2);
  try {
    solve_global(v, c, RootVec{1, 1}, 0, -1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeBudgetExceeded);
  }
}
