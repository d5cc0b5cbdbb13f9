#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "qcrystal/error.hpp"
#include "qcrystal/module.hpp"
#include "qcrystal/qnumbers.hpp"

using namespace qcrystal;

namespace {

ScalarQ S(const char* s) { return ScalarQ::parse(s); }

QVector random_vec(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> c(-2, 2), e(-2, 2);
  QVector v(n);
  for (auto& x : v) x = ScalarQ(LaurentPoly::monomial(c(rng), e(rng)));
  return v;
}

}  // namespace

TEST_CASE("cform examples") {
  CartanDatum sl2 = CartanDatum::builtin("sl2");
  VModule v1(sl2, {1});
  CHECK(v1.cform(FVector::one(), FVector::one()) == ScalarQ(1));
  CHECK(v1.cform(FVector::word({0}), FVector::word({0})) == ScalarQ(1));
  CHECK(v1.cform(FVector::word({0}), FVector::one()).is_zero());
  VModule v2(sl2, {2});
  // (fv, fv) = q^{-1} q^2 [2] and (f^2 v, f^2 v) = q^{-1} [2] (fv, fv) for λ = 2.
  CHECK(v2.cform(FVector::word({0}), FVector::word({0})) == S("1 + q^2"));
  CHECK(v2.cform(FVector::word({0, 0}), FVector::word({0, 0})) == S("q^-2 + 2 + q^2"));
  CartanDatum im = CartanDatum::builtin("imag2");
  VModule w(im, {1});
  CHECK(w.cform(FVector::word({0}), FVector::word({0})) == ScalarQ(1));
}

TEST_CASE("V(lambda) dimensions, rank 1") {
  CartanDatum sl2 = CartanDatum::builtin("sl2");
  for (int m = 0; m <= 5; ++m) {
    VModule v(sl2, {m});
    for (int n = 0; n <= 7; ++n) CHECK(v.dim({n}) == (n <= m ? 1u : 0u));
  }
  CartanDatum im = CartanDatum::builtin("imag2");
  VModule v0(im, {0});
  CHECK(v0.dim({0}) == 1);
  CHECK(v0.dim({1}) == 0);
  VModule v3(im, {3});
  for (int n = 0; n <= 6; ++n) CHECK(v3.dim({n}) == 1);
  CartanDatum heis = CartanDatum::builtin("heis");
  VModule h1(heis, {1});
  for (int n = 0; n <= 4; ++n) CHECK(h1.dim({n}) == 1);
}

TEST_CASE("V(lambda) dimensions match the numeric oracle") {
  const oracle::Q ts[] = {oracle::Q(1, 3), oracle::Q(2, 5), oracle::Q(3, 7)};
  struct Case {
    const char* name;
    std::vector<int> lam;
    int depth;
  };
  for (const Case& c : {Case{"gkm2", {0, 1}, 3}, Case{"gkm2", {1, 1}, 3}, Case{"gkm2", {2, 0}, 3},
                        Case{"monster3", {1, 0, 0}, 2}, Case{"monster3", {0, 1, 1}, 2}}) {
    CartanDatum d = CartanDatum::builtin(c.name);
    VModule v(d, c.lam);
    for (int h = 0; h <= c.depth; ++h)
      for (const auto& a : roots_of_height(d.n(), h)) {
        CAPTURE(c.name);
        CAPTURE(root_to_string(a));
        for (const auto& t : ts)
          CHECK(v.dim(a) == oracle::vdim(d.matrix(), d.symmetrizers(), c.lam, a, t));
      }
  }
}

TEST_CASE("not dominant and size checks") {
  CartanDatum d = CartanDatum::builtin("gkm2");
  try {
    VModule v(d, {1, -1});
    FAIL("expected NotDominant");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotDominant);
  }
  try {
    VModule v(d, {1});
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("contravariant adjunctions") {
  std::mt19937 rng(3);
  for (const char* name : {"gkm2", "monster3"}) {
    CartanDatum d = CartanDatum::builtin(name);
    std::vector<int> lam(d.n(), 1);
    VModule v(d, lam);
    for (int h = 0; h <= 2; ++h)
      for (const auto& a : roots_of_height(d.n(), h))
        for (int i = 0; i < d.n(); ++i) {
          RootVec up = a;
          ++up[i];
          if (v.dim(a) == 0 || v.dim(up) == 0) continue;
          QVector x = random_vec(rng, v.dim(a)), y = random_vec(rng, v.dim(up));
          // (f_i x, y) = (x, q_i^{-1} K_i e_i y); K_i acts on V_a by q_i^{pairing}.
          const ScalarQ k = qi_pow(d, i, v.wt_pairing(i, a) - 1);
          CHECK(v.form(up, v.f_matrix(i, a) * x, y) == k * v.form(a, x, v.e_matrix(i, up) * y));
          // (e_i y, x) = (y, q_i f_i K_i^{-1} x).
          const ScalarQ k2 = qi_pow(d, i, 1 - v.wt_pairing(i, a));
          CHECK(v.form(a, v.e_matrix(i, up) * y, x) == k2 * v.form(up, y, v.f_matrix(i, a) * x));
        }
  }
}

TEST_CASE("gram is symmetric") {
  CartanDatum d = CartanDatum::builtin("gkm2");
  VModule v(d, {1, 1});
  for (int h = 0; h <= 3; ++h)
    for (const auto& a : roots_of_height(2, h)) CHECK(v.gram(a) == v.gram(a).transpose());
}

TEST_CASE("apply_e examples and the imaginary rank-1 closed form") {
  CartanDatum sl2 = CartanDatum::builtin("sl2");
  VModule v(sl2, {1});
  CHECK(v.apply_e(0, {1}, QVector{ScalarQ(1)}) == QVector{ScalarQ(1)});
  for (const char* name : {"imag2", "heis"}) {
    CartanDatum d = CartanDatum::builtin(name);
    const int c = d.c(0);
    for (int l = 0; l <= 3; ++l) {
      VModule w(d, {l});
      for (int n = 1; n <= 4; ++n) {
        if (w.dim({n}) == 0) continue;
        CAPTURE(name);
        CAPTURE(l);
        CAPTURE(n);
        // Basis of every weight space is the single word f^n.
        CHECK(w.basis_word({n}, 0) == Word(static_cast<std::size_t>(n), 0));
        ScalarQ expect = qbrace(n, 0, d) * qint(l + c * (n - 1), 0, d);
        CHECK(w.apply_e(0, {n}, QVector{ScalarQ(1)}) == QVector{expect});
      }
    }
  }
  // e_i kills V_μ when μ(h_i) <= 2c_i.
  CartanDatum d = CartanDatum::builtin("gkm2");
  VModule w(d, {1, 2});
  for (int h = 1; h <= 3; ++h)
    for (const auto& a : roots_of_height(2, h))
      if (a[1] > 0 && w.wt_pairing(1, a) <= 0) CHECK(is_zero_matrix(w.e_matrix(1, a)));
}

TEST_CASE("pi_lambda examples") {
  CartanDatum sl2 = CartanDatum::builtin("sl2");
  UmModule um(sl2);
  VModule v1(sl2, {1});
  CHECK(pi_matrix(um, v1, {0}) == QMatrix::identity(1));
  CHECK(pi_matrix(um, v1, {2}).rows() == 0);
  CHECK(v1.dim({2}) == 0);
  CartanDatum im = CartanDatum::builtin("imag2");
  UmModule umi(im);
  VModule v0(im, {0});
  QMatrix p = pi_matrix(umi, v0, {1});
  CHECK(p.rows() == 0);
  CHECK(p.cols() == 1);
  // π_λ intertwines f_i.
  CartanDatum d = CartanDatum::builtin("gkm2");
  UmModule u(d);
  VModule v(d, {1, 1});
  for (int h = 0; h <= 2; ++h)
    for (const auto& a : roots_of_height(2, h))
      for (int i = 0; i < 2; ++i) {
        RootVec up = a;
        ++up[i];
        CHECK(pi_matrix(u, v, up) * u.f_matrix(i, a) == v.f_matrix(i, a) * pi_matrix(u, v, a));
      }
}

TEST_CASE("weight constraints hold on computed spaces") {
  for (const char* name : {"imag2", "heis", "gkm2", "monster3"}) {
    CartanDatum d = CartanDatum::builtin(name);
    for (int t = 0; t <= 1; ++t) {
      std::vector<int> lam(d.n(), t);
      lam[0] = 1;
      VModule v(d, lam);
      CAPTURE(name);
      CHECK(check_weight_constraints(v, d.n() == 3 ? 3 : 4).empty());
    }
  }
  // Imaginary pairing 0 means f_i v_λ = 0.
  CartanDatum d = CartanDatum::builtin("gkm2");
  VModule v(d, {1, 0});
  CHECK(v.dim({0, 1}) == 0);
}
