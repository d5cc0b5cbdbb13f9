#include "qcrystal/global_basis.hpp"

#include <algorithm>

#include "qcrystal/error.hpp"
#include "qcrystal/qnumbers.hpp"

namespace qcrystal {

FVector bar_vec(const FVector& v) {
  FVector out;
  for (const auto& [w, c] : v.terms()) {
    if (!c.is_laurent())
      throw Error(ErrorKind::BarDomain, "coefficient " + c.to_string() + " of " + word_to_string(w) +
                                            " is not a Laurent polynomial");
    out.add_term(w, c.bar());
  }
  return out;
}

QVector divided_monomial(WordModule& m, const Word& w) {
  const CartanDatum& d = m.datum();
  const RootVec a = root_of_word(d.n(), w);
  ScalarQ norm(1);
  for (std::size_t s = 0; s < w.size();) {
    std::size_t e = s;
    while (e < w.size() && w[e] == w[s]) ++e;
    norm *= divided_power_norm(static_cast<int>(e - s), w[s], d);
    s = e;
  }
  return scale(norm.inverse(), m.coords(FVector::word(w), a));
}

namespace {

// Coefficients of the expansion of x at q = 0 for exponents lo..hi.
RatVector series(const ScalarQ& x, int lo, int hi) {
  RatVector out(static_cast<std::size_t>(std::max(0, hi - lo + 1)));
  if (x.is_zero() || hi < lo) return out;
  const int v = x.num().low();
  if (v > hi) return out;
  // 1/den as a power series up to order hi - v.
  const int N = hi - v;
  const Poly den = x.den().to_poly();  // den.low() == 0 and den(0) == 1
  RatVector inv(static_cast<std::size_t>(N + 1));
  inv[0] = 1;
  for (int k = 1; k <= N; ++k) {
    Rational s = 0;
    for (int j = 1; j <= k && j < static_cast<int>(den.size()); ++j) s -= den[j] * inv[k - j];
    inv[k] = s;
  }
  const auto& nc = x.num().coeffs();
  for (int e = std::max(lo, v); e <= hi; ++e) {
    Rational s = 0;
    for (int j = 0; j < static_cast<int>(nc.size()) && v + j <= e; ++j) s += nc[j] * inv[e - v - j];
    out[e - lo] = s;
  }
  return out;
}

ScalarQ sym_basis(int d) {
  return d == 0 ? ScalarQ(1) : ScalarQ(LaurentPoly::q_power(d) + LaurentPoly::q_power(-d));
}

struct Ansatz {
  std::vector<Word> words;
  std::vector<QVector> mono;  // divided monomials in V_a coordinates
  std::vector<QVector> lat;   // the same in lattice coordinates
};

Ansatz make_ansatz(WordModule& m, const Crystal& c, const RootVec& a) {
  Ansatz z;
  const auto& sp = m.space(a);
  const Lattice& L = c.at(a).lattice;
  for (const auto& w : sp.words) {
    QVector v = divided_monomial(m, w);
    if (is_zero(v)) continue;
    z.words.push_back(w);
    z.lat.push_back(L.coordinates(v));
    z.mono.push_back(std::move(v));
  }
  return z;
}

QVector assemble(const Ansatz& z, const RatVector& sol, int D, std::size_t dim, FVector* mono_out) {
  QVector x(dim);
  for (std::size_t w = 0; w < z.words.size(); ++w) {
    ScalarQ cw;
    for (int d = 0; d <= D; ++d) {
      const Rational& a = sol[w * static_cast<std::size_t>(D + 1) + static_cast<std::size_t>(d)];
      if (a != 0) cw += ScalarQ(a) * sym_basis(d);
    }
    if (cw.is_zero()) continue;
    if (mono_out) mono_out->add_term(z.words[w], cw);
    x = add(x, scale(cw, z.mono[w]));
  }
  return x;
}

}  // namespace

GlobalElem solve_global(WordModule& m, const Crystal& c, const RootVec& a, std::size_t k, int degree_budget) {
  const WeightCrystal& wc = c.at(a);
  const RatVector& target = wc.elements.at(k);
  const std::size_t dim = wc.lattice.dim();
  const Ansatz z = make_ansatz(m, c, a);
  const int start = std::max(0, std::min(height(a), degree_budget));
  for (int D = start; D <= degree_budget; ++D) {
    const std::size_t U = z.words.size() * static_cast<std::size_t>(D + 1);
    // Series of each lattice coordinate of each monomial, exponents lo..D.
    int lo = 0;
    for (const auto& v : z.lat)
      for (const auto& x : v)
        if (!x.is_zero()) lo = std::min(lo, x.val0() - D);
    RatMatrix A(0, U);
    RatVector rhs;
    std::vector<std::vector<RatVector>> ser(z.words.size(), std::vector<RatVector>(dim));
    for (std::size_t w = 0; w < z.words.size(); ++w)
      for (std::size_t r = 0; r < dim; ++r) ser[w][r] = series(z.lat[w][r], lo - D, D);
    for (std::size_t r = 0; r < dim; ++r)
      for (int o = lo; o <= 0; ++o) {
        RatVector row(U);
        bool nz = false;
        for (std::size_t w = 0; w < z.words.size(); ++w)
          for (int d = 0; d <= D; ++d) {
            // (q^d + q^{-d}) h contributes h_{o-d} + h_{o+d}; d = 0 contributes h_o.
            const RatVector& h = ser[w][r];
            Rational s = h[o - d - (lo - D)];
            if (d) s += h[o + d - (lo - D)];
            if (s != 0) {
              row[w * static_cast<std::size_t>(D + 1) + static_cast<std::size_t>(d)] = s;
              nz = true;
            }
          }
        const Rational b = o == 0 ? target[r] : Rational(0);
        if (!nz && b == 0) continue;
        A.append_row(row);
        rhs.push_back(b);
      }
    RatSolution sol = solve_rational(A, rhs);
    if (!sol.consistent) continue;
    GlobalElem g;
    g.alpha = a;
    g.node = wc.nodes.at(k);
    g.degree = D;
    g.coords = assemble(z, sol.particular, D, dim, &g.monomials);
    for (const auto& n : sol.nullspace)
      if (!is_zero(assemble(z, n, D, dim, nullptr)))
        throw Error(ErrorKind::NonUniqueSolution,
                    "bar-invariant element of qL at " + root_to_string(a) + " (implementation bug)");
    g.laurent = std::all_of(g.monomials.terms().begin(), g.monomials.terms().end(),
                            [](const auto& t) { return t.second.is_laurent(); });
    g.bar_fixed = bar(g.coords) == g.coords && bar_vec(g.monomials) == g.monomials;
    try {
      g.residue_ok = wc.lattice.residue(g.coords) == target;
    } catch (const Error&) {
      g.residue_ok = false;
    }
    return g;
  }
  throw Error(ErrorKind::DegreeBudgetExceeded, "no bar-invariant lift at " + root_to_string(a) +
                                                   " with coefficient degree <= " + std::to_string(degree_budget));
}

std::vector<GlobalElem> global_basis(WordModule& m, const Crystal& c, int degree_budget) {
  std::vector<GlobalElem> out(c.graph().size());
  for (const auto& [a, wc] : c.weights())
    for (std::size_t k = 0; k < wc.elements.size(); ++k) out[wc.nodes[k]] = solve_global(m, c, a, k, degree_budget);
  return out;
}

CheckReport balanced_check(WordModule& m, const Crystal& c, const std::vector<GlobalElem>& g, const RootVec& a) {
  CheckReport rep{"balanced", a, 0, {}};
  const WeightCrystal& wc = c.at(a);
  const std::size_t dim = m.dim(a);
  std::vector<QVector> cols;
  std::vector<RatVector> res;
  for (int id : wc.nodes) {
    const GlobalElem& e = g.at(id);
    ++rep.instances;
    cols.push_back(e.coords);
    if (!e.laurent) rep.failures.push_back("G of node " + std::to_string(id) + " has non-Laurent coefficients");
    if (!(bar(e.coords) == e.coords)) rep.failures.push_back("G of node " + std::to_string(id) + " is not bar-fixed");
    try {
      res.push_back(wc.lattice.residue(e.coords));
    } catch (const Error&) {
      rep.failures.push_back("G of node " + std::to_string(id) + " is not in L");
    }
  }
  if (cols.size() != dim)
    rep.failures.push_back(std::to_string(cols.size()) + " elements for dimension " + std::to_string(dim));
  if (dim && rank(QMatrix::from_columns(cols, dim)) != dim) rep.failures.push_back("G is not a basis");
  std::sort(res.begin(), res.end(), residue_greater);
  if (res != wc.elements) rep.failures.push_back("residues of G differ from B");
  return rep;
}

bool in_laurent_span(const std::vector<QVector>& gens, const QVector& x, int e_max) {
  if (is_zero(x)) return true;
  if (gens.empty()) return false;
  const std::size_t dim = x.size();
  const std::size_t G = gens.size();
  const std::size_t E = static_cast<std::size_t>(2 * e_max + 1);
  RatMatrix A(0, G * E);
  RatVector rhs;
  for (std::size_t r = 0; r < dim; ++r) {
    // Clear denominators of row r.
    Poly l{Rational(1)};
    auto absorb = [&](const ScalarQ& s) {
      if (s.is_zero()) return;
      const Poly dp = s.den().to_poly();
      l = poly::exact_div(poly::mul(l, dp), poly::gcd(l, dp));
    };
    for (const auto& g : gens) absorb(g[r]);
    absorb(x[r]);
    const ScalarQ M(LaurentPoly::from_poly(l));
    std::vector<LaurentPoly> P(G);
    int lo = 0, hi = 0;
    bool any = false;
    auto span = [&](const LaurentPoly& p, int shift_lo, int shift_hi) {
      if (p.is_zero()) return;
      lo = any ? std::min(lo, p.low() + shift_lo) : p.low() + shift_lo;
      hi = any ? std::max(hi, p.high() + shift_hi) : p.high() + shift_hi;
      any = true;
    };
    for (std::size_t k = 0; k < G; ++k) {
      P[k] = (gens[k][r] * M).num();
      span(P[k], -e_max, e_max);
    }
    const LaurentPoly T = (x[r] * M).num();
    span(T, 0, 0);
    if (!any) continue;
    for (int o = lo; o <= hi; ++o) {
      RatVector row(G * E);
      for (std::size_t k = 0; k < G; ++k)
        for (int e = -e_max; e <= e_max; ++e) row[k * E + static_cast<std::size_t>(e + e_max)] = P[k].coeff(o - e);
      A.append_row(row);
      rhs.push_back(T.coeff(o));
    }
  }
  return solve_rational(A, rhs).consistent;
}

CheckReport integral_string_check(WordModule& m, const Crystal& c, const std::vector<GlobalElem>& g, Index i, int n,
                                  const RootVec& a) {
  CheckReport rep{"integral-string", a, 0, {}};
  const WeightCrystal& wc = c.at(a);
  const StringData& sd = m.strings(i, a);
  for (std::size_t k = 0; k < wc.nodes.size(); ++k) {
    const int id = wc.nodes[k];
    if (c.node(id).eps[i] < n) continue;
    ++rep.instances;
    const GlobalElem& e = g.at(id);
    for (const auto& [l, u] : sd.components(e.coords))
      if (l < n && !is_zero(u))
        rep.failures.push_back("G of node " + std::to_string(id) + " has a string component at " + std::to_string(l));
    // Generators f_i^{(l)} m_w, l >= n, w of weight a - lα_i.
    std::vector<QVector> gens;
    for (int l = n; l <= a[i]; ++l) {
      RootVec beta = a;
      beta[i] -= l;
      for (const auto& w : m.space(beta).words) {
        QVector v = divided_monomial(m, w);
        if (is_zero(v)) continue;
        v = m.fpow(i, beta, l) * v;
        if (!is_zero(v)) gens.push_back(std::move(v));
      }
    }
    if (!in_laurent_span(gens, e.coords, e.degree + height(a)))
      rep.failures.push_back("G of node " + std::to_string(id) + " not found in sum_{l>=" + std::to_string(n) +
                             "} f^(l) V^A");
  }
  return rep;
}

QVector ftilde_word_vector(GradedModule& m, const Crystal& c, int node) {
  std::vector<Index> path;  // e~ indices walked upward
  int cur = node;
  while (true) {
    bool moved = false;
    for (int i = 0; i < m.datum().n() && !moved; ++i)
      if (auto t = c.graph().e_target(cur, i)) {
        path.push_back(i);
        cur = *t;
        moved = true;
      }
    if (!moved) break;
  }
  if (height(c.node(cur).wt.alpha) != 0)
    throw Error(ErrorKind::InvalidArgument, "node " + std::to_string(node) + " is not below the top vector");
  RootVec a = m.datum().zero_root();
  QVector x{ScalarQ(1)};
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    x = m.strings(*it, a).ftil * x;
    ++a[*it];
  }
  return x;
}

CheckReport transition_check(WordModule& m, const Crystal& c, const std::vector<GlobalElem>& g, const RootVec& a) {
  CheckReport rep{"transition", a, 0, {}};
  const WeightCrystal& wc = c.at(a);
  const std::size_t dim = m.dim(a);
  if (dim == 0) return rep;
  std::vector<QVector> cols;
  for (int id : wc.nodes) cols.push_back(g.at(id).coords);
  const QMatrix Ginv = inverse(QMatrix::from_columns(cols, dim));
  for (std::size_t k = 0; k < wc.nodes.size(); ++k) {
    ++rep.instances;
    const QVector t = Ginv * ftilde_word_vector(m, c, wc.nodes[k]);
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (t[j].val0() < 0) {
        rep.failures.push_back("entry (" + std::to_string(k) + "," + std::to_string(j) + ") not in A0");
        continue;
      }
      const Rational r = t[j].is_zero() ? Rational(0) : t[j].eval0();
      if (r != (j == k ? 1 : 0))
        rep.failures.push_back("residue of entry (" + std::to_string(k) + "," + std::to_string(j) + ") is " +
                               r.get_str());
    }
  }
  return rep;
}

}  // namespace qcrystal
