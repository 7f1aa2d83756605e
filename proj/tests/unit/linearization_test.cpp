#include <doctest.h>

#include <random>

#include "ppx/errors.hpp"
#include "ppx/freecat.hpp"
#include "ppx/linearization.hpp"
#include "ppx/standard.hpp"
#include "support.hpp"

using namespace ppx;
using ppx::test::Builder;

namespace {

Builder path() {
  Builder b;
  b.point("x");
  b.point("y");
  b.point("z");
  b.cell("f", "x", "y");
  b.cell("f2", "x", "y");
  b.cell("g", "y", "z");
  b.cell("a", "f", "f2");
  return b;
}

// Occurrences of cells of dimension d in a Bnd-free term.
LinComb occurrences(const Polygraph& p, const Term& t, int d) {
  std::vector<int> g;
  collect_gens(t, g);
  LinComb v;
  for (int c : g)
    if (p.cells[c].dim == d) v.add(c, 1);
  return v;
}

}  // namespace

TEST_SUITE("linearization") {
  TEST_CASE("delta of composites") {
    auto b = path();
    Linearization lin(b.p);
    const LinComb fg = lin.delta(comp(b.g("f"), b.g("g"), 0));
    CHECK(fg == LinComb::unit(b("f")) + LinComb::unit(b("g")) - LinComb::unit(b("y")));
    const LinComb ag = lin.delta(comp(b.g("a"), b.g("g"), 0));
    CHECK(ag == LinComb::unit(b("a")) + LinComb::unit(b("g")) - LinComb::unit(b("y")));
    CHECK(lin.pi(ag, 1, Sign::minus) == fg);
    CHECK(lin.delta(bnd(b.g("a"), 0, Sign::plus)) == LinComb::unit(b("y")));
    // Units: f #_0 y has δ = δ_f.
    CHECK(lin.delta(comp(b.g("f"), b.g("y"), 0)) == LinComb::unit(b("f")));
    CHECK_THROWS_AS(lin.delta(comp(b.g("g"), b.g("f"), 0), true), IllTyped);
  }

  TEST_CASE("sigma of globes") {
    for (int n = 0; n <= 4; ++n) {
      Linearization lin(globe(n));
      const LinComb s = lin.sigma();
      // 2 cells per dimension below n, one on top.
      Int total = 0;
      for (const auto& [x, c] : s.terms()) total += c;
      CHECK(total == 1);
      CHECK(positive(lin, s, Positivity::alternate));
    }
  }

  TEST_CASE("m basis") {
    auto b = path();
    Linearization lin(b.p);
    const int f = b("f"), x = b("x"), y = b("y");
    const LinComb mf = lin.m_vector(f);
    CHECK(mf == LinComb::unit(f) - LinComb::unit(x) - LinComb::unit(y));
    CHECK(lin.to_m(mf) == LinComb::unit(f, Basis::m));
    // pi_0^+ m_f = -m_x, so (1 - pi_0^+) m_f = m_f + m_x.
    CHECK(lin.pi(mf, 0, Sign::plus) == -LinComb::unit(x));
    CHECK(lin.to_m(mf - lin.pi(mf, 0, Sign::plus)) == LinComb::unit(f, Basis::m) + LinComb::unit(x, Basis::m));
    CHECK_FALSE(positive(lin, lin.pi(mf, 0, Sign::plus), Positivity::makkai));
    CHECK(positive(lin, mf - lin.pi(mf, 0, Sign::plus), Positivity::makkai));
    CHECK_FALSE(positive(lin, -LinComb::unit(x), Positivity::makkai));
    CHECK_FALSE(positive(lin, -LinComb::unit(x), Positivity::alternate));
    for (int i = 0; i < b.p.size(); ++i) CHECK(lin.to_delta(lin.to_m(LinComb::unit(i))) == LinComb::unit(i));
    CHECK_THROWS_AS(LinComb::unit(x) + LinComb::unit(x, Basis::m), BasisMismatch);
  }

  TEST_CASE("random terms: top dimension counting and Makkai positivity") {
    std::mt19937 rng(3);
    int checked = 0;
    for (int trial = 0; trial < 10; ++trial) {
      Polygraph p = test::random_polygraph(rng, 3, 3);
      FreeCat fc(p);
      Linearization lin(p);
      for (const auto& rt : test::random_terms(fc, rng, 60, 16)) {
        const int d = arrow_dim(rt.arrow);
        const LinComb dt = lin.delta(rt.term, true);
        CHECK(dt == lin.delta(term_of(rt.arrow)));
        CHECK(lin.grade(dt) == d);
        CHECK(lin.pi(dt, d, Sign::plus) == dt);
        CHECK(dt - lin.pi(dt, d - 1, Sign::plus) - lin.pi(dt, d - 1, Sign::minus) + lin.pi(dt, d - 1, Sign::minus) ==
              dt - lin.pi(dt, d - 1, Sign::plus));
        LinComb top;
        for (const auto& [x, c] : dt.terms())
          if (p.cells[x].dim == d) top.add(x, c);
        CHECK(top == occurrences(p, rt.term, d));
        CHECK(positive(lin, dt, Positivity::makkai));
        for (int k = 0; k < d; ++k)
          for (Sign s : both_signs) CHECK(positive(lin, dt - lin.delta(bnd(rt.term, k, s)), Positivity::makkai));
        ++checked;
      }
    }
    CHECK(checked > 100);
  }

  TEST_CASE("sub-polygraph membership") {
    auto b = path();
    Linearization lin(b.p);
    std::vector<char> m(b.p.size(), 0);
    for (auto n : {"x", "y", "f"}) m[b(n)] = 1;
    CHECK(in_subpolygraph(lin, b.g("f"), m));
    CHECK_FALSE(in_subpolygraph(lin, b.g("a"), m));
    CHECK(in_subpolygraph(lin, bnd(b.g("a"), 1, Sign::minus), m));
  }

  TEST_CASE("image sub-polygraph needs its hypothesis") {
    auto b = path();
    auto P = std::make_shared<const Polygraph>(b.p);
    auto d1 = std::make_shared<const Polygraph>(globe(1));
    // D_1 -> the composite f #_0 g: σ is not preserved.
    Morphism f{d1, P, {b.g("x"), b.g("z"), comp(b.g("f"), b.g("g"), 0)}};
    CHECK_FALSE(preserves_sigma(f));
    CHECK_THROWS_AS(image_subpolygraph(f, {1, 1, 1}), HypothesisFailed);
    auto img = image_subpolygraph(f, {1, 1, 1}, false);
    CHECK(img[b("y")] == 1);
    // D_1 -> f is polygraphic and fine.
    Morphism h{d1, P, {b.g("x"), b.g("y"), b.g("f")}};
    CHECK(preserves_sigma(h) == false);  // σ of the codomain has more cells
    CHECK(preserves_alternate_positivity(h));
  }

  TEST_CASE("globular group of a polygraph") {
    Linearization lin(globe(3));
    CHECK_NOTHROW(check_globular(lin.group()));
    std::vector<std::vector<int>> basis;
    ChainComplex k = globular_to_chain(lin.group(), &basis);
    CHECK(k.rank == std::vector<int>{2, 2, 2, 1});
    // ∂(top) = 2+ - 2-.
    CHECK(k.d[3][0][0] == -1);
    CHECK(k.d[3][1][0] == 1);
    CHECK(unimodular(canonical_iso(lin.group())));
  }

  TEST_CASE("chain complexes round trip through globular groups") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
      const ChainComplex k = test::random_complex(rng);
      CHECK_NOTHROW(check_chain(k));
      const GlobularGroup g = chain_to_globular(k);
      CHECK_NOTHROW(check_globular(g));
      const ChainComplex k2 = globular_to_chain(g);
      CHECK(k2.rank == k.rank);
      CHECK(k2.d == k.d);
      CHECK(k2.augmentation == k.augmentation);
    }
  }

  TEST_CASE("double sequences") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 40; ++trial) {
      const GlobularGroup g = test::random_globular(rng);
      CHECK_NOTHROW(check_globular(g));
      CHECK_NOTHROW(canonical_iso(g));
      for (int r = 0; r < 5; ++r) {
        LinComb v;
        for (int b = 0; b < g.size(); ++b) v.add(b, static_cast<int>(rng() % 7) - 3);
        const DoubleSequence ds = to_double_sequence(g, v);
        CHECK(from_double_sequence(g, ds) == v);
        CHECK(to_double_sequence(g, from_double_sequence(g, ds)) == ds);
        for (int n = 0; n <= g.top(); ++n)
          for (Sign s : both_signs) CHECK(pi_double_sequence(ds, n, s) == to_double_sequence(g, g.apply(n, s, v)));
      }
    }
  }

  TEST_CASE("broken globular relations are reported") {
    GlobularGroup g = make_group({0, 0, 1});
    g.pi[0][0][2] = LinComb::unit(0);
    g.pi[0][1][2] = LinComb::unit(2);
    CHECK_THROWS_AS(check_globular(g), GlobularRelationViolated);
  }
}
