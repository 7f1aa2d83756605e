#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ppx/errors.hpp"
#include "ppx/json_io.hpp"
#include "ppx/polyplex.hpp"
#include "ppx/standard.hpp"
#include "ppx/validate.hpp"
#include "support.hpp"

using namespace ppx;
using ppx::test::Builder;
using ppx::test::fixture;

namespace {

std::set<int> image_of(const Arrow& a) { return {a.label.begin(), a.label.end()}; }

// Cells of a shape outside its two (dim-1)-boundaries.
std::vector<int> inner_of(const Shape& S) {
  if (S.dim == 0) return {0};
  std::set<int> b = image_of(S.bnd[S.dim - 1][0]);
  for (int c : S.bnd[S.dim - 1][1].label) b.insert(c);
  std::vector<int> out;
  for (int c = 0; c < S.size(); ++c)
    if (!b.count(c)) out.push_back(c);
  return out;
}

// Reads {"name": coefficient} into the δ basis of p.
LinComb named(const Polygraph& p, const json& j) {
  LinComb v;
  for (const auto& [name, c] : j.items()) {
    const int i = p.index_of_name(name);
    REQUIRE(i >= 0);
    v.add(i, Int(c.get<long>()));
  }
  return v;
}

bool injective_map(const std::vector<int>& m, int size) {
  std::set<int> s(m.begin(), m.end());
  return s.size() == m.size() && static_cast<int>(m.size()) == size;
}

int shape_cell(const Arrow& a, int cell) {
  auto it = std::find(a.label.begin(), a.label.end(), cell);
  REQUIRE(it != a.label.end());
  return static_cast<int>(it - a.label.begin());
}

const std::vector<ShapeId>& small_shapes() {
  static const std::vector<ShapeId> all = [] {
    auto v = enumerate({2, 10, EnumKind::polyplex, false});
    auto w = enumerate({3, 9, EnumKind::polyplex, false});
    v.insert(v.end(), w.begin(), w.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }();
  return all;
}

}  // namespace

TEST_SUITE("polyplex") {
  TEST_CASE("validate") {
    CHECK(validate(globe(2)).ok());

    Builder b;
    b.point("x");
    b.point("y");
    b.point("z");
    b.cell("f", "x", "y");
    b.cell("g", "x", "z");
    b.cell("alpha", "f", "g");
    const auto r = validate(b.p);
    REQUIRE(r.issues.size() == 1);
    CHECK(r.issues[0].kind == "non-parallel boundary");
    CHECK(r.issues[0].cell == b("alpha"));

    Builder c;
    c.p.tag = ClassTag::positive;
    c.point("x");
    c.cell("f", "x", "x");
    c.cell("alpha", 2, c.g("x"), c.g("f"));
    const auto rc = validate(c.p);
    REQUIRE_FALSE(rc.ok());
    CHECK(rc.issues[0].kind == "positivity violated");
    c.p.tag = ClassTag::unchecked;
    CHECK(validate(c.p).ok());

    Builder d;
    d.point("x");
    d.point("y");
    d.cell("f", "x", "y");
    d.cell("g", "x", "y");
    d.cell("h", 2, comp(d.g("f"), d.g("g"), 0), d.g("f"));
    CHECK(validate(d.p).issues.at(0).kind == "ill-typed composition");

    auto y = load_polyplex(fixture("ce1_Y.json")).underlying;
    CHECK(validate(y).ok());
    y.tag = ClassTag::regular;
    const auto ry = validate(y);
    REQUIRE(ry.issues.size() == 1);
    CHECK(ry.issues[0].kind == "regularity violated");
    CHECK(y.label(ry.issues[0].cell) == "Omega");
  }

  TEST_CASE("enumeration small counts") {
    CHECK(enumerate({0, 5, EnumKind::polyplex, false}).size() == 1);
    // 1-polyplexes are directed paths; a path of length L has 2L+1 cells.
    for (int m = 1; m <= 11; ++m) {
      const auto v = enumerate({1, m, EnumKind::polyplex, false});
      CHECK(static_cast<int>(v.size()) == (m - 1) / 2 + 1);
    }
    const auto plexes = enumerate({2, 7, EnumKind::plex, false});
    FreeCat d2(globe(2));
    const ShapeId globe2 = d2.cell(4).shape;
    CHECK(std::count(plexes.begin(), plexes.end(), globe2) == 1);
    Builder b;
    b.point("x");
    b.point("y");
    b.point("z");
    b.cell("f", "x", "y");
    b.cell("g", "y", "z");
    b.cell("h", "x", "z");
    b.cell("alpha", 2, comp(b.g("f"), b.g("g"), 0), b.g("h"));
    const ShapeId lax = FreeCat(b.p).cell(b("alpha")).shape;
    CHECK(std::count(plexes.begin(), plexes.end(), lax) == 1);
    for (ShapeId s : plexes) CHECK(shape_of(s).is_plex());

    CHECK_THROWS_AS(enumerate({4, 5, EnumKind::polyplex, false}), BoundExceeded);
    CHECK_THROWS_AS(enumerate({2, 13, EnumKind::polyplex, false}), BoundExceeded);
  }

  TEST_CASE("enumeration is duplicate free and closed") {
    const auto v = enumerate({2, 9, EnumKind::polyplex, false});
    std::set<ShapeId> s(v.begin(), v.end());
    CHECK(s.size() == v.size());
    for (ShapeId x : v) {
      const Shape& S = shape_of(x);
      CHECK(S.size() <= 9);
      // Boundaries of enumerated shapes are enumerated too.
      for (int k = 0; k < S.dim; ++k)
        for (int e = 0; e < 2; ++e) CHECK(s.count(S.bnd[k][e].shape) == 1);
      // The underlying polygraph with its universal arrow is exactly the shape.
      const Polyplex p = polyplex_of(x);
      CHECK(is_polyplex_exact(p.underlying, p.universal));
      CHECK(shape_of_polyplex(p) == x);
    }
    // Regular-only pruning keeps exactly the regular shapes.
    const auto r = enumerate({2, 9, EnumKind::polyplex, true});
    std::vector<ShapeId> expect;
    for (ShapeId x : v)
      if (is_regular_shape(x)) expect.push_back(x);
    CHECK(r == expect);
  }

  TEST_CASE("sigma on regular polyplexes") {
    int checked = 0;
    for (ShapeId s : small_shapes()) {
      if (!is_regular_shape(s)) continue;
      const Polyplex p = polyplex_of(s);
      CHECK(is_polyplex(p.underlying, p.universal));
      ++checked;
    }
    CHECK(checked > 20);
  }

  TEST_CASE("spherical polyplexes") {
    for (ShapeId s : small_shapes()) {
      if (!is_regular_shape(s)) continue;
      const Shape& S = shape_of(s);
      const bool sph = has_spherical_boundary(s);
      CHECK(sph == spherical_by_disjoint_support(s));
      if (S.dim >= 1) {
        const bool src = spherical_by_intersection(S.bnd[S.dim - 1][0].shape);
        const bool tgt = spherical_by_intersection(S.bnd[S.dim - 1][1].shape);
        CHECK(src == tgt);
      }
      if (!sph) continue;
      Linearization lin(shape_polygraph(s));
      LinComb expect;
      for (int x : inner_of(S)) expect.add(x, Int((S.dim + S.cell_dim[x]) % 2 ? -1 : 1));
      CHECK(lin.delta(S.witness) == expect);
      // Every cell lies in the plex of some top cell.
      std::set<int> covered;
      for (int c = 0; c < S.size(); ++c)
        if (S.cell_dim[c] == S.dim)
          for (int x : subplex(s, c).label) covered.insert(x);
      CHECK(static_cast<int>(covered.size()) == S.size());
    }
    FreeCat d3(globe(3));
    CHECK(has_spherical_boundary(d3.cell(6).shape));
    const Polyplex x = load_polyplex(fixture("ce1_X.json"));
    const ShapeId xs = shape_of_polyplex(x);
    CHECK(static_cast<int>(x.underlying.size()) == read_json(fixture("ce1_X.json"))["expect"]["cells"].get<int>());
    CHECK_FALSE(has_spherical_boundary(xs));
    CHECK_FALSE(spherical_by_disjoint_support(xs));
  }

  TEST_CASE("inner owner") {
    for (ShapeId s : small_shapes()) {
      if (!is_regular_shape(s)) continue;
      const Shape& S = shape_of(s);
      for (int x = 0; x < S.size(); ++x) {
        if (S.cell_dim[x] >= S.dim) continue;
        const InnerScan r = inner_scan(s, x);
        CHECK(r.in_source != (r.owners.size() == 1));
        CHECK(r.owners.size() <= 1);
      }
    }
    Builder b;
    b.point("x");
    b.point("y");
    b.cell("f", "x", "y");
    b.cell("g", "x", "y");
    b.cell("h", "x", "y");
    b.cell("alpha", "f", "g");
    b.cell("beta", "g", "h");
    const Arrow a = classify(b.p, comp(b.g("alpha"), b.g("beta"), 1));
    const InnerOwner g = inner_owner(a.shape, shape_cell(a, b("g")));
    CHECK_FALSE(g.source);
    CHECK(g.owner == shape_cell(a, b("alpha")));
    CHECK(inner_owner(a.shape, shape_cell(a, b("x"))).source);
    CHECK(inner_owner(a.shape, shape_cell(a, b("y"))).source);
    CHECK(inner_owner(a.shape, shape_cell(a, b("f"))).source);
    CHECK_THROWS_AS(inner_owner(a.shape, shape_cell(a, b("beta"))), PreconditionViolated);
  }

  TEST_CASE("collapse single top") {
    for (int n = 1; n <= 4; ++n) {
      FreeCat dn(globe(n)), dm(globe(n - 1));
      const Polyplex c = collapse_single_top(dn.cell(2 * n).shape);
      CHECK(shape_of_polyplex(c) == dm.cell(2 * (n - 1)).shape);
    }
    Builder b;
    b.point("x");
    b.point("y");
    b.point("z");
    b.point("w");
    b.cell("f", "x", "y");
    b.cell("g", "y", "z");
    b.cell("g2", "y", "z");
    b.cell("h", "z", "w");
    b.cell("alpha", "g", "g2");
    const Arrow whisk = classify(b.p, comp(comp(b.g("f"), b.g("alpha"), 0), b.g("h"), 0));
    const Polyplex c = collapse_single_top(whisk.shape);
    CHECK(is_regular(c.underlying));
    CHECK(is_polyplex(c.underlying, c.universal));
    CHECK(shape_of_polyplex(c) == classify(b.p, comp(comp(b.g("f"), b.g("g"), 0), b.g("h"), 0)).shape);

    // Collapsed regular plexes keep their (n-2)-boundaries.
    for (ShapeId s : small_shapes()) {
      const Shape& S = shape_of(s);
      if (!S.is_plex() || S.dim < 2 || !is_regular_shape(s)) continue;
      const Polyplex q = collapse_single_top(s);
      const ShapeId t = shape_of_polyplex(q);
      CHECK(shape_of(t).dim == S.dim - 1);
      CHECK(is_regular_shape(t));
      for (int e = 0; e < 2; ++e) CHECK(shape_of(t).bnd[S.dim - 2][e].shape == S.bnd[S.dim - 2][e].shape);
    }
    CHECK_THROWS_AS(collapse_single_top(classify(b.p, comp(b.g("f"), b.g("g"), 0)).shape), PreconditionViolated);
  }

  TEST_CASE("first counterexample") {
    const json meta = read_json(fixture("ce1_Y.json"));
    const Polyplex y = load_polyplex(fixture("ce1_Y.json"));
    CHECK_FALSE(is_regular(y.underlying));
    CHECK_THROWS_AS(is_polyplex(y.underlying, y.universal), UnsupportedClass);
    CHECK(is_polyplex_exact(y.underlying, y.universal));
    Linearization lin(y.underlying);
    CHECK(sigma_image(lin, y.universal) - lin.sigma() == named(y.underlying, meta["expect"]["sigma_defect"]));
    CHECK_FALSE(sigma_test(y.underlying, y.universal));

    const Polyplex yp = load_polyplex(fixture("ce1_Yprime.json"));
    CHECK(sigma_test(yp.underlying, yp.universal));
    CHECK_FALSE(is_polyplex_exact(yp.underlying, yp.universal));
    const auto ptr = std::make_shared<Polygraph>(yp.underlying);
    const Morphism f = arrow_morphism(ptr, yp.universal);
    CHECK(preserves_sigma(f));
    CHECK(is_generic(f).answer == Verdict::no);
  }

  TEST_CASE("second counterexample") {
    const Morphism lam = load_morphism(fixture("ce2_lambda.json"));
    const Morphism lamp = load_morphism(fixture("ce2_lambda_prime.json"));
    const json meta = read_json(fixture("ce2_lambda.json"));
    CHECK(validate(*lam.domain).ok());
    CHECK(validate(*lam.codomain).ok());
    CHECK(is_regular(*lam.codomain));
    Linearization lx(*lam.domain), ly(*lam.codomain);
    const LinComb image = push(linear_images(lam, ly), lx.sigma());
    CHECK(image - ly.sigma() == named(*lam.codomain, meta["expect"]["sigma_defect"]));
    CHECK_FALSE(is_regular_morphism(lam));
    const GenericAnswer g = is_generic(lam);
    CHECK(g.answer == Verdict::yes);
    CHECK(g.branch == "generic factorization");
    CHECK(is_generic(lam, false).answer == Verdict::unknown);

    CHECK(preserves_sigma(lamp));
    CHECK(is_generic(lamp).answer == Verdict::no);
    const Factorization fac = generic_factorization(lamp);
    CHECK(fac.middle->size() == lam.codomain->size());
    CHECK(is_generic(fac.generic).answer == Verdict::yes);
    const auto h = fac.polygraphic.cell_map();
    std::set<int> hit(h.begin(), h.end());
    CHECK(static_cast<int>(hit.size()) == lamp.codomain->size());
    CHECK(static_cast<int>(h.size()) == lamp.codomain->size() + 1);
  }

  TEST_CASE("generic factorization") {
    // Polygraphic input: the middle is the domain again.
    Builder b;
    b.point("x");
    b.point("y");
    b.cell("f", "x", "y");
    b.cell("g", "x", "y");
    b.cell("alpha", "f", "g");
    auto bp = std::make_shared<Polygraph>(b.p);
    const Morphism id = identity_morphism(bp);
    const Factorization fi = generic_factorization(id);
    CHECK(fi.middle->size() == bp->size());
    CHECK(fi.polygraphic.cell_map() == id.cell_map());

    const Polyplex x = load_polyplex(fixture("ce1_X.json"));
    auto xp = std::make_shared<Polygraph>(x.underlying);
    const Factorization fx = generic_factorization(arrow_morphism(xp, x.universal));
    CHECK(fx.middle->size() == xp->size());
    const Polyplex mid{*fx.middle, fx.generic.image.back()};
    CHECK(shape_of_polyplex(mid) == classify(*xp, x.universal).shape);

    // Random arrows: the generic part of D_n -> P* is the classifying polyplex.
    std::mt19937 rng(7);
    for (int round = 0; round < 6; ++round) {
      auto p = std::make_shared<Polygraph>(test::random_polygraph(rng, 2, 3));
      FreeCat fc(*p);
      for (const auto& rt : test::random_terms(fc, rng, 25, 12)) {
        const Morphism f = arrow_morphism(p, rt.term);
        const Factorization fac = generic_factorization(f);
        const Polyplex m{*fac.middle, fac.generic.image.back()};
        CHECK(shape_of_polyplex(m) == rt.arrow.shape);
        const Morphism back = then(fac.generic, fac.polygraphic);
        for (int i = 0; i < f.domain->size(); ++i) CHECK(fc.equal(back.image[i], f.image[i]));
        const bool bij = injective_map(fac.polygraphic.cell_map(), p->size());
        CHECK((is_generic(f).answer == Verdict::yes) == bij);
      }
    }
  }

  TEST_CASE("universal maps of regular polyplexes are generic") {
    for (ShapeId s : small_shapes()) {
      if (!is_regular_shape(s)) continue;
      const Polyplex p = polyplex_of(s);
      auto ptr = std::make_shared<Polygraph>(p.underlying);
      CHECK(is_generic(arrow_morphism(ptr, p.universal)).answer == Verdict::yes);
    }
  }

  TEST_CASE("syntactic lift") {
    Builder b;
    b.point("x");
    b.point("y");
    b.point("z");
    b.cell("f", "x", "y");
    b.cell("g", "y", "z");
    b.cell("f2", "x", "y");
    b.cell("alpha", "f", "f2");
    auto bp = std::make_shared<Polygraph>(b.p);
    const Morphism id = identity_morphism(bp);
    FreeCat fc(b.p);
    const Term v = comp(b.g("alpha"), b.g("g"), 0);
    const Lift l = syntactic_lift(id, v, b.g("alpha"), b.g("g"), 0);
    CHECK(fc.equal(l.u, b.g("alpha")));
    CHECK(fc.equal(l.w, b.g("g")));
    CHECK(lift_candidates(id, v, b.g("alpha"), b.g("g"), 0).size() == 1);
    CHECK_THROWS_AS(syntactic_lift(id, v, b.g("g"), b.g("alpha"), 0), DecompositionMismatch);
    CHECK_THROWS_AS(syntactic_lift(id, v, b.g("f"), b.g("g"), 0), DecompositionMismatch);

    // Three intervals onto two, the last one contracted.
    Builder x;
    for (auto n : {"0", "1", "2", "3"}) x.point(n);
    x.cell("a", "0", "1");
    x.cell("b", "1", "2");
    x.cell("c", "2", "3");
    Builder y;
    for (auto n : {"0", "1", "2"}) y.point(n);
    y.cell("p", "0", "1");
    y.cell("q", "1", "2");
    auto xp = std::make_shared<Polygraph>(x.p);
    auto yp = std::make_shared<Polygraph>(y.p);
    const Morphism f{xp, yp, {y.g("0"), y.g("1"), y.g("2"), y.g("2"), y.g("p"), y.g("q"), y.g("2")}};
    const Term abc = comp(comp(x.g("a"), x.g("b"), 0), x.g("c"), 0);
    const Lift s = syntactic_lift(f, abc, y.g("p"), y.g("q"), 0);
    FreeCat fx(x.p);
    CHECK(fx.equal(s.u, x.g("a")));
    CHECK(fx.equal(s.w, comp(x.g("b"), x.g("c"), 0)));

    // Polygraphic lifts agree with the exhaustive search on random composites.
    std::mt19937 rng(11);
    for (int round = 0; round < 4; ++round) {
      auto p = std::make_shared<Polygraph>(test::random_polygraph(rng, 2, 2));
      const Morphism ip = identity_morphism(p);
      FreeCat pc(*p);
      for (const auto& rt : test::random_terms(pc, rng, 20, 9)) {
        if (rt.term->kind != TermNode::Kind::comp) continue;
        const int k = rt.term->k;
        if (pc.dimension(rt.term->left) <= k || pc.dimension(rt.term->right) <= k) continue;
        const Lift l2 = syntactic_lift(ip, rt.term, rt.term->left, rt.term->right, k);
        const auto all = lift_candidates(ip, rt.term, rt.term->left, rt.term->right, k);
        REQUIRE(all.size() == 1);
        CHECK(pc.equal(l2.u, all[0].u));
        CHECK(pc.equal(l2.w, all[0].w));
      }
    }
  }

  TEST_CASE("polyplex json round trip") {
    for (ShapeId s : enumerate({2, 7, EnumKind::polyplex, false})) {
      const Polyplex p = polyplex_of(s);
      const Polyplex q = polyplex_from_json(polyplex_to_json(p));
      CHECK(shape_of_polyplex(q) == s);
    }
  }
}
