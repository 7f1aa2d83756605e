#include <doctest.h>

#include <memory>
#include <set>

#include "ppx/errors.hpp"
#include "ppx/homotopy.hpp"
#include "ppx/linearization.hpp"
#include "ppx/polyplex.hpp"
#include "ppx/standard.hpp"
#include "ppx/steiner.hpp"
#include "ppx/subpolygraph.hpp"
#include "ppx/validate.hpp"
#include "support.hpp"

using namespace ppx;
using ppx::test::Builder;

namespace {

HomologyGroup free_rank(int r) { return HomologyGroup{Int(r), {}}; }

std::vector<Polygraph> small_plexes() {
  std::vector<Polygraph> out;
  for (int n = 0; n <= 3; ++n) out.push_back(globe(n));
  for (int n = 1; n <= 3; ++n) out.push_back(oriental(n));
  return out;
}

}  // namespace

TEST_SUITE("homotopy") {
  TEST_CASE("generating cofibrations and horns") {
    const Polygraph d1 = globe(1);
    const Inclusion i = generating_cofibration(d1);
    CHECK(i.missing() == std::vector<int>{d1.index_of_name("1")});
    CHECK(generating_cofibration(globe(0)).missing().size() == 1);

    const Horn h = horn(d1, d1.index_of_name("0+"));
    CHECK(h.inclusion.missing().size() == 2);
    CHECK(recognize_anodyne_pushout(h.inclusion));

    const Polygraph o2 = oriental(2);
    const Horn outer = horn(o2, o2.index_of_name("02"));
    const auto miss = outer.inclusion.missing();
    CHECK(miss.size() == 2);
    CHECK(recognize_anodyne_pushout(outer.inclusion));
    CHECK(horns(o2).size() == 3);
    CHECK_THROWS_AS(horn(o2, o2.index_of_name("0")), NotACell);
    CHECK_THROWS_AS(horn(o2, 99), NotACell);
    const Inclusion bt = generating_cofibration(o2);
    CHECK(bt.missing() == std::vector<int>{o2.index_of_name("012")});
  }

  TEST_CASE("occurrence of boundary cells in plexes") {
    for (ShapeId s : enumerate({3, 10, EnumKind::plex, false})) {
      const Shape& S = shape_of(s);
      if (S.dim == 0) continue;
      const Polygraph p = shape_polygraph(s);
      for (int x = 0; x < p.size(); ++x) {
        if (p.cells[x].dim != S.dim - 1) continue;
        const auto o = occurrences(p, S.top, x);
        CHECK(o[0] + o[1] == 1);
        CHECK(o[0] * o[1] == 0);
      }
    }
  }

  TEST_CASE("anodyne recognition") {
    Builder b;
    b.point("x");
    b.point("y");
    b.cell("f", "x", "y");
    b.cell("g", "x", "y");
    Inclusion single{b.p, {1, 1, 1, 0}};
    CHECK_FALSE(recognize_anodyne_pushout(single));

    // x occurs twice in the source of θ
    Builder d;
    d.point("*");
    d.cell("p", "*", "*");
    d.cell("q", "*", "*");
    d.cell("θ", 2, comp(d.g("p"), d.g("p"), 0), d.g("q"));
    Inclusion twice{d.p, {1, 0, 1, 0}};
    CHECK(occurrences(d.p, d("θ"), d("p"))[0] == 2);
    CHECK_FALSE(recognize_anodyne_pushout(twice));
    Inclusion once{d.p, {1, 1, 0, 0}};
    CHECK(recognize_anodyne_pushout(once));
    // not a sub-polygraph
    Inclusion open{d.p, {0, 1, 1, 0}};
    CHECK_FALSE(recognize_anodyne_pushout(open));
  }

  TEST_CASE("cylinder of the point") {
    const Polygraph dp = cylinder_Dprime();
    CHECK(dp.count_dim(0) == 2);
    CHECK(dp.count_dim(1) == 2);
    CHECK(dp.count_dim(2) == 1);
    CHECK(validate(dp).ok());
    const auto steps = decompose_anodyne(dprime_inclusion());
    REQUIRE(steps.has_value());
    REQUIRE(steps->size() == 2);
    CHECK(dp.label((*steps)[0].x) == "t");
    CHECK(dp.label((*steps)[0].theta) == "w");
    CHECK(dp.label((*steps)[1].x) == "p");
    CHECK(dp.label((*steps)[1].theta) == "θ");

    // each step on its own
    Inclusion first{dp, {1, 0, 0, 1, 1}};
    Inclusion second{dp, {1, 1, 1, 0, 0}};
    CHECK_FALSE(recognize_anodyne_pushout(first));  // p and θ would still be missing
    Inclusion only_first{dp, {1, 0, 0, 0, 0}};
    CHECK_FALSE(recognize_anodyne_pushout(only_first));
    CHECK(recognize_anodyne_pushout(second));
  }

  TEST_CASE("relative cylinder") {
    const RelativeCylinder r0 = cylinder_relative(globe(0));
    CHECK(r0.w.size() == 3);
    CHECK(r0.w.cells[r0.theta].dim == 1);
    CHECK(recognize_anodyne_pushout(r0.inclusion()));
    for (const Polygraph& c : small_plexes()) {
      const RelativeCylinder r = cylinder_relative(c);
      CHECK(r.w.size() == c.size() + 2);
      CHECK(validate(r.w).ok());
      CHECK(recognize_anodyne_pushout(r.inclusion()));
      if (c.dim() > 0) CHECK(to_string(r.w.cells[r.c1].src) == to_string(r.w.cells[r.c2].src));
      // c -> w is a polygraphic map
      auto cp = std::make_shared<const Polygraph>(c);
      auto wp = std::make_shared<const Polygraph>(r.w);
      CHECK_NOTHROW(check_morphism(polygraphic(cp, wp, r.from_c)));
    }
  }

  TEST_CASE("pushout products") {
    const Inclusion i = generating_cofibration(globe(1));
    const Polygraph d1 = globe(1);
    const Inclusion j = horn(d1, d1.index_of_name("0+")).inclusion;
    const Inclusion pp = pushout_product(i, j);
    const auto miss = pp.missing();
    REQUIRE(miss.size() == 2);
    CHECK(pp.target.cells[miss[0]].dim + pp.target.cells[miss[1]].dim == 3);
    CHECK(recognize_anodyne_pushout(pp));

    // unit
    const Inclusion e = generating_cofibration(globe(0));
    const Inclusion u = pushout_product(e, j);
    CHECK(u.member == j.member);

    // cofibration with cofibration: only the top cell is missing
    for (int n = 0; n <= 2; ++n)
      for (int m = 0; n + m <= 3; ++m) {
        const Inclusion c = pushout_product(generating_cofibration(globe(n)), generating_cofibration(globe(m)));
        CHECK(c.missing().size() == 1);
        CHECK_FALSE(recognize_anodyne_pushout(c));
      }

    // cofibration with horn over globes and orientals, both orders
    int checked = 0;
    for (const Polygraph& c : small_plexes())
      for (const Polygraph& t : small_plexes()) {
        if (c.dim() + t.dim() > 4 || t.dim() == 0) continue;
        for (const Horn& h : horns(t)) {
          CHECK(recognize_anodyne_pushout(pushout_product(generating_cofibration(c), h.inclusion)));
          CHECK(recognize_anodyne_pushout(pushout_product(h.inclusion, generating_cofibration(c))));
          ++checked;
        }
      }
    CHECK(checked > 20);
  }

  TEST_CASE("semi-simplicial sets") {
    const SemiSimplicialSet d2 = standard_simplex(2);
    CHECK(d2.count(0) == 3);
    CHECK(d2.count(1) == 3);
    CHECK(d2.count(2) == 1);
    CHECK_NOTHROW(check_semi_simplicial(standard_simplex(4)));
    const SemiSimplicialSet back = semi_simplicial_from_json(semi_simplicial_to_json(standard_simplex(3)));
    CHECK(back.face == standard_simplex(3).face);
    CHECK(back.name == standard_simplex(3).name);
    CHECK_THROWS_AS(semi_simplicial_from_json(json{{"simplices", {{0}, {0}}}, {"faces", {{json::array()}, {{0, 7}}}}}),
                    ParseError);
    SemiSimplicialSet bad = standard_simplex(2);
    std::swap(bad.face[2][0][0], bad.face[2][0][1]);
    CHECK_THROWS_AS(check_semi_simplicial(bad), PreconditionViolated);
    CHECK(face_along(d2, 2, 0, {0, 2}) == 1);
  }

  TEST_CASE("smith normal form and homology") {
    CHECK(smith_diagonal({{2, 4}, {6, 8}}) == std::vector<Int>{2, 4});
    CHECK(smith_diagonal({{0, 0}, {0, 0}}).empty());
    CHECK(smith_diagonal({{2, 0}, {0, 3}}) == std::vector<Int>{1, 6});

    SemiSimplicialSet pt;
    pt.add(0, {});
    CHECK(homology(pt, 2) == std::vector<HomologyGroup>{free_rank(1), free_rank(0), free_rank(0)});
    CHECK(reduced_acyclic(pt));
    const auto circle = homology(boundary_simplex(2), 1);
    CHECK(circle[0] == free_rank(1));
    CHECK(circle[1] == free_rank(1));
    const auto sphere = homology(boundary_simplex(3), 2);
    CHECK(sphere[1] == free_rank(0));
    CHECK(sphere[2] == free_rank(1));
    for (int n = 0; n <= 4; ++n) CHECK(reduced_acyclic(standard_simplex(n)));

    // loop e filled by a triangle with faces e, e, e: ∂ = e - e + e = e
    SemiSimplicialSet dunce;
    dunce.add(0, {});
    dunce.add(1, {0, 0});
    dunce.add(2, {0, 0, 0});
    const auto hd = homology(dunce, 2);
    CHECK(hd[1] == free_rank(0));
    CHECK(hd[2] == free_rank(0));
    SemiSimplicialSet twice;
    twice.add(0, {});
    twice.add(1, {0, 0});
    twice.add(1, {0, 0});
    twice.add(2, {0, 1, 0});  // ∂ = 2 e0 - e1 is primitive
    CHECK(homology(twice, 1)[1] == free_rank(1));
    twice.add(2, {1, 1, 1});  // kills e1, leaving e0 of order 2
    CHECK(homology(twice, 2)[1] == HomologyGroup{0, {2}});
    CHECK(homology(twice, 2)[2] == free_rank(0));
  }

  TEST_CASE("realization") {
    const Realization r0 = realize(globe(0));
    CHECK(r0.set.count(0) == 1);
    CHECK(r0.set.dim() == 0);
    const Realization r1 = realize(globe(1));
    CHECK(r1.set.count(0) == 3);
    CHECK(r1.set.count(1) == 2);
    CHECK_NOTHROW(check_semi_simplicial(r1.set));
    CHECK(reduced_acyclic(r1.set));
    CHECK(reduced_acyclic(realize(oriental(2)).set));

    const Polygraph bo2 = as_polygraph(SubPolygraph{std::make_shared<const Polygraph>(oriental(2)),
                                                    generating_cofibration(oriental(2)).member});
    const auto h = homology(realize(bo2).set, 1);
    CHECK(h[1] == free_rank(1));

    CHECK_THROWS_AS(realize(polygraph_from_json(read_json(test::fixture("ce1_Y.json")))), UnsupportedClass);

    for (ShapeId s : enumerate({3, 12, EnumKind::plex, true})) {
      const Realization r = realize(shape_polygraph(s));
      CHECK_NOTHROW(check_semi_simplicial(r.set));
      CHECK(reduced_acyclic(r.set));
    }
  }

  TEST_CASE("realization of monos and coproducts") {
    const Polygraph d2 = globe(2), b2 = boundary_globe(2);
    const auto dp = std::make_shared<const Polygraph>(d2);
    const auto bp = std::make_shared<const Polygraph>(b2);
    std::vector<int> map;
    for (int i = 0; i < b2.size(); ++i) map.push_back(d2.index_of_name(b2.cells[i].name));
    const Morphism f = polygraphic(bp, dp, map);
    const Realization rb = realize(b2), rd = realize(d2);
    const auto m = realize_map(f, rb, rd);
    for (int n = 0; n <= rb.set.dim(); ++n) {
      std::set<int> seen(m[n].begin(), m[n].end());
      CHECK(seen.size() == m[n].size());
      for (int x = 0; n > 0 && x < rb.set.count(n); ++x)
        for (int i = 0; i <= n; ++i) CHECK(m[n - 1][rb.set.face[n][x][i]] == rd.set.face[n][m[n][x]][i]);
    }

    Polygraph two = globe(1);
    const Polygraph o2 = oriental(2);
    const int base = two.size();
    for (const auto& c : o2.cells) {
      std::vector<int> shift(o2.size());
      for (int i = 0; i < o2.size(); ++i) shift[i] = base + i;
      two.add(c.dim, c.src ? rename(c.src, shift) : nullptr, c.tgt ? rename(c.tgt, shift) : nullptr, "o" + c.name);
    }
    const Realization ru = realize(two), ra = realize(globe(1)), rb2 = realize(o2);
    for (int n = 0; n <= 2; ++n) CHECK(ru.set.count(n) == ra.set.count(n) + rb2.set.count(n));
    CHECK(homology(ru.set, 1)[0] == free_rank(2));
  }

  TEST_CASE("orientals embedding") {
    for (int n = 0; n <= 4; ++n) {
      const Polygraph e = orientals_embed(standard_simplex(n));
      const Polygraph o = oriental(n);
      REQUIRE(e.size() == o.size());
      for (const auto& c : o.cells) {
        const int k = e.index_of_name(c.name);
        REQUIRE(k >= 0);
        CHECK(e.cells[k].dim == c.dim);
        if (c.dim == 0) continue;
        auto name_e = [&](int i) { return e.cells[i].name; };
        auto name_o = [&](int i) { return o.cells[i].name; };
        CHECK(to_string(e.cells[k].src, name_e) == to_string(c.src, name_o));
        CHECK(to_string(e.cells[k].tgt, name_e) == to_string(c.tgt, name_o));
      }
      CHECK(reduced_acyclic(realize(e).set));
    }
    const Polygraph b = orientals_embed(boundary_simplex(2));
    CHECK(b.count_dim(0) == 3);
    CHECK(b.count_dim(1) == 3);
    CHECK(b.count_dim(2) == 0);

    // two triangles on the edge 02: vertices 0 1 2 3, triangles 012 and 023
    SemiSimplicialSet s;
    for (int v = 0; v < 4; ++v) s.add(0, {}, std::to_string(v));
    const int e01 = s.add(1, {1, 0}), e12 = s.add(1, {2, 1}), e02 = s.add(1, {2, 0});
    const int e23 = s.add(1, {3, 2}), e03 = s.add(1, {3, 0});
    s.add(2, {e12, e02, e01});
    s.add(2, {e23, e03, e02});
    const Polygraph g = orientals_embed(s);
    CHECK(g.count_dim(0) == 4);
    CHECK(g.count_dim(1) == 5);
    CHECK(g.count_dim(2) == 2);
    CHECK(validate(g).ok());
    CHECK(is_regular(g));
  }
}
