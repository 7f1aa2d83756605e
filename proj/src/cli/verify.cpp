#include "ppx/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "ppx/errors.hpp"
#include "ppx/freecat.hpp"
#include "ppx/generators.hpp"
#include "ppx/globular.hpp"
#include "ppx/homotopy.hpp"
#include "ppx/json_io.hpp"
#include "ppx/linearization.hpp"
#include "ppx/polyplex.hpp"
#include "ppx/standard.hpp"
#include "ppx/steiner.hpp"
#include "ppx/subpolygraph.hpp"

#ifndef PPX_FIXTURES
#define PPX_FIXTURES "fixtures"
#endif

namespace ppx {

VerifyOptions default_verify_options() {
  VerifyOptions o;
  o.dim = enumeration_dim_bound();
  o.max_cells = enumeration_cell_bound();
  const char* f = std::getenv("PPX_FIXTURES");
  o.fixtures = f && *f ? f : PPX_FIXTURES;
  return o;
}

namespace {

// Collects the first failure; later ones only bump the counter.
struct Tally {
  long instances = 0, failures = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    ++instances;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  void count() { ++instances; }
};

std::string fixture(const VerifyOptions& o, const std::string& rel) { return o.fixtures + "/" + rel; }

LinComb named(const Polygraph& p, const json& j) {
  LinComb v;
  for (const auto& [name, c] : j.items()) {
    const int i = p.index_of_name(name);
    if (i < 0) throw ParseError("fixture names unknown cell " + name);
    v.add(i, Int(c.get<long>()));
  }
  return v;
}

std::vector<ShapeId> regular_polyplexes(const VerifyOptions& o) {
  return enumerate({o.dim, o.max_cells, EnumKind::polyplex, true});
}

std::vector<ShapeId> regular_plexes(const VerifyOptions& o) { return enumerate({o.dim, o.max_cells, EnumKind::plex, true}); }

std::string shape_label(ShapeId s) {
  const Shape& S = shape_of(s);
  std::ostringstream out;
  out << "shape dim " << S.dim << " with " << S.size() << " cells";
  return out.str();
}

bool same_pi(const GlobularGroup& a, const GlobularGroup& b) {
  if (a.grade != b.grade) return false;
  for (int x = 0; x < a.size(); ++x)
    for (int k = 0; k < a.grade[x]; ++k)
      for (Sign e : both_signs)
        if (!(a.apply_basis(k, e, x) == b.apply_basis(k, e, x))) return false;
  return true;
}

int top_of(const Polygraph& p) { return plex_top(p); }

// Merges cell b into cell a.
Polygraph identify(const Polygraph& p, int a, int b) {
  std::vector<int> map(p.size());
  for (int i = 0; i < p.size(); ++i) map[i] = i - (i > b ? 1 : 0);
  map[b] = map[a];
  Polygraph q;
  q.tag = ClassTag::positive;
  for (int i = 0; i < p.size(); ++i) {
    if (i == b) continue;
    const Cell& c = p.cells[i];
    q.add(c.dim, c.src ? rename(c.src, map) : nullptr, c.tgt ? rename(c.tgt, map) : nullptr, c.name);
  }
  return q;
}

std::vector<Polygraph> globes_and_orientals(int max_dim) {
  std::vector<Polygraph> out;
  for (int n = 0; n <= max_dim; ++n) out.push_back(globe(n));
  for (int n = 1; n <= std::min(max_dim, oriental_bound()); ++n) out.push_back(oriental(n));
  return out;
}

// --------------------------------------------------------------------------

void ce1(const VerifyOptions& o, Tally& t) {
  const json meta = read_json(fixture(o, "ce1_Y.json"));
  const Polyplex y = load_polyplex(fixture(o, "ce1_Y.json"));
  const Linearization lin(y.underlying);
  t.check(sigma_image(lin, y.universal) - lin.sigma() == named(y.underlying, meta["expect"]["sigma_defect"]),
          "CE1: image of sigma differs from sigma_Y - y");
  t.check(is_polyplex_exact(y.underlying, y.universal), "CE1: Y is not a polyplex");
  t.check(!is_regular(y.underlying), "CE1: Y is regular");

  const json metap = read_json(fixture(o, "ce1_Yprime.json"));
  const Polyplex yp = load_polyplex(fixture(o, "ce1_Yprime.json"));
  t.check(sigma_test(yp.underlying, yp.universal) == metap["expect"]["sigma_test"].get<bool>(),
          "CE1: Y' fails the raw sigma test");
  const Morphism f = arrow_morphism(std::make_shared<const Polygraph>(yp.underlying), yp.universal);
  const Factorization fac = generic_factorization(f);
  const auto h = fac.polygraphic.cell_map();
  const bool bijective = std::set<int>(h.begin(), h.end()).size() == h.size() &&
                         static_cast<int>(h.size()) == fac.polygraphic.codomain->size();
  t.check(bijective == metap["expect"]["generic"].get<bool>(), "CE1: generic factorization of Y' is bijective");
  t.check((is_generic(f).answer == Verdict::yes) == metap["expect"]["generic"].get<bool>(),
          "CE1: Y' classified as generic");
}

void ce2(const VerifyOptions& o, Tally& t) {
  const json meta = read_json(fixture(o, "ce2_lambda.json"));
  const json metap = read_json(fixture(o, "ce2_lambda_prime.json"));
  const Morphism lam = load_morphism(fixture(o, "ce2_lambda.json"));
  const Morphism lamp = load_morphism(fixture(o, "ce2_lambda_prime.json"));
  const Linearization lx(*lam.domain), ly(*lam.codomain);
  t.check(push(linear_images(lam, ly), lx.sigma()) - ly.sigma() == named(*lam.codomain, meta["expect"]["sigma_defect"]),
          "CE2: image of sigma_X differs from sigma_Y - t");
  t.check((is_generic(lam).answer == Verdict::yes) == meta["expect"]["generic"].get<bool>(), "CE2: lambda genericity");
  t.check(is_regular_morphism(lam) == meta["expect"]["regular"].get<bool>(), "CE2: lambda regularity");
  t.check((is_generic(lamp).answer == Verdict::yes) == metap["expect"]["generic"].get<bool>(),
          "CE2: lambda' genericity");
  t.check(preserves_sigma(lamp) == metap["expect"]["sigma_preserved"].get<bool>(), "CE2: lambda' sigma preservation");
}

void sigma_criterion(const VerifyOptions& o, Tally& t) {
  const auto shapes = regular_polyplexes(o);
  for (ShapeId s : shapes) {
    const Polyplex p = polyplex_of(s);
    const Linearization lin(p.underlying);
    t.check(sigma_image(lin, p.universal) == lin.sigma() && is_polyplex(p.underlying, p.universal),
            "sigma test fails on a regular polyplex, " + shape_label(s));
  }
  // Non-polyplexes by identifying two parallel cells.
  long made = 0;
  std::vector<ShapeId> order = shapes;
  std::mt19937 rng(o.seed + 3);
  std::shuffle(order.begin(), order.end(), rng);
  for (ShapeId s : order) {
    if (made >= 200) break;
    const Polyplex p = polyplex_of(s);
    const FreeCat fc(p.underlying);
    const Polygraph& g = p.underlying;
    for (int a = 0; a < g.size() && made < 200; ++a)
      for (int b = a + 1; b < g.size() && made < 200; ++b) {
        if (g.cells[a].dim != g.cells[b].dim) continue;
        if (g.cells[a].dim > 0 && !(fc.equal(g.cells[a].src, g.cells[b].src) && fc.equal(g.cells[a].tgt, g.cells[b].tgt)))
          continue;
        const Polygraph q = identify(g, a, b);
        if (!is_regular(q)) continue;
        std::vector<int> map(g.size());
        for (int i = 0; i < g.size(); ++i) map[i] = i - (i > b ? 1 : 0);
        map[b] = map[a];
        const Term u = rename(p.universal, map);
        t.check(!is_polyplex(q, u), "sigma test accepts an identification of " + shape_label(s));
        ++made;
      }
  }
  t.check(made == 200, "fewer than 200 identifications available at these bounds");
}

void sphericity(const VerifyOptions& o, Tally& t) {
  for (ShapeId s : regular_polyplexes(o)) {
    const Shape& S = shape_of(s);
    t.check(spherical_by_intersection(s) == spherical_by_disjoint_support(s),
            "sphericity methods disagree on " + shape_label(s));
    if (S.dim >= 1)
      t.check(spherical_by_intersection(S.bnd[S.dim - 1][0].shape) == spherical_by_intersection(S.bnd[S.dim - 1][1].shape),
              "source and target sphericity differ on " + shape_label(s));
  }
}

void inner_cells(const VerifyOptions& o, Tally& t) {
  for (ShapeId s : regular_polyplexes(o)) {
    const Shape& S = shape_of(s);
    for (int x = 0; x < S.size(); ++x) {
      if (S.cell_dim[x] >= S.dim) continue;
      const InnerScan r = inner_scan(s, x);
      t.check(r.in_source != (r.owners.size() == 1) && r.owners.size() <= 1,
              "inner cell trichotomy fails on " + shape_label(s));
    }
  }
}

void delta_counting(const VerifyOptions& o, Tally& t) {
  std::mt19937 rng(o.seed);
  long done = 0;
  while (done < 500) {
    const Polygraph p = rnd::random_polygraph(rng, 3, 3);
    const FreeCat fc(p);
    const Linearization lin(p);
    for (const auto& rt : rnd::random_terms(fc, rng, 60, 16)) {
      if (done >= 500) break;
      const int d = arrow_dim(rt.arrow);
      const LinComb dt = lin.delta(rt.term, true);
      std::vector<int> gens;
      collect_gens(rt.term, gens);
      LinComb walk, top;
      for (int c : gens)
        if (p.cells[c].dim == d) walk.add(c, 1);
      for (const auto& [x, c] : dt.terms())
        if (p.cells[x].dim == d) top.add(x, c);
      bool ok = top == walk && positive(lin, dt, Positivity::makkai);
      for (int k = 0; k < d && ok; ++k)
        for (Sign s : both_signs) ok = ok && positive(lin, dt - lin.delta(bnd(rt.term, k, s)), Positivity::makkai);
      t.check(ok, "counting fails on " + to_string(rt.term, [&](int c) { return p.label(c); }));
      ++done;
    }
  }
}

void tensor_laws(const VerifyOptions& o, Tally& t) {
  std::vector<Polygraph> inputs = globes_and_orientals(4);
  for (ShapeId s : enumerate({std::min(o.dim, 2), std::min(o.max_cells, 7), EnumKind::plex, true}))
    inputs.push_back(shape_polygraph(s));
  for (const Polygraph& a : inputs)
    for (const Polygraph& b : inputs) {
      if (a.dim() + b.dim() > 4 || a.size() * b.size() > 150) continue;
      const Polygraph x = tensor_polygraph(a, b);
      const Linearization la(a), lb(b), lx(x);
      t.check(same_pi(lx.group(), tensor_globular(la.group(), lb.group())), "delta of a tensor is not the tensor of deltas");
      t.check(lx.sigma() == tensor_lin(la.sigma(), lb.sigma(), b.size()), "sigma of a tensor is not the tensor of sigmas");
      const Term u = gen(tensor_index(top_of(a), top_of(b), b.size()));
      if (a.dim() + b.dim() >= 1 && a.cells[top_of(a)].name == std::to_string(a.dim()) &&
          b.cells[top_of(b)].name == std::to_string(b.dim()) && a.size() == 2 * a.dim() + 1 &&
          b.size() == 2 * b.dim() + 1) {
        const Morphism f = arrow_morphism(std::make_shared<const Polygraph>(x), u);
        t.check(preserves_sigma(f) && preserves_alternate_positivity(f),
                "D_(n+m) -> D_n ⊗ D_m does not preserve sigma and alternate positivity");
      }
    }
  const GlobularGroup d1 = Linearization(globe(1)).group();
  t.check(same_pi(tensor_globular(tensor_globular(d1, d1), d1), tensor_globular(d1, tensor_globular(d1, d1))),
          "tensor of globular groups is not associative on D_1^3");
  const Polygraph sq = tensor_polygraph(globe(1), globe(1));
  t.check(sq.count_dim(0) == 4 && sq.count_dim(1) == 4 && sq.count_dim(2) == 1, "D_1 ⊗ D_1 has the wrong grades");
}

void tensor_regular(const VerifyOptions& o, Tally& t) {
  const auto plexes = regular_plexes(o);
  for (ShapeId s : plexes)
    for (ShapeId r : plexes) {
      const Shape &S = shape_of(s), &R = shape_of(r);
      if (S.dim + R.dim > 4) continue;
      const Polygraph a = shape_polygraph(s), b = shape_polygraph(r);
      const Polygraph x = tensor_polygraph(a, b);
      t.check(is_regular(x), "tensor of " + shape_label(s) + " and " + shape_label(r) + " is not regular");
      if (has_spherical_boundary(s) && has_spherical_boundary(r)) {
        const Term u = gen(tensor_index(S.top, R.top, b.size()));
        t.check(is_polyplex(x, u) && has_spherical_boundary(shape_of_polyplex({x, u})),
                "tensor of " + shape_label(s) + " and " + shape_label(r) + " is not spherical");
      }
    }
}

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void cone_orientals(const VerifyOptions& o, Tally& t) {
  for (ShapeId s : regular_plexes(o)) {
    const Polygraph p = shape_polygraph(s);
    const Polygraph c = cone_polygraph(p);
    const Term u = gen(cone_t(p, shape_of(s).top));
    t.check(is_regular(c) && is_polyplex(c, u) && has_spherical_boundary(shape_of_polyplex({c, u})),
            "cone of " + shape_label(s) + " is not a spherical plex");
  }
  const int top = std::min(5, oriental_bound());
  t.check(top == 5, "oriental bound below 5");
  std::vector<Polygraph> o_n;
  for (int n = 0; n <= top; ++n) {
    o_n.push_back(oriental(n));
    for (int k = 0; k <= n; ++k)
      t.check(o_n[n].count_dim(k) == binom(n + 1, k + 1), "oriental(" + std::to_string(n) + ") has the wrong cell count");
  }
  // Polygraphic maps O(k) -> O(n) are the order preserving injections.
  for (int n = 0; n <= std::min(4, top); ++n) {
    const Polygraph& on = o_n[n];
    for (int k = 0; k <= n; ++k) {
      const Polygraph& ok = o_n[k];
      const ShapeId ks = classify(ok, gen(plex_top(ok))).shape;
      long maps = 0;
      for (int c = 0; c < on.size(); ++c) {
        if (on.cells[c].dim != k) continue;
        const Arrow a = classify(on, gen(c));
        if (a.shape != ks) continue;
        ++maps;
        // the map induced on cells, read through the names
        const Arrow kk = classify(ok, gen(plex_top(ok)));
        const std::string& image = on.cells[c].name;
        bool monotone = std::is_sorted(image.begin(), image.end()) &&
                        std::adjacent_find(image.begin(), image.end()) == image.end();
        for (int i = 0; i < static_cast<int>(kk.label.size()); ++i) {
          std::string want;
          for (char ch : ok.cells[kk.label[i]].name) want += image[ch - '0'];
          monotone = monotone && on.cells[a.label[i]].name == want;
        }
        t.check(monotone, "cell " + image + " of oriental(" + std::to_string(n) + ") is not an injection");
      }
      t.check(maps == binom(n + 1, k + 1), "wrong number of maps oriental(" + std::to_string(k) + ") -> oriental(" +
                                               std::to_string(n) + ")");
    }
  }
}

void anodyne(const VerifyOptions& o, Tally& t) {
  const auto base = globes_and_orientals(3);
  for (const Polygraph& c : base)
    for (const Polygraph& th : base) {
      if (th.dim() == 0 || c.dim() + th.dim() > 4) continue;
      for (const Horn& h : horns(th)) {
        t.check(recognize_anodyne_pushout(pushout_product(generating_cofibration(c), h.inclusion)),
                "pushout product i ⊗' j is not a recognized anodyne pushout");
        t.check(recognize_anodyne_pushout(pushout_product(h.inclusion, generating_cofibration(c))),
                "pushout product j ⊗' i is not a recognized anodyne pushout");
      }
    }
  const json dj = read_json(fixture(o, "dprime_star.json"));
  const Polygraph fix = polygraph_from_json(dj);
  const Inclusion di = dprime_inclusion();
  t.check(polygraph_to_json(fix) == polygraph_to_json(cylinder_Dprime()), "D'* differs from its fixture");
  t.check(static_cast<long>(di.missing().size()) == dj["expect"]["missing"].get<long>(), "* -> D'* misses the wrong cells");
  const auto steps = decompose_anodyne(di);
  json got = json::array();
  if (steps)
    for (const AnodyneStep& st : *steps) got.push_back({di.target.label(st.x), di.target.label(st.theta)});
  t.check(steps && got == dj["expect"]["anodyne_steps"], "* -> D'* decomposes as " + got.dump());
  std::vector<Polygraph> cs = base;
  for (ShapeId s : regular_plexes(o)) cs.push_back(shape_polygraph(s));
  for (const Polygraph& c : cs) {
    const RelativeCylinder r = cylinder_relative(c);
    const auto d = decompose_anodyne(r.inclusion());
    t.check(d && d->size() == 1 && recognize_anodyne_pushout(r.inclusion()), "c -> w is not a recognized anodyne step");
  }
}

void realization(const VerifyOptions& o, Tally& t) {
  for (ShapeId s : regular_plexes(o))
    t.check(reduced_acyclic(realize(shape_polygraph(s)).set), "realization of " + shape_label(s) + " is not acyclic");
  const Polygraph o2 = oriental(2);
  const Polygraph b = as_polygraph(SubPolygraph{std::make_shared<const Polygraph>(o2), generating_cofibration(o2).member});
  const auto h = homology(realize(b).set, 1);
  t.check(h[1] == HomologyGroup{1, {}}, "boundary of oriental(2) does not have H_1 = Z");
  for (int n = 0; n <= 4; ++n)
    t.check(reduced_acyclic(realize(orientals_embed(standard_simplex(n))).set),
            "oriental embedding of the " + std::to_string(n) + "-simplex is not acyclic");
}

void round_trips(const VerifyOptions& o, Tally& t) {
  std::mt19937 rng(o.seed + 12);
  for (int trial = 0; trial < 100; ++trial) {
    const ChainComplex k = rnd::random_complex(rng);
    const ChainComplex k2 = globular_to_chain(chain_to_globular(k));
    bool ok = k2.rank == k.rank && k2.d == k.d && k2.augmentation == k.augmentation;
    const GlobularGroup g = rnd::random_globular(rng);
    ok = ok && unimodular(canonical_iso(g));
    for (int r = 0; r < 3; ++r) {
      LinComb v;
      for (int b = 0; b < g.size(); ++b) v.add(b, static_cast<int>(rng() % 7) - 3);
      const DoubleSequence ds = to_double_sequence(g, v);
      ok = ok && from_double_sequence(g, ds) == v && to_double_sequence(g, from_double_sequence(g, ds)) == ds;
    }
    t.check(ok, "round trip fails on trial " + std::to_string(trial));
  }
}

struct Criterion {
  const char* name;
  void (*run)(const VerifyOptions&, Tally&);
};

const Criterion criteria[criterion_count] = {
    {"CE1 regression", ce1},
    {"CE2 regression", ce2},
    {"sigma criterion on regular polyplexes", sigma_criterion},
    {"sphericity cross-validation", sphericity},
    {"inner cell trichotomy", inner_cells},
    {"delta counting", delta_counting},
    {"tensor laws", tensor_laws},
    {"regular closure under tensor", tensor_regular},
    {"cones and orientals", cone_orientals},
    {"anodyne calculus", anodyne},
    {"realization", realization},
    {"globular, chain and double sequence round trips", round_trips},
};

}  // namespace

CheckResult run_criterion(int id, const VerifyOptions& opt) {
  if (id < 1 || id > criterion_count) throw PreconditionViolated("no criterion " + std::to_string(id));
  const Criterion& c = criteria[id - 1];
  CheckResult r{id, c.name, false, 0, {}};
  Tally t;
  try {
    c.run(opt, t);
    r.pass = t.failures == 0 && t.instances > 0;
    r.detail = t.failures ? t.first + " (" + std::to_string(t.failures) + " failures)" : "";
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.instances = t.instances;
  return r;
}

std::vector<int> suite_criteria(const std::string& suite) {
  static const std::map<std::string, std::vector<int>> suites = {
      {"sigma", {1, 2, 3, 4, 5, 6}}, {"tensor", {7, 8}},      {"cone", {9}},
      {"anodyne", {10}},             {"realize", {11}},       {"roundtrip", {12}},
      {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}},
  };
  auto it = suites.find(suite);
  if (it == suites.end()) throw PreconditionViolated("unknown suite " + suite);
  return it->second;
}

std::vector<std::string> suite_names() { return {"sigma", "tensor", "cone", "anodyne", "realize", "roundtrip", "all"}; }

}  // namespace ppx
