#include "ppx/polyplex.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <unordered_map>

#include "ppx/errors.hpp"
#include "ppx/standard.hpp"

namespace ppx {
namespace {

// Per shape memo table, safe for concurrent readers.
template <class V>
class ShapeMemo {
 public:
  template <class F>
  V get(ShapeId s, F&& compute) {
    {
      std::lock_guard lock(mu_);
      auto it = values_.find(s);
      if (it != values_.end()) return it->second;
    }
    V v = compute();
    std::lock_guard lock(mu_);
    values_.emplace(s, v);
    return v;
  }

 private:
  std::mutex mu_;
  std::unordered_map<ShapeId, V> values_;
};

bool injective(const std::vector<int>& v) {
  std::set<int> s(v.begin(), v.end());
  return s.size() == v.size();
}

std::set<int> image(const Arrow& a) { return {a.label.begin(), a.label.end()}; }

}  // namespace

Polygraph shape_polygraph(ShapeId s) {
  const Shape& S = shape_of(s);
  Polygraph p;
  p.tag = ClassTag::positive;
  for (int i = 0; i < S.size(); ++i) {
    if (S.cell_dim[i] == 0)
      p.add(0);
    else
      p.add(S.cell_dim[i], term_of(S.src[i]), term_of(S.tgt[i]));
  }
  return p;
}

Polyplex polyplex_of(ShapeId s) { return {shape_polygraph(s), shape_of(s).witness}; }

json polyplex_to_json(const Polyplex& p) {
  json j = polygraph_to_json(p.underlying);
  j["universal"] = term_to_json(p.underlying, p.universal);
  return j;
}

Polyplex polyplex_from_json(const json& j) {
  Polyplex p;
  p.underlying = polygraph_from_json(j);
  if (!j.contains("universal")) throw ParseError("polyplex lacks a universal term");
  p.universal = term_from_json(p.underlying, j.at("universal"));
  return p;
}

Polyplex load_polyplex(const std::string& path) { return polyplex_from_json(read_json(path)); }

Morphism arrow_morphism(PolygraphPtr p, const Term& t) {
  const int n = term_dim(*p, t);
  auto d = std::make_shared<Polygraph>(globe(n));
  Morphism f{d, p, {}};
  for (const auto& c : d->cells) {
    if (c.dim == n) {
      f.image.push_back(t);
      continue;
    }
    const Sign s = c.name.back() == '+' ? Sign::plus : Sign::minus;
    f.image.push_back(bnd(t, c.dim, s));
  }
  return f;
}

Arrow classify(const Polygraph& p, const Term& t) { return FreeCat(p).eval(t); }

bool is_polyplex_exact(const Polygraph& p, const Term& t) {
  const Arrow a = classify(p, t);
  return static_cast<int>(a.label.size()) == p.size() && injective(a.label);
}

ShapeId shape_of_polyplex(const Polyplex& p) {
  const Arrow a = classify(p.underlying, p.universal);
  if (static_cast<int>(a.label.size()) != p.underlying.size() || !injective(a.label))
    throw PreconditionViolated("not a polyplex: its universal arrow does not classify the whole polygraph");
  return a.shape;
}

LinComb sigma_image(const Linearization& lin, const Term& t) {
  const int dim = term_dim(lin.polygraph(), t);
  LinComb v = lin.delta(t);
  if (dim % 2) v *= -1;
  for (int k = 0; k < dim; ++k) {
    LinComb b = lin.delta(bnd(t, k, Sign::minus)) + lin.delta(bnd(t, k, Sign::plus));
    if (k % 2) b *= -1;
    v += b;
  }
  return v;
}

bool sigma_test(const Polygraph& p, const Term& t) {
  Linearization lin(p);
  return sigma_image(lin, t) == lin.sigma();
}

bool is_polyplex(const Polygraph& p, const Term& t) {
  if (!is_regular(p)) throw UnsupportedClass("the sigma criterion needs a regular polygraph");
  return sigma_test(p, t);
}

Arrow subplex(ShapeId s, int cell) {
  const Shape& S = shape_of(s);
  if (S.cell_dim.at(cell) == 0) return Arrow{point_shape(), {cell}};
  return make_plex(S.src[cell], S.tgt[cell], cell);
}

bool spherical_by_intersection(ShapeId s) {
  static ShapeMemo<bool> memo;
  return memo.get(s, [&] {
    const Shape& S = shape_of(s);
    for (int k = 0; k < S.dim; ++k)
      for (int e = 0; e < 2; ++e)
        if (!injective(S.bnd[k][e].label)) return false;
    std::set<int> lower;
    for (int k = 0; k < S.dim; ++k) {
      const auto a = image(S.bnd[k][0]), b = image(S.bnd[k][1]);
      std::set<int> both;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(both, both.end()));
      if (both != lower) return false;
      lower.clear();
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(lower, lower.end()));
    }
    return true;
  });
}

bool spherical_by_disjoint_support(ShapeId s) {
  static ShapeMemo<bool> memo;
  return memo.get(s, [&] {
    const Shape& S = shape_of(s);
    Linearization lin(shape_polygraph(s));
    std::vector<LinComb> images{lin.delta(S.witness)};
    for (int k = 0; k < S.dim; ++k)
      for (int e = 0; e < 2; ++e) images.push_back(lin.delta(term_of(S.bnd[k][e])));
    std::vector<int> seen(S.size(), 0);
    for (const auto& v : images)
      for (const auto& [x, c] : v.terms())
        if (seen[x]++) return false;
    return true;
  });
}

bool is_regular_shape(ShapeId s) {
  static ShapeMemo<bool> memo;
  return memo.get(s, [&] {
    const Shape& S = shape_of(s);
    for (int c = 0; c < S.size(); ++c)
      if (!spherical_by_intersection(subplex(s, c).shape)) return false;
    return true;
  });
}

bool has_spherical_boundary(ShapeId s) {
  const bool b = spherical_by_intersection(s);
  if (is_regular_shape(s) && spherical_by_disjoint_support(s) != b)
    throw MethodDisagreement("sphericity methods disagree");
  return b;
}

bool is_regular(const Polygraph& p) {
  if (!is_positive(p)) return false;
  FreeCat fc(p);
  for (int i = 0; i < p.size(); ++i)
    if (!spherical_by_intersection(fc.cell(i).shape)) return false;
  return true;
}

bool is_regular_arrow(const Polygraph& p, const Term& t) {
  if (!is_regular(p)) throw UnsupportedClass("regular arrows live in regular polygraphs");
  return spherical_by_intersection(classify(p, t).shape);
}

bool is_regular_morphism(const Morphism& f) {
  if (!is_regular(*f.domain) || !is_regular(*f.codomain)) return false;
  FreeCat fy(*f.codomain);
  for (const auto& t : f.image)
    if (!spherical_by_intersection(fy.eval(t).shape)) return false;
  return true;
}

bool plexes_mono(const Polygraph& p) {
  FreeCat fc(p);
  for (int i = 0; i < p.size(); ++i)
    if (!injective(fc.cell(i).label)) return false;
  return true;
}

std::vector<int> inner_cells(const Arrow& a) {
  const int n = arrow_dim(a);
  std::set<int> in = image(a);
  if (n > 0)
    for (Sign e : both_signs)
      for (int c : boundary(a, n - 1, e).label) in.erase(c);
  return {in.begin(), in.end()};
}

InnerScan inner_scan(ShapeId s, int x) {
  const Shape& S = shape_of(s);
  if (S.cell_dim.at(x) >= S.dim) throw PreconditionViolated("inner_owner needs a cell below the top dimension");
  InnerScan r;
  const auto src = image(S.bnd[S.dim - 1][0]);
  r.in_source = src.count(x) > 0;
  for (int c = 0; c < S.size(); ++c) {
    if (S.cell_dim[c] != S.dim) continue;
    const auto in = inner_cells(S.tgt[c]);
    if (std::find(in.begin(), in.end(), x) != in.end()) r.owners.push_back(c);
  }
  return r;
}

InnerOwner inner_owner(ShapeId s, int x) {
  const InnerScan r = inner_scan(s, x);
  if (r.in_source && r.owners.empty()) return {true, -1};
  if (!r.in_source && r.owners.size() == 1) return {false, r.owners[0]};
  throw PreconditionViolated("cell is neither in the source nor inner to a unique target");
}

Polyplex collapse_single_top(ShapeId s) {
  const Shape& S = shape_of(s);
  const int n = S.dim;
  if (n == 0) throw PreconditionViolated("cannot collapse a point");
  std::vector<int> tops;
  for (int c = 0; c < S.size(); ++c)
    if (S.cell_dim[c] == n) tops.push_back(c);
  if (tops.size() != 1) throw PreconditionViolated("collapse needs exactly one top cell");
  if (!is_regular_shape(s)) throw PreconditionViolated("collapse needs a regular polyplex");
  const int x = tops[0];
  std::vector<char> keep(S.size(), 1);
  keep[x] = 0;
  for (const Arrow& side : {S.src[x], S.tgt[x]})
    for (int c : inner_cells(side)) keep[c] = 0;

  Polygraph p;
  std::vector<int> map(S.size(), -1);
  for (int c = 0; c < S.size(); ++c) {
    if (!keep[c]) continue;
    map[c] = p.add(S.cell_dim[c]);
  }
  auto fix = [&](const Term& t) {
    return substitute(t, [&](int c) {
      if (map[c] < 0) throw PreconditionViolated("collapse would drop a cell still in use");
      return gen(map[c]);
    });
  };
  for (int c = 0; c < S.size(); ++c) {
    if (!keep[c] || S.cell_dim[c] == 0) continue;
    p.cells[map[c]].src = fix(term_of(S.src[c]));
    p.cells[map[c]].tgt = fix(term_of(S.tgt[c]));
  }
  int y;
  if (n == 1) {
    y = p.add(0);
  } else {
    y = p.add(n - 1, fix(term_of(boundary(S.src[x], n - 2, Sign::minus))),
              fix(term_of(boundary(S.src[x], n - 2, Sign::plus))));
  }
  map[x] = y;
  Polyplex out;
  out.universal = fix(S.witness);
  out.underlying = std::move(p);
  return out;
}

Factorization generic_factorization(const Morphism& f) {
  const Polygraph& X = *f.domain;
  const Polygraph& Y = *f.codomain;
  if (!is_positive(X)) throw UnsupportedClass("generic factorization needs a positive domain");
  FreeCat fy(Y);
  std::vector<Arrow> img(X.size());
  for (int x = 0; x < X.size(); ++x) img[x] = fy.eval(f.image.at(x));

  struct MCell {
    int dim;
    int label;  // cell of Y
    Arrow src, tgt;  // into M, possibly stale until normalised
  };
  std::vector<MCell> m;
  std::vector<int> parent;
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto norm = [&](Arrow a) {
    for (int& c : a.label) c = find(c);
    return a;
  };
  std::vector<Arrow> g(X.size());
  std::vector<char> done(X.size(), 0);
  std::function<Arrow(const Term&)> eval = [&](const Term& t) -> Arrow {
    switch (t->kind) {
      case TermNode::Kind::gen:
        if (!done[t->cell]) throw IllTyped("domain cell used before it is defined");
        return norm(g[t->cell]);
      case TermNode::Kind::comp:
        return compose(eval(t->left), eval(t->right), t->k);
      case TermNode::Kind::bnd:
        return boundary(eval(t->left), t->k, t->sign);
    }
    throw IllTyped("bad term");
  };
  for (int x : X.by_dim()) {
    const Shape& S = shape_of(img[x].shape);
    const int base = static_cast<int>(m.size());
    std::vector<int> copy(S.size());
    for (int i = 0; i < S.size(); ++i) {
      copy[i] = base + i;
      parent.push_back(base + i);
    }
    for (int i = 0; i < S.size(); ++i) {
      MCell c{S.cell_dim[i], img[x].label[i], {}, {}};
      if (c.dim > 0) {
        c.src = relabel(S.src[i], copy);
        c.tgt = relabel(S.tgt[i], copy);
      }
      m.push_back(std::move(c));
    }
    const Arrow mine{img[x].shape, copy};
    const int d = X.cells[x].dim;
    if (d > 0) {
      for (Sign e : both_signs) {
        const Arrow there = eval(e == Sign::minus ? X.cells[x].src : X.cells[x].tgt);
        const Arrow here = boundary(mine, d - 1, e);
        if (here.shape != there.shape) throw Error("internal: boundary shapes differ during factorization");
        for (std::size_t i = 0; i < here.label.size(); ++i) {
          const int a = find(here.label[i]), b = find(there.label[i]);
          if (a == b) continue;
          if (m[a].label != m[b].label) throw Error("internal: gluing cells with different labels");
          parent[std::max(a, b)] = std::min(a, b);
        }
      }
    }
    g[x] = mine;
    done[x] = 1;
  }
  std::vector<int> cls(m.size(), -1);
  std::vector<int> reps;
  for (int i = 0; i < static_cast<int>(m.size()); ++i) {
    const int r = find(i);
    if (cls[r] < 0) {
      cls[r] = static_cast<int>(reps.size());
      reps.push_back(r);
    }
    cls[i] = cls[r];
  }
  auto compact = [&](const Arrow& a) {
    Arrow out = a;
    for (int& c : out.label) c = cls[find(c)];
    return out;
  };
  auto M = std::make_shared<Polygraph>();
  M->tag = ClassTag::positive;
  std::vector<int> h;
  for (int r : reps) {
    const MCell& c = m[r];
    if (c.dim == 0)
      M->add(0, nullptr, nullptr, Y.label(c.label));
    else
      M->add(c.dim, term_of(compact(c.src)), term_of(compact(c.tgt)), Y.label(c.label));
    h.push_back(c.label);
  }
  Factorization out;
  out.middle = M;
  out.generic = Morphism{f.domain, M, {}};
  for (int x = 0; x < X.size(); ++x) out.generic.image.push_back(term_of(compact(g[x])));
  out.polygraphic = polygraphic(M, f.codomain, h);
  return out;
}

GenericAnswer is_generic(const Morphism& f, bool allow_fallback) {
  const bool regular_ends = is_regular(*f.domain) && is_regular(*f.codomain);
  if (regular_ends && is_regular_morphism(f))
    return {preserves_sigma(f) ? Verdict::yes : Verdict::no, "regular morphism: sigma preservation"};
  if (regular_ends && plexes_mono(*f.domain) && preserves_sigma(f) && preserves_alternate_positivity(f))
    return {Verdict::yes, "mono plexes: sigma and alternate positivity"};
  if (!allow_fallback) return {Verdict::unknown, "no criterion applies"};
  const Factorization fac = generic_factorization(f);
  const auto h = fac.polygraphic.cell_map();
  const bool iso = static_cast<int>(h.size()) == f.codomain->size() && injective(h);
  return {iso ? Verdict::yes : Verdict::no, "generic factorization"};
}

std::vector<Lift> lift_candidates(const Morphism& f, const Term& v, const Term& u, const Term& w, int k) {
  FreeCat fx(*f.domain), fy(*f.codomain);
  const Arrow av = fx.eval(v), au = fy.eval(u), aw = fy.eval(w);
  const Shape& V = shape_of(av.shape);
  std::set<std::pair<ShapeId, std::vector<int>>> seen;
  std::vector<Arrow> arrows;
  auto offer = [&](const Arrow& a) {
    if (!injective(a.label)) return;
    if (seen.insert({a.shape, a.label}).second) arrows.push_back(a);
  };
  for (int c = 0; c < V.size(); ++c) offer(subplex(av.shape, c));
  for (std::size_t i = 0; i < arrows.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (int l = 0; l < V.dim; ++l)
        for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
          if (arrows.size() > 20000) throw BoundExceeded("too many sub-arrows to search for a lift");
          try {
            offer(compose(arrows[a], arrows[b], l));
          } catch (const BoundaryMismatch&) {
          }
        }
  const Arrow whole = identity_arrow(av.shape);
  auto image = [&](const Arrow& a) { return fy.eval(ppx::apply(f, term_of(relabel(a, av.label)))); };
  std::vector<Lift> out;
  for (const Arrow& a : arrows) {
    if (!(image(a) == au)) continue;
    for (const Arrow& b : arrows) {
      try {
        if (!(compose(a, b, k) == whole)) continue;
      } catch (const BoundaryMismatch&) {
        continue;
      }
      if (image(b) == aw) out.push_back({term_of(relabel(a, av.label)), term_of(relabel(b, av.label))});
    }
  }
  return out;
}

Lift syntactic_lift(const Morphism& f, const Term& v, const Term& u, const Term& w, int k) {
  FreeCat fx(*f.domain), fy(*f.codomain);
  const Arrow av = fx.eval(v), au = fy.eval(u), aw = fy.eval(w);
  Arrow target;
  try {
    target = compose(au, aw, k);
  } catch (const BoundaryMismatch&) {
    throw DecompositionMismatch("the requested factors do not compose");
  }
  if (!(fy.eval(ppx::apply(f, v)) == target)) throw DecompositionMismatch("f(v) is not the requested composite");
  if (!f.polygraphic()) {
    const auto found = lift_candidates(f, v, u, w, k);
    if (found.size() != 1) throw DecompositionMismatch(std::to_string(found.size()) + " candidate splits, expected one");
    return found[0];
  }
  if (arrow_dim(au) <= k) return {term_of(boundary(av, k, Sign::minus)), v};
  if (arrow_dim(aw) <= k) return {v, term_of(boundary(av, k, Sign::plus))};
  const Composite c = compose_detailed(au, aw, k);
  Arrow u2{au.shape, {}}, w2{aw.shape, {}};
  for (int i : c.left) u2.label.push_back(av.label[i]);
  for (int i : c.right) w2.label.push_back(av.label[i]);
  return {term_of(u2), term_of(w2)};
}

static int env_bound(const char* name, int fallback) {
  if (const char* s = std::getenv(name)) {
    const int v = std::atoi(s);
    if (v > 0) return v;
  }
  return fallback;
}

int enumeration_dim_bound() { return env_bound("PPX_MAX_DIM", 3); }
int enumeration_cell_bound() { return env_bound("PPX_MAX_CELLS", 12); }

namespace {

// Number of cells of a #_k b, without building it.
int composite_size(const Shape& A, const Shape& B, int k) {
  const Arrow& ap = A.bnd[k][1];
  const Arrow& bm = B.bnd[k][0];
  const int na = A.size(), nb = B.size();
  std::vector<int> parent(na + nb);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int merged = 0;
  for (std::size_t i = 0; i < ap.label.size(); ++i) {
    int a = find(ap.label[i]), b = find(na + bm.label[i]);
    if (a != b) {
      parent[std::max(a, b)] = std::min(a, b);
      ++merged;
    }
  }
  return na + nb - merged;
}

int plex_size(const Shape& S, const Shape& T) {
  const int n = S.dim + 1, ns = S.size(), nt = T.size();
  std::vector<int> parent(ns + nt);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int merged = 0;
  if (n >= 2)
    for (int e = 0; e < 2; ++e) {
      const Arrow& bs = S.bnd[n - 2][e];
      const Arrow& bt = T.bnd[n - 2][e];
      for (std::size_t i = 0; i < bs.label.size(); ++i) {
        int a = find(bs.label[i]), b = find(ns + bt.label[i]);
        if (a != b) {
          parent[std::max(a, b)] = std::min(a, b);
          ++merged;
        }
      }
    }
  return ns + nt + 1 - merged;
}

Arrow terminal(ShapeId s) { return Arrow{s, std::vector<int>(shape_of(s).size(), 0)}; }

}  // namespace

std::vector<ShapeId> enumerate(const EnumOptions& opt) {
  if (opt.dim < 0 || opt.dim > enumeration_dim_bound())
    throw BoundExceeded("enumeration dimension above the configured bound " + std::to_string(enumeration_dim_bound()));
  if (opt.max_cells < 1 || opt.max_cells > enumeration_cell_bound())
    throw BoundExceeded("enumeration cell count above the configured bound " + std::to_string(enumeration_cell_bound()));

  std::set<ShapeId> seen;
  std::deque<ShapeId> queue;
  // Indices of shapes already processed, for pairing.
  std::map<std::pair<int, ShapeId>, std::vector<ShapeId>> by_plus, by_minus;  // (k, bnd shape)
  std::map<std::tuple<int, ShapeId, ShapeId>, std::vector<ShapeId>> parallel;  // (dim, src bnd, tgt bnd)

  auto offer = [&](ShapeId s) {
    if (seen.count(s)) return;
    if (opt.regular_only && !is_regular_shape(s)) return;
    seen.insert(s);
    queue.push_back(s);
  };
  offer(point_shape());
  while (!queue.empty()) {
    const ShapeId s = queue.front();
    queue.pop_front();
    const Shape& S = shape_of(s);
    for (int k = 0; k < S.dim; ++k) {
      by_plus[{k, S.bnd[k][1].shape}].push_back(s);
      by_minus[{k, S.bnd[k][0].shape}].push_back(s);
    }
    const auto pkey = S.dim == 0 ? std::make_tuple(0, -1, -1)
                                 : std::make_tuple(S.dim, S.bnd[S.dim - 1][0].shape, S.bnd[S.dim - 1][1].shape);
    parallel[pkey].push_back(s);

    if (S.dim + 1 <= opt.dim) {
      const auto partners = parallel[pkey];
      for (ShapeId q : partners) {
        for (auto [a, b] : {std::pair{s, q}, std::pair{q, s}}) {
          if (plex_size(shape_of(a), shape_of(b)) > opt.max_cells) continue;
          offer(make_plex(terminal(a), terminal(b), 0).shape);
        }
      }
    }
    for (int k = 0; k < S.dim; ++k) {
      const auto right = by_minus[{k, S.bnd[k][1].shape}];
      for (ShapeId q : right) {
        if (composite_size(S, shape_of(q), k) > opt.max_cells) continue;
        offer(compose(terminal(s), terminal(q), k).shape);
      }
      const auto left = by_plus[{k, S.bnd[k][0].shape}];
      for (ShapeId q : left) {
        if (q == s) continue;
        if (composite_size(shape_of(q), S, k) > opt.max_cells) continue;
        offer(compose(terminal(q), terminal(s), k).shape);
      }
    }
  }
  std::vector<ShapeId> out;
  for (ShapeId s : seen) {
    const Shape& S = shape_of(s);
    if (S.dim > opt.dim) continue;
    if (opt.kind == EnumKind::plex && !S.is_plex()) continue;
    if (opt.kind == EnumKind::spherical && !has_spherical_boundary(s)) continue;
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](ShapeId a, ShapeId b) {
    const Shape& A = shape_of(a);
    const Shape& B = shape_of(b);
    return std::make_tuple(A.dim, A.size(), A.stable_hash) < std::make_tuple(B.dim, B.size(), B.stable_hash);
  });
  return out;
}

}  // namespace ppx
