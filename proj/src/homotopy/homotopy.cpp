#include "ppx/homotopy.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <set>

#include "ppx/errors.hpp"
#include "ppx/linearization.hpp"
#include "ppx/polyplex.hpp"
#include "ppx/shape.hpp"
#include "ppx/steiner.hpp"
#include "ppx/subpolygraph.hpp"

namespace ppx {

std::vector<int> Inclusion::missing() const {
  std::vector<int> out;
  for (int i = 0; i < target.size(); ++i)
    if (!member[i]) out.push_back(i);
  return out;
}

int plex_top(const Polygraph& c) {
  int top = -1, count = 0;
  const int d = c.dim();
  for (int i = 0; i < c.size(); ++i)
    if (c.cells[i].dim == d) {
      top = i;
      ++count;
    }
  if (count != 1) throw PreconditionViolated("expected a single top cell");
  return top;
}

Inclusion generating_cofibration(const Polygraph& c) {
  Inclusion i{c, std::vector<char>(c.size(), 1)};
  i.member[plex_top(c)] = 0;
  return i;
}

std::array<Int, 2> occurrences(const Polygraph& p, int theta, int x) {
  const Cell& t = p.cells.at(theta);
  if (t.dim == 0) return {0, 0};
  const Linearization lin(p);
  return {lin.delta(t.src)[x], lin.delta(t.tgt)[x]};
}

static bool occurs_once(const std::array<Int, 2>& o) {
  return (o[0] == 1 && o[1] == 0) || (o[0] == 0 && o[1] == 1);
}

Horn horn(const Polygraph& c, int a) {
  const int top = plex_top(c);
  if (a < 0 || a >= c.size()) throw NotACell("no cell " + std::to_string(a));
  if (c.cells[a].dim != c.cells[top].dim - 1)
    throw NotACell(c.label(a) + " is not of dimension " + std::to_string(c.cells[top].dim - 1));
  if (!occurs_once(occurrences(c, top, a)))
    throw HypothesisFailed(c.label(a) + " does not occur exactly once in one boundary of the top cell");
  Horn h{generating_cofibration(c), a, top};
  h.inclusion.member[a] = 0;
  return h;
}

std::vector<Horn> horns(const Polygraph& c) {
  const int top = plex_top(c);
  std::vector<Horn> out;
  for (int a = 0; a < c.size(); ++a)
    if (c.cells[a].dim + 1 == c.cells[top].dim) out.push_back(horn(c, a));
  return out;
}

namespace {

// Cells met by the boundary of each cell.
std::vector<std::vector<int>> boundary_cells(const Polygraph& p) {
  std::vector<std::vector<int>> out(p.size());
  for (int i = 0; i < p.size(); ++i) {
    if (p.cells[i].dim == 0) continue;
    std::vector<char> s = support(p, p.cells[i].src);
    const std::vector<char> t = support(p, p.cells[i].tgt);
    for (int c = 0; c < p.size(); ++c)
      if (s[c] || t[c]) out[i].push_back(c);
  }
  return out;
}

bool step_ok(const Polygraph& p, const Linearization& lin, const std::vector<std::vector<int>>& bc,
             const std::vector<char>& member, int x, int theta) {
  if (member[x] || member[theta] || p.cells[theta].dim != p.cells[x].dim + 1) return false;
  for (int c : bc[x])
    if (!member[c]) return false;
  for (int c : bc[theta])
    if (!member[c] && c != x) return false;
  return occurs_once({lin.delta(p.cells[theta].src)[x], lin.delta(p.cells[theta].tgt)[x]});
}

bool closed(const std::vector<std::vector<int>>& bc, const std::vector<char>& member) {
  for (std::size_t i = 0; i < member.size(); ++i)
    if (member[i])
      for (int c : bc[i])
        if (!member[c]) return false;
  return true;
}

}  // namespace

std::optional<AnodyneStep> anodyne_step(const Inclusion& i) {
  const auto miss = i.missing();
  if (miss.size() != 2) return std::nullopt;
  const auto bc = boundary_cells(i.target);
  if (!closed(bc, i.member)) return std::nullopt;
  const Linearization lin(i.target);
  for (int k = 0; k < 2; ++k)
    if (step_ok(i.target, lin, bc, i.member, miss[k], miss[1 - k])) return AnodyneStep{miss[k], miss[1 - k]};
  return std::nullopt;
}

bool recognize_anodyne_pushout(const Inclusion& i) { return anodyne_step(i).has_value(); }

std::optional<std::vector<AnodyneStep>> decompose_anodyne(const Inclusion& i) {
  const Polygraph& p = i.target;
  const auto bc = boundary_cells(p);
  if (!closed(bc, i.member)) return std::nullopt;
  const Linearization lin(p);
  std::set<std::vector<char>> dead;
  std::vector<AnodyneStep> path;
  std::function<bool(std::vector<char>&)> go = [&](std::vector<char>& m) {
    if (std::all_of(m.begin(), m.end(), [](char c) { return c != 0; })) return true;
    if (dead.count(m)) return false;
    for (int x = 0; x < p.size(); ++x) {
      if (m[x]) continue;
      for (int t = 0; t < p.size(); ++t) {
        if (!step_ok(p, lin, bc, m, x, t)) continue;
        m[x] = m[t] = 1;
        path.push_back({x, t});
        if (go(m)) return true;
        path.pop_back();
        m[x] = m[t] = 0;
      }
    }
    dead.insert(m);
    return false;
  };
  std::vector<char> m = i.member;
  if (!go(m)) return std::nullopt;
  return path;
}

Inclusion pushout_product(const Inclusion& i, const Inclusion& j) {
  Inclusion out{tensor_polygraph(i.target, j.target), {}};
  out.member.assign(out.target.size(), 0);
  const int hs = j.target.size();
  for (int x = 0; x < i.target.size(); ++x)
    for (int y = 0; y < hs; ++y) out.member[tensor_index(x, y, hs)] = i.member[x] || j.member[y];
  return out;
}

Polygraph cylinder_Dprime() {
  Polygraph p;
  p.tag = ClassTag::positive;
  const int star = p.add(0, nullptr, nullptr, "*");
  const int t = p.add(0, nullptr, nullptr, "t");
  const int w = p.add(1, gen(t), gen(star), "w");
  const int q = p.add(1, gen(star), gen(star), "p");
  p.add(2, comp(gen(w), gen(q), 0), gen(w), "θ");
  return p;
}

Inclusion dprime_inclusion() {
  Inclusion i{cylinder_Dprime(), {}};
  i.member.assign(i.target.size(), 0);
  i.member[i.target.index_of_name("*")] = 1;
  return i;
}

Inclusion RelativeCylinder::inclusion() const {
  Inclusion i{w, std::vector<char>(w.size(), 1)};
  i.member[c2] = 0;
  i.member[theta] = 0;
  return i;
}

RelativeCylinder cylinder_relative(const Polygraph& c) {
  const int top = plex_top(c);
  std::vector<char> keep(c.size(), 1);
  keep[top] = 0;
  RelativeCylinder r;
  std::vector<int> old_to_new;
  r.w = restrict(c, keep, &old_to_new);
  const Cell& t = c.cells[top];
  const std::string base = c.label(top);
  auto copy = [&](const std::string& suffix) {
    if (t.dim == 0) return r.w.add(0, nullptr, nullptr, base + suffix);
    return r.w.add(t.dim, rename(t.src, old_to_new), rename(t.tgt, old_to_new), base + suffix);
  };
  r.c1 = copy("1");
  r.c2 = copy("2");
  r.theta = r.w.add(t.dim + 1, gen(r.c1), gen(r.c2), "θ");
  r.from_c = old_to_new;
  r.from_c[top] = r.c1;
  return r;
}

// ---------------------------------------------------------------------------
// Semi-simplicial sets.

int SemiSimplicialSet::add(int n, std::vector<int> faces, std::string label) {
  if (static_cast<int>(faces.size()) != n + 1 && n > 0) throw PreconditionViolated("wrong number of faces");
  if (n == 0) faces.clear();
  if (static_cast<int>(face.size()) <= n) {
    face.resize(n + 1);
    name.resize(n + 1);
  }
  face[n].push_back(std::move(faces));
  name[n].push_back(std::move(label));
  return static_cast<int>(face[n].size()) - 1;
}

void check_semi_simplicial(const SemiSimplicialSet& s) {
  for (int n = 1; n <= s.dim(); ++n)
    for (int x = 0; x < s.count(n); ++x) {
      const auto& f = s.face[n][x];
      if (static_cast<int>(f.size()) != n + 1) throw PreconditionViolated("wrong number of faces");
      for (int v : f)
        if (v < 0 || v >= s.count(n - 1)) throw PreconditionViolated("face index out of range");
      if (n < 2) continue;
      for (int i = 0; i < n + 1; ++i)
        for (int j = i + 1; j < n + 1; ++j)
          if (s.face[n - 1][f[j]][i] != s.face[n - 1][f[i]][j - 1])
            throw PreconditionViolated("semi-simplicial identity fails");
    }
}

json semi_simplicial_to_json(const SemiSimplicialSet& s) {
  json simplices = json::array(), faces = json::array();
  for (int n = 0; n <= s.dim(); ++n) {
    json ids = json::array(), fs = json::array();
    for (int x = 0; x < s.count(n); ++x) {
      ids.push_back(x);
      fs.push_back(s.face[n][x]);
    }
    simplices.push_back(ids);
    faces.push_back(fs);
  }
  json j{{"simplices", simplices}, {"faces", faces}};
  bool named = false;
  for (const auto& level : s.name)
    for (const auto& nm : level) named = named || !nm.empty();
  if (named) j["names"] = s.name;
  return j;
}

SemiSimplicialSet semi_simplicial_from_json(const json& j) {
  try {
    const json& simplices = j.at("simplices");
    const json& faces = j.at("faces");
    if (simplices.size() != faces.size()) throw ParseError("simplices and faces differ in length");
    std::vector<std::map<long, int>> index(simplices.size());
    for (std::size_t n = 0; n < simplices.size(); ++n)
      for (std::size_t x = 0; x < simplices[n].size(); ++x)
        if (!index[n].emplace(simplices[n][x].get<long>(), static_cast<int>(x)).second)
          throw ParseError("duplicate simplex id");
    SemiSimplicialSet s;
    for (std::size_t n = 0; n < simplices.size(); ++n) {
      if (faces[n].size() != simplices[n].size()) throw ParseError("faces missing at level " + std::to_string(n));
      for (std::size_t x = 0; x < simplices[n].size(); ++x) {
        std::vector<int> f;
        for (const auto& id : faces[n][x]) {
          if (n == 0) throw ParseError("0-simplices have no faces");
          auto it = index[n - 1].find(id.get<long>());
          if (it == index[n - 1].end()) throw ParseError("unknown face id");
          f.push_back(it->second);
        }
        std::string label;
        if (j.contains("names")) label = j["names"].at(n).at(x).get<std::string>();
        s.add(static_cast<int>(n), f, label);
      }
    }
    check_semi_simplicial(s);
    return s;
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  } catch (const PreconditionViolated& e) {
    throw ParseError(e.what());
  }
}

namespace {

std::string vertex_name(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += std::to_string(x);
  return s;
}

SemiSimplicialSet simplex_from_subsets(int n, bool with_top) {
  SemiSimplicialSet s;
  std::map<std::vector<int>, int> index;
  for (int k = 0; k <= n; ++k) {
    if (k == n && !with_top) break;
    std::vector<int> mask(n + 1, 0);
    std::fill(mask.begin(), mask.begin() + k + 1, 1);
    std::vector<std::vector<int>> subsets;
    do {
      std::vector<int> v;
      for (int i = 0; i <= n; ++i)
        if (mask[i]) v.push_back(i);
      subsets.push_back(v);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    std::sort(subsets.begin(), subsets.end());
    for (const auto& v : subsets) {
      std::vector<int> f;
      if (k > 0)
        for (int i = 0; i <= k; ++i) {
          std::vector<int> w = v;
          w.erase(w.begin() + i);
          f.push_back(index.at(w));
        }
      index[v] = s.add(k, f, vertex_name(v));
    }
  }
  return s;
}

}  // namespace

SemiSimplicialSet standard_simplex(int n) { return simplex_from_subsets(n, true); }
SemiSimplicialSet boundary_simplex(int n) { return simplex_from_subsets(n, false); }

SemiSimplicialSet disjoint_union(const SemiSimplicialSet& a, const SemiSimplicialSet& b) {
  SemiSimplicialSet s = a;
  for (int n = 0; n <= b.dim(); ++n)
    for (int x = 0; x < b.count(n); ++x) {
      std::vector<int> f = b.face[n][x];
      for (int& v : f) v += a.count(n - 1);
      s.add(n, f, b.name.size() > static_cast<std::size_t>(n) ? b.name[n][x] : std::string());
    }
  return s;
}

int face_along(const SemiSimplicialSet& s, int n, int simplex, const std::vector<int>& image) {
  int cur = simplex, d = n;
  for (int v = n; v >= 0; --v)
    if (!std::binary_search(image.begin(), image.end(), v)) {
      cur = s.face[d][cur][v];
      --d;
    }
  return cur;
}

// ---------------------------------------------------------------------------
// Realization.

int Realization::find(int n, const RealizationSimplex& s) const {
  if (n < 0 || n >= static_cast<int>(simplices.size())) return -1;
  const auto& level = simplices[n];
  auto it = std::lower_bound(level.begin(), level.end(), s);
  return it != level.end() && *it == s ? static_cast<int>(it - level.begin()) : -1;
}

Realization realize(const Polygraph& x) {
  if (!is_regular(x)) throw UnsupportedClass("realization needs a regular polygraph");
  const int n = x.size();
  std::vector<Arrow> cls(n);
  std::vector<int> top(n);
  for (int c = 0; c < n; ++c) {
    cls[c] = classify(x, gen(c));
    top[c] = shape_of(cls[c].shape).top;
    if (top[c] < 0) throw UnsupportedClass("cell " + x.label(c) + " is not classified by a plex");
  }
  // below[s][c]: cells of shape s in the plex of c, other than c
  std::map<ShapeId, std::vector<std::vector<int>>> below;
  for (int c = 0; c < n; ++c) {
    const ShapeId s = cls[c].shape;
    if (below.count(s)) continue;
    const Shape& S = shape_of(s);
    std::vector<std::vector<int>> b(S.size());
    for (int k = 0; k < S.size(); ++k)
      for (int l : subplex(s, k).label)
        if (l != k) b[k].push_back(l);
    below[s] = std::move(b);
  }

  Realization r;
  for (int c = 0; c < n; ++c) {
    const auto& b = below[cls[c].shape];
    std::vector<int> chain{top[c]};
    std::function<void()> grow = [&]() {
      std::vector<int> rev(chain.rbegin(), chain.rend());
      const int d = static_cast<int>(rev.size()) - 1;
      if (static_cast<int>(r.simplices.size()) <= d) r.simplices.resize(d + 1);
      r.simplices[d].push_back({c, rev});
      for (int l : b[chain.back()]) {
        chain.push_back(l);
        grow();
        chain.pop_back();
      }
    };
    grow();
  }
  for (auto& level : r.simplices) std::sort(level.begin(), level.end());

  for (int d = 0; d < static_cast<int>(r.simplices.size()); ++d)
    for (const auto& s : r.simplices[d]) {
      std::vector<int> faces;
      for (int i = 0; d > 0 && i <= d; ++i) {
        RealizationSimplex f;
        if (i < d) {
          f.cell = s.cell;
          f.chain = s.chain;
          f.chain.erase(f.chain.begin() + i);
        } else {
          const int c = s.chain[d - 1];
          f.cell = cls[s.cell].label[c];
          const Arrow sub = subplex(cls[s.cell].shape, c);
          if (sub.shape != cls[f.cell].shape) throw UnsupportedClass("subplex shape mismatch at " + x.label(f.cell));
          for (int k = 0; k < d; ++k) {
            auto it = std::find(sub.label.begin(), sub.label.end(), s.chain[k]);
            f.chain.push_back(static_cast<int>(it - sub.label.begin()));
          }
        }
        const int idx = r.find(d - 1, f);
        if (idx < 0) throw UnsupportedClass("face of a realization simplex is missing");
        faces.push_back(idx);
      }
      r.set.add(d, faces, x.label(s.cell));
    }
  return r;
}

std::vector<std::vector<int>> realize_map(const Morphism& f, const Realization& rx, const Realization& ry) {
  const std::vector<int> m = f.cell_map();
  std::vector<std::vector<int>> out(rx.simplices.size());
  for (std::size_t d = 0; d < rx.simplices.size(); ++d)
    for (const auto& s : rx.simplices[d]) {
      const int idx = ry.find(static_cast<int>(d), {m[s.cell], s.chain});
      if (idx < 0) throw PreconditionViolated("morphism does not preserve plex shapes");
      out[d].push_back(idx);
    }
  return out;
}

Polygraph orientals_embed(const SemiSimplicialSet& s) {
  check_semi_simplicial(s);
  Polygraph p;
  p.tag = ClassTag::regular;
  std::vector<std::vector<int>> cell(s.dim() + 1);
  for (int n = 0; n <= s.dim(); ++n) {
    const Polygraph o = oriental(n);
    const int top = plex_top(o);
    std::vector<int> map(o.size());
    for (int x = 0; x < s.count(n); ++x) {
      std::string label = s.name.size() > static_cast<std::size_t>(n) ? s.name[n][x] : std::string();
      if (label.empty()) label = "s" + std::to_string(n) + "_" + std::to_string(x);
      if (n == 0) {
        cell[0].push_back(p.add(0, nullptr, nullptr, label));
        continue;
      }
      for (int c = 0; c < o.size(); ++c) {
        if (c == top) continue;
        std::vector<int> image;
        for (char ch : o.cells[c].name) image.push_back(ch - '0');
        map[c] = cell[image.size() - 1][face_along(s, n, x, image)];
      }
      cell[n].push_back(p.add(n, rename(o.cells[top].src, map), rename(o.cells[top].tgt, map), label));
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Homology.

int homology_column_bound() {
  if (const char* e = std::getenv("PPX_MAX_SNF_COLUMNS")) {
    const int v = std::atoi(e);
    if (v > 0) return v;
  }
  return 2000;
}

std::vector<Int> smith_diagonal(Matrix m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  std::vector<Int> diag;
  for (int t = 0; t < std::min(rows, cols); ++t) {
    // smallest nonzero entry of the remaining block as pivot
    int pr = -1, pc = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (m[i][j] != 0 && (pr < 0 || abs(m[i][j]) < abs(m[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr < 0) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);
    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        const Int q = m[i][t] / m[t][t];
        for (int j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {
          std::swap(m[t], m[i]);
          clean = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        const Int q = m[t][j] / m[t][t];
        for (int i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (auto& row : m) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide the rest of the block
      int bad = -1;
      for (int i = t + 1; i < rows && bad < 0; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      for (int j = t; j < cols; ++j) m[t][j] += m[bad][j];
    }
    diag.push_back(abs(m[t][t]));
  }
  std::sort(diag.begin(), diag.end());
  return diag;
}

std::vector<HomologyGroup> homology(const SemiSimplicialSet& s, int maxdeg) {
  check_semi_simplicial(s);
  const int bound = homology_column_bound();
  // invariant factors of ∂_n for n = 1 .. maxdeg + 1
  std::vector<std::vector<Int>> inv(maxdeg + 2);
  for (int n = 1; n <= maxdeg + 1; ++n) {
    if (s.count(n) == 0 || s.count(n - 1) == 0) continue;
    if (s.count(n) > bound) throw BoundExceeded("boundary matrix has " + std::to_string(s.count(n)) + " columns");
    Matrix d(s.count(n - 1), std::vector<Int>(s.count(n), 0));
    for (int x = 0; x < s.count(n); ++x)
      for (int i = 0; i <= n; ++i) d[s.face[n][x][i]][x] += i % 2 ? -1 : 1;
    inv[n] = smith_diagonal(std::move(d));
  }
  std::vector<HomologyGroup> h(maxdeg + 1);
  for (int n = 0; n <= maxdeg; ++n) {
    const Int rank_out = n >= 1 ? Int(inv[n].size()) : Int(0);
    h[n].rank = Int(s.count(n)) - rank_out - Int(inv[n + 1].size());
    for (const Int& e : inv[n + 1])
      if (e > 1) h[n].torsion.push_back(e);
  }
  return h;
}

bool reduced_acyclic(const SemiSimplicialSet& s) {
  if (s.count(0) == 0) return false;
  const auto h = homology(s, std::max(0, s.dim()));
  if (h[0].rank != 1 || !h[0].torsion.empty()) return false;
  for (std::size_t n = 1; n < h.size(); ++n)
    if (h[n].rank != 0 || !h[n].torsion.empty()) return false;
  return true;
}

}  // namespace ppx
