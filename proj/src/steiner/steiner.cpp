#include "ppx/steiner.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

#include "ppx/errors.hpp"
#include "ppx/standard.hpp"

namespace ppx {

LinComb tensor_lin(const LinComb& a, const LinComb& b, int hsize) {
  LinComb out;
  for (const auto& [x, c] : a.terms())
    for (const auto& [y, d] : b.terms()) out.add(tensor_index(x, y, hsize), c * d);
  return out;
}

static Sign alt(int i, Sign e) { return i % 2 ? flip(e) : e; }

LinComb tensor_pi(const GlobularGroup& g, const GlobularGroup& h, int x, int y, int n, Sign e) {
  LinComb out;
  const LinComb gx = g.basis(x), hy = h.basis(y);
  for (int i = 0; i <= std::min(n, g.grade[x]); ++i) {
    const LinComb left = g.apply(i, e, gx) - g.apply(i - 1, e, gx);
    if (left.zero()) continue;
    out += tensor_lin(left, h.apply(n - i, alt(i, e), hy), h.size());
  }
  return out;
}

LinComb tensor_pi_alternate(const GlobularGroup& g, const GlobularGroup& h, int x, int y, int n, Sign e) {
  LinComb out;
  const LinComb gx = g.basis(x), hy = h.basis(y);
  for (int i = 0; i <= n; ++i) {
    const LinComb right = h.apply(n - i, alt(i, e), hy) - h.apply(n - i - 1, flip(alt(i, e)), hy);
    if (right.zero()) continue;
    out += tensor_lin(g.apply(i, e, gx), right, h.size());
  }
  return out;
}

GlobularGroup tensor_globular(const GlobularGroup& g, const GlobularGroup& h) {
  std::vector<int> grade(static_cast<std::size_t>(g.size()) * h.size());
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < h.size(); ++y) grade[tensor_index(x, y, h.size())] = g.grade[x] + h.grade[y];
  GlobularGroup t = make_group(grade);
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < h.size(); ++y) {
      const int b = tensor_index(x, y, h.size());
      if (!g.name.empty() && !h.name.empty()) t.name[b] = g.name[x] + "⊗" + h.name[y];
      for (int k = 0; k < grade[b]; ++k)
        for (Sign e : both_signs) t.pi[k][sidx(e)][b] = tensor_pi(g, h, x, y, k, e);
    }
  if (!g.augmentation.empty() && !h.augmentation.empty()) {
    t.augmentation.assign(t.size(), 0);
    for (int x = 0; x < g.size(); ++x)
      for (int y = 0; y < h.size(); ++y)
        t.augmentation[tensor_index(x, y, h.size())] = g.augmentation[x] * h.augmentation[y];
  }
  return t;
}

int tensor_chain_index(const ChainComplex& k, const ChainComplex& l, int i, int a, int j, int b) {
  int pos = 0;
  for (int p = 0; p < i; ++p) {
    const int q = i + j - p;
    if (p <= k.top() && q >= 0 && q <= l.top()) pos += k.rank[p] * l.rank[q];
  }
  return pos + a * l.rank[j] + b;
}

ChainComplex tensor_chain(const ChainComplex& k, const ChainComplex& l) {
  ChainComplex m;
  if (k.top() < 0 || l.top() < 0) return m;
  const int top = k.top() + l.top();
  m.rank.assign(top + 1, 0);
  for (int i = 0; i <= k.top(); ++i)
    for (int j = 0; j <= l.top(); ++j) m.rank[i + j] += k.rank[i] * l.rank[j];
  m.d.resize(top + 1);
  for (int n = 1; n <= top; ++n) {
    Matrix& d = m.d[n];
    d.assign(m.rank[n - 1], std::vector<Int>(m.rank[n], 0));
    for (int i = 0; i <= std::min(n, k.top()); ++i) {
      const int j = n - i;
      if (j > l.top()) continue;
      for (int a = 0; a < k.rank[i]; ++a)
        for (int b = 0; b < l.rank[j]; ++b) {
          const int col = tensor_chain_index(k, l, i, a, j, b);
          if (i > 0)
            for (int r = 0; r < k.rank[i - 1]; ++r)
              if (k.d[i][r][a] != 0) d[tensor_chain_index(k, l, i - 1, r, j, b)][col] += k.d[i][r][a];
          if (j > 0)
            for (int r = 0; r < l.rank[j - 1]; ++r)
              if (l.d[j][r][b] != 0)
                d[tensor_chain_index(k, l, i, a, j - 1, r)][col] += (i % 2 ? -1 : 1) * l.d[j][r][b];
        }
    }
  }
  if (!k.augmentation.empty() && !l.augmentation.empty()) {
    m.augmentation.assign(m.rank[0], 0);
    for (int a = 0; a < k.rank[0]; ++a)
      for (int b = 0; b < l.rank[0]; ++b)
        m.augmentation[tensor_chain_index(k, l, 0, a, 0, b)] = k.augmentation[a] * l.augmentation[b];
  }
  return m;
}

GlobularGroup unit_group() {
  GlobularGroup g = make_group({0});
  g.name[0] = "1";
  g.augmentation = {1};
  return g;
}

static LinComb shift(const LinComb& v, int by) {
  LinComb out;
  for (const auto& [b, c] : v.terms()) out.add(b + by, c);
  return out;
}

GlobularGroup suspend(const GlobularGroup& g) {
  if (g.augmentation.empty()) throw PreconditionViolated("suspension needs an augmentation");
  std::vector<int> grade{0};
  for (int d : g.grade) grade.push_back(d + 1);
  GlobularGroup s = make_group(grade);
  s.name[0] = "z";
  for (int b = 0; b < g.size(); ++b) {
    const int i = b + 1;
    s.name[i] = g.name.empty() ? std::string() : g.name[b];
    s.pi[0][0][i] = LinComb();
    LinComb p;
    if (g.augmentation[b] != 0) p.add(0, g.augmentation[b]);
    s.pi[0][1][i] = p;
    for (int k = 1; k < grade[i]; ++k)
      for (Sign e : both_signs) s.pi[k][sidx(e)][i] = shift(g.apply_basis(k - 1, e, b), 1);
  }
  return s;
}

GlobularGroup desuspend(const GlobularGroup& g) {
  const auto zeros = g.of_grade(0);
  if (zeros.size() != 1) throw PreconditionViolated("desuspension needs exactly one 0-dimensional generator");
  const int z = zeros[0];
  auto renum = [&](int b) { return b - (b > z ? 1 : 0); };
  auto coeff_z = [&](const LinComb& v) { return v[z]; };
  std::vector<Int> c(g.size(), 0);
  for (int b = 0; b < g.size(); ++b)
    if (b != z) c[b] = coeff_z(g.apply_basis(0, Sign::minus, b));
  std::vector<int> grade;
  for (int b = 0; b < g.size(); ++b)
    if (b != z) grade.push_back(g.grade[b] - 1);
  GlobularGroup d = make_group(grade);
  d.augmentation.assign(d.size(), 0);
  auto rebase = [&](const LinComb& v) {
    LinComb out;
    for (const auto& [b, k] : v.terms())
      if (b != z) out.add(renum(b), k);
    return out;
  };
  for (int b = 0; b < g.size(); ++b) {
    if (b == z) continue;
    const int nb = renum(b);
    d.name[nb] = g.name.empty() ? std::string() : g.name[b];
    d.augmentation[nb] = coeff_z(g.apply_basis(0, Sign::plus, b)) - c[b];
    for (int k = 0; k < d.grade[nb]; ++k)
      for (Sign e : both_signs) d.pi[k][sidx(e)][nb] = rebase(g.apply_basis(k + 1, e, b));
  }
  return d;
}

JoinGroup join_group(const GlobularGroup& g, const GlobularGroup& h) {
  const GlobularGroup sg = suspend(g), sh = suspend(h);
  JoinGroup j;
  j.group = desuspend(tensor_globular(sg, sh));
  const int hs = sh.size();
  auto at = [&](int a, int b) { return tensor_index(a, b, hs) - 1; };
  for (int x = 0; x < g.size(); ++x) j.left.push_back(at(x + 1, 0));
  for (int y = 0; y < h.size(); ++y) j.right.push_back(at(0, y + 1));
  j.pair.assign(g.size(), std::vector<int>(h.size()));
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < h.size(); ++y) j.pair[x][y] = at(x + 1, y + 1);
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < h.size(); ++y) {
      const std::string a = g.name.empty() ? "" : g.name[x], b = h.name.empty() ? "" : h.name[y];
      j.group.name[j.pair[x][y]] = a + "⋆" + b;
    }
  return j;
}

GlobularGroup cone_group(const GlobularGroup& g) {
  if (g.augmentation.empty()) throw PreconditionViolated("the cone needs an augmentation");
  const int n = g.size();
  std::vector<int> grade = g.grade;
  for (int d : g.grade) grade.push_back(d + 1);
  grade.push_back(0);
  GlobularGroup c = make_group(grade);
  const int apex = 2 * n;
  c.name[apex] = "*";
  auto T = [&](const LinComb& v) { return shift(v, n); };
  for (int b = 0; b < n; ++b) {
    c.name[b] = g.name.empty() ? std::string() : g.name[b];
    c.name[n + b] = "T" + c.name[b];
    for (int k = 0; k < g.grade[b]; ++k)
      for (Sign e : both_signs) c.pi[k][sidx(e)][b] = g.pi[k][sidx(e)][b];
    const LinComb x = g.basis(b);
    LinComb m0;
    m0.add(apex, g.augmentation[b]);
    c.pi[0][0][n + b] = m0;
    c.pi[0][1][n + b] = g.apply(0, Sign::plus, x);
    for (int k = 1; k < grade[n + b]; ++k) {
      c.pi[k][0][n + b] = T(g.apply(k - 1, Sign::plus, x));
      c.pi[k][1][n + b] = T(g.apply(k - 1, Sign::minus, x)) + g.apply(k, Sign::plus, x) - g.apply(k - 1, Sign::minus, x);
    }
  }
  c.augmentation = g.augmentation;
  c.augmentation.insert(c.augmentation.end(), g.augmentation.begin(), g.augmentation.end());
  c.augmentation.push_back(1);
  return c;
}

// ---------------------------------------------------------------------------
// Term extraction.

namespace {

// x[i][sign]: the grade i part of pi_i^sign of an arrow.
using Seq = std::vector<std::array<LinComb, 2>>;

class Extractor {
 public:
  explicit Extractor(const Linearization& lin) : lin_(lin), p_(lin.polygraph()) {}

  Term run(const LinComb& v) {
    const int n = lin_.grade(v);
    if (n < 0) throw ExtractionFailed("cannot extract the zero vector");
    Seq x(n + 1);
    for (int i = 0; i <= n; ++i)
      for (Sign e : both_signs) x[i][sidx(e)] = part(lin_.pi(v, i, e), i);
    return rec(x);
  }

 private:
  LinComb part(const LinComb& v, int i) const {
    LinComb out;
    for (const auto& [b, c] : v.terms())
      if (p_.cells[b].dim == i) out.add(b, c);
    return out;
  }
  const LinComb& face(int b, int i, Sign e) {
    auto [it, fresh] = faces_.try_emplace({b, i, sidx(e)});
    if (fresh) it->second = part(lin_.pi_cell(b, i, e), i);
    return it->second;
  }
  LinComb bd(const LinComb& chain, int k) {
    LinComb out;
    for (const auto& [b, c] : chain.terms()) {
      out.axpy(c, face(b, k, Sign::plus));
      out.axpy(-c, face(b, k, Sign::minus));
    }
    return out;
  }
  static bool nonneg(const LinComb& v) {
    for (const auto& [b, c] : v.terms())
      if (c < 0) return false;
    return true;
  }
  static int top(const Seq& x) {
    int n = static_cast<int>(x.size()) - 1;
    while (n > 0 && x[n][0].zero() && x[n][1].zero()) --n;
    return n;
  }

  Term rec(Seq x) {
    const int n = top(x);
    x.resize(n + 1);
    for (const auto& level : x)
      for (const auto& s : level)
        if (!nonneg(s)) throw ExtractionFailed("negative coefficient in a boundary");
    if (!(x[n][0] == x[n][1])) throw ExtractionFailed("top components differ");
    const LinComb& t = x[n][0];
    if (t.terms().size() == 1 && t.terms().begin()->second == 1) {
      const int b = t.terms().begin()->first;
      bool atom = true;
      for (int i = 0; i < n && atom; ++i)
        for (Sign e : both_signs) atom = atom && x[i][sidx(e)] == face(b, i, e);
      if (atom) return gen(b);
    }
    if (n == 0) throw ExtractionFailed("0-dimensional part is not a single point");
    for (int k = 0; k < n; ++k) {
      auto split = try_split(x, k);
      if (split) return comp(rec(split->first), rec(split->second), k);
    }
    throw ExtractionFailed("no decomposition found; the support is not loop free");
  }

  std::optional<std::pair<Seq, Seq>> try_split(const Seq& x, int k) {
    const int n = static_cast<int>(x.size()) - 1;
    // Cells above level k involved in x, closed under faces above k.
    std::map<int, int> id;
    std::vector<int> cells;
    auto touch = [&](int b) {
      if (id.count(b)) return;
      id[b] = static_cast<int>(cells.size());
      cells.push_back(b);
    };
    for (int i = k + 1; i <= n; ++i)
      for (const auto& s : x[i])
        for (const auto& [b, c] : s.terms()) touch(b);
    std::vector<int> parent;
    for (std::size_t q = 0; q < cells.size(); ++q) {
      const int b = cells[q];
      for (int i = k + 1; i < p_.cells[b].dim; ++i)
        for (Sign e : both_signs)
          for (const auto& [f, c] : face(b, i, e).terms()) touch(f);
    }
    parent.resize(cells.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (std::size_t q = 0; q < cells.size(); ++q) {
      const int b = cells[q];
      for (int i = k + 1; i < p_.cells[b].dim; ++i)
        for (Sign e : both_signs)
          for (const auto& [f, c] : face(b, i, e).terms()) {
            const int u = find(static_cast<int>(q)), w = find(id[f]);
            if (u != w) parent[std::max(u, w)] = std::min(u, w);
          }
    }
    std::map<int, std::vector<int>> comps;
    for (std::size_t q = 0; q < cells.size(); ++q) comps[find(static_cast<int>(q))].push_back(cells[q]);
    if (comps.size() < 2) return std::nullopt;

    // Component A precedes B when a k-target of A meets a k-source of B.
    std::map<int, std::set<int>> out_k, in_k;
    for (const auto& [ra, ca] : comps) {
      std::set<int> tgt;
      for (int b : ca)
        for (const auto& [f, c] : face(b, k, Sign::plus).terms()) tgt.insert(f);
      for (const auto& [rb, cb] : comps) {
        if (ra == rb) continue;
        bool meet = false;
        for (int b : cb)
          for (const auto& [f, c] : face(b, k, Sign::minus).terms()) meet = meet || tgt.count(f);
        if (meet) in_k[rb].insert(ra);
      }
    }
    for (const auto& [r, members] : comps) {
      if (!in_k[r].empty()) continue;
      std::set<int> mine(members.begin(), members.end());
      Seq y(n + 1), z(n + 1);
      for (int i = 0; i < k; ++i) y[i] = z[i] = x[i];
      for (int i = k + 1; i <= n; ++i)
        for (int e = 0; e < 2; ++e) {
          for (const auto& [b, c] : x[i][e].terms())
            if (mine.count(b)) y[i][e].add(b, c);
          z[i][e] = x[i][e] - y[i][e];
        }
      y[k][0] = x[k][0];
      y[k][1] = x[k][0] + bd(y[k + 1][0], k);
      z[k][0] = y[k][1];
      z[k][1] = x[k][1];
      if (!nonneg(y[k][1])) continue;
      bool ey = true, ez = true;
      for (int i = k + 1; i <= n; ++i) {
        ey = ey && y[i][0].zero() && y[i][1].zero();
        ez = ez && z[i][0].zero() && z[i][1].zero();
      }
      if (ey || ez) continue;
      return std::make_pair(std::move(y), std::move(z));
    }
    return std::nullopt;
  }

  const Linearization& lin_;
  const Polygraph& p_;
  std::map<std::array<int, 3>, LinComb> faces_;
};

}  // namespace

Term extract_term(const Linearization& lin, const LinComb& v) {
  Term t = Extractor(lin).run(v);
  LinComb back;
  try {
    back = lin.delta(t, true);
  } catch (const IllTyped& e) {
    throw ExtractionFailed(std::string("extracted term is ill-typed: ") + e.what());
  }
  if (!(back == v)) throw ExtractionFailed("extracted term does not relinearize to the input");
  return t;
}

// ---------------------------------------------------------------------------
// Polygraph level constructions.

namespace {

// Fills the boundaries of the cells with null src/tgt, dimension by dimension,
// from their linear boundaries bnd[c][sign] (δ vectors over p).
void fill_boundaries(Polygraph& p, const std::vector<std::array<LinComb, 2>>& bnd) {
  int top = 0;
  for (const auto& c : p.cells) top = std::max(top, c.dim);
  for (int d = 1; d <= top; ++d) {
    std::vector<char> keep(p.size(), 0);
    for (int i = 0; i < p.size(); ++i) keep[i] = p.cells[i].dim < d;
    std::vector<int> old_to_new;
    const Polygraph q = restrict(p, keep, &old_to_new);
    std::vector<int> new_to_old(q.size());
    for (int i = 0; i < p.size(); ++i)
      if (old_to_new[i] >= 0) new_to_old[old_to_new[i]] = i;
    const Linearization lin(q);
    for (int i = 0; i < p.size(); ++i) {
      if (p.cells[i].dim != d || p.cells[i].src) continue;
      for (Sign e : both_signs) {
        LinComb v;
        for (const auto& [b, c] : bnd[i][sidx(e)].terms()) {
          if (old_to_new[b] < 0) throw NotSteinerRepresentable("boundary of " + p.label(i) + " mentions a cell of its dimension");
          v.add(old_to_new[b], c);
        }
        Term t;
        try {
          t = extract_term(lin, v);
        } catch (const ExtractionFailed& ex) {
          throw NotSteinerRepresentable("boundary of " + p.label(i) + ": " + ex.what());
        }
        t = rename(t, new_to_old);
        (e == Sign::minus ? p.cells[i].src : p.cells[i].tgt) = t;
      }
    }
  }
}

void check_linearization(const Polygraph& p, const GlobularGroup& g) {
  const Linearization lin(p);
  for (int b = 0; b < p.size(); ++b)
    for (int k = 0; k < p.cells[b].dim; ++k)
      for (Sign e : both_signs)
        if (!(lin.pi_cell(b, k, e) == g.apply_basis(k, e, b)))
          throw NotSteinerRepresentable("linearization of the construction disagrees at " + p.label(b));
}

}  // namespace

Polygraph tensor_polygraph(const Polygraph& x, const Polygraph& y) {
  const GlobularGroup g = tensor_globular(Linearization(x).group(), Linearization(y).group());
  Polygraph p;
  p.tag = ClassTag::positive;
  for (int a = 0; a < x.size(); ++a)
    for (int b = 0; b < y.size(); ++b) p.add(x.cells[a].dim + y.cells[b].dim, nullptr, nullptr, x.label(a) + "⊗" + y.label(b));
  std::vector<std::array<LinComb, 2>> bnd(p.size());
  for (int c = 0; c < p.size(); ++c)
    if (p.cells[c].dim > 0)
      for (Sign e : both_signs) bnd[c][sidx(e)] = g.apply_basis(p.cells[c].dim - 1, e, c);
  fill_boundaries(p, bnd);
  check_linearization(p, g);
  return p;
}

Term tensor_arrow(const Polygraph& x, const Polygraph& y, const Polygraph& xy, const Term& a, const Term& b) {
  const LinComb v = tensor_lin(Linearization(x).delta(a), Linearization(y).delta(b), y.size());
  try {
    return extract_term(Linearization(xy), v);
  } catch (const ExtractionFailed& e) {
    throw NotSteinerRepresentable(e.what());
  }
}

Polygraph cone_polygraph(const Polygraph& x) {
  const GlobularGroup base = Linearization(x).group();
  const GlobularGroup c = cone_group(base);
  const int n = x.size();
  // cone_group order is (base, T, apex); ours is (base, apex, T).
  std::vector<int> to_group(2 * n + 1);
  for (int i = 0; i < n; ++i) {
    to_group[i] = i;
    to_group[n + 1 + i] = n + i;
  }
  to_group[n] = 2 * n;
  std::vector<int> from_group(2 * n + 1);
  for (int i = 0; i <= 2 * n; ++i) from_group[to_group[i]] = i;

  Polygraph p = x;
  p.tag = ClassTag::positive;
  p.add(0, nullptr, nullptr, "*");
  for (int i = 0; i < n; ++i) p.add(x.cells[i].dim + 1, nullptr, nullptr, "T" + x.label(i));
  std::vector<std::array<LinComb, 2>> bnd(p.size());
  for (int i = 0; i < n; ++i) {
    const int cell = n + 1 + i;
    for (Sign e : both_signs) {
      LinComb v;
      const LinComb img = c.apply_basis(x.cells[i].dim, e, n + i);
      for (const auto& [b, k] : img.terms()) v.add(from_group[b], k);
      bnd[cell][sidx(e)] = v;
    }
  }
  fill_boundaries(p, bnd);

  std::vector<int> grade(p.size());
  for (int i = 0; i < p.size(); ++i) grade[i] = p.cells[i].dim;
  GlobularGroup g = make_group(grade);
  for (int i = 0; i < p.size(); ++i)
    for (int k = 0; k < g.grade[i]; ++k)
      for (Sign e : both_signs) {
        LinComb v;
        const LinComb img = c.apply_basis(k, e, to_group[i]);
        for (const auto& [b, m] : img.terms()) v.add(from_group[b], m);
        g.pi[k][sidx(e)][i] = v;
      }
  check_linearization(p, g);
  return p;
}

int oriental_bound() {
  if (const char* s = std::getenv("PPX_MAX_ORIENTAL")) {
    const int v = std::atoi(s);
    if (v > 0) return v;
  }
  return 5;
}

Polygraph oriental(int n) {
  if (n < 0) throw PreconditionViolated("negative oriental");
  if (n > oriental_bound()) throw BoundExceeded("oriental above the configured bound " + std::to_string(oriental_bound()));
  Polygraph p;
  p.tag = ClassTag::regular;
  p.add(0, nullptr, nullptr, "0");
  for (int m = 1; m <= n; ++m) {
    const int size = p.size();
    std::vector<std::string> names;
    for (const auto& c : p.cells) {
      std::string s;
      for (char ch : c.name) s += static_cast<char>(ch + 1);
      names.push_back(s);
    }
    Polygraph q = cone_polygraph(p);
    for (int i = 0; i < size; ++i) {
      q.cells[i].name = names[i];
      q.cells[cone_t(p, i)].name = "0" + names[i];
    }
    q.cells[cone_apex(p)].name = "0";
    q.tag = ClassTag::regular;
    p = std::move(q);
  }
  return p;
}

Polygraph cube(int n) {
  if (n < 0) throw PreconditionViolated("negative cube");
  Polygraph p = globe(0);
  const Polygraph d1 = globe(1);
  for (int i = 0; i < n; ++i) p = i == 0 ? d1 : tensor_polygraph(p, d1);
  p.tag = ClassTag::regular;
  return p;
}

}  // namespace ppx
