#include "ppx/shape.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "ppx/errors.hpp"

namespace ppx {
namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  // Class index per element, classes numbered by first element.
  std::vector<int> classes(int* count) {
    std::vector<int> root_class(parent.size(), -1), out(parent.size());
    int n = 0;
    for (int i = 0; i < static_cast<int>(parent.size()); ++i) {
      int r = find(i);
      if (root_class[r] < 0) root_class[r] = n++;
      out[i] = root_class[r];
    }
    *count = n;
    return out;
  }
};

// Polyplex with arbitrary cell numbering, before canonicalisation.
struct Raw {
  int dim = 0;
  std::vector<int> cell_dim;
  std::vector<Arrow> src, tgt;
  std::vector<std::array<Arrow, 2>> bnd;
  Term witness;
};

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  std::uint64_t z = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct KeyHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::uint64_t h = v.size();
    for (int x : v) h = mix(h, static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)));
    return static_cast<std::size_t>(h);
  }
};

class Table {
 public:
  const Shape& get(ShapeId id) {
    std::shared_lock lock(mu_);
    if (id < 0 || id >= static_cast<int>(shapes_.size())) throw Error("unknown shape id " + std::to_string(id));
    return *shapes_[id];
  }

  std::size_t count() {
    std::shared_lock lock(mu_);
    return shapes_.size();
  }

  // Returns the id and the position of every raw cell in the canonical order.
  std::pair<ShapeId, std::vector<int>> intern(const Raw& raw);

 private:
  std::shared_mutex mu_;
  std::vector<std::unique_ptr<Shape>> shapes_;
  std::unordered_map<std::vector<int>, ShapeId, KeyHash> index_;
};

Table& table() {
  static Table t;
  return t;
}

Arrow relabel_arrow(const Arrow& a, const std::vector<int>& map) {
  Arrow out{a.shape, {}};
  out.label.reserve(a.label.size());
  for (int c : a.label) out.label.push_back(map[c]);
  return out;
}

std::pair<ShapeId, std::vector<int>> Table::intern(const Raw& raw) {
  const int n = static_cast<int>(raw.cell_dim.size());
  std::vector<int> pos(n, -1);
  int next = 0;
  auto visit = [&](const Arrow& a) {
    for (int c : a.label)
      if (pos[c] < 0) pos[c] = next++;
  };
  if (raw.dim == 0) {
    if (n != 1) throw Error("internal: 0-dimensional polyplex with several cells");
    pos[0] = next++;
  } else {
    visit(raw.bnd[raw.dim - 1][0]);
    visit(raw.bnd[raw.dim - 1][1]);
    // Top cells in an order fixed by the already numbered part.
    while (true) {
      int best = -1;
      std::vector<int> best_key;
      for (int c = 0; c < n; ++c) {
        if (pos[c] >= 0 || raw.cell_dim[c] != raw.dim) continue;
        std::vector<int> key;
        bool ready = true;
        for (int x : raw.src[c].label) {
          if (pos[x] < 0) {
            ready = false;
            break;
          }
          key.push_back(pos[x]);
        }
        if (!ready) continue;
        const std::uint64_t h = get(raw.src[c].shape).stable_hash;
        key.push_back(static_cast<int>(h & 0x7fffffff));
        key.push_back(static_cast<int>((h >> 31) & 0x7fffffff));
        if (best < 0 || key < best_key) {
          best = c;
          best_key = std::move(key);
        }
      }
      if (best < 0) break;
      pos[best] = next++;
      visit(raw.tgt[best]);
    }
  }
  if (next != n) throw Error("internal: polyplex cells unreachable during canonical numbering");

  auto sh = std::make_unique<Shape>();
  sh->dim = raw.dim;
  sh->cell_dim.resize(n);
  sh->src.resize(n);
  sh->tgt.resize(n);
  for (int i = 0; i < n; ++i) {
    sh->cell_dim[pos[i]] = raw.cell_dim[i];
    if (raw.cell_dim[i] > 0) {
      sh->src[pos[i]] = relabel_arrow(raw.src[i], pos);
      sh->tgt[pos[i]] = relabel_arrow(raw.tgt[i], pos);
    }
  }
  sh->bnd.resize(raw.dim);
  for (int k = 0; k < raw.dim; ++k)
    for (int s = 0; s < 2; ++s) sh->bnd[k][s] = relabel_arrow(raw.bnd[k][s], pos);

  std::vector<int> key{raw.dim, n};
  std::uint64_t h = mix(raw.dim, n);
  auto put = [&](const Arrow& a) {
    key.push_back(a.shape);
    h = mix(h, a.shape < 0 ? 0 : get(a.shape).stable_hash);
    for (int c : a.label) {
      key.push_back(c);
      h = mix(h, c);
    }
  };
  for (int i = 0; i < n; ++i) {
    key.push_back(sh->cell_dim[i]);
    h = mix(h, sh->cell_dim[i]);
    if (sh->cell_dim[i] > 0) {
      put(sh->src[i]);
      put(sh->tgt[i]);
    }
  }
  for (int k = 0; k < raw.dim; ++k) {
    put(sh->bnd[k][0]);
    put(sh->bnd[k][1]);
  }
  sh->stable_hash = h;

  if (raw.dim == 0) {
    sh->top = 0;
  } else {
    int top = -1, tops = 0;
    for (int i = 0; i < n; ++i)
      if (sh->cell_dim[i] == raw.dim) {
        top = i;
        ++tops;
      }
    if (tops == 1 && sh->bnd[raw.dim - 1][0] == sh->src[top] && sh->bnd[raw.dim - 1][1] == sh->tgt[top])
      sh->top = top;
  }
  sh->witness = rename(raw.witness, pos);

  std::unique_lock lock(mu_);
  auto it = index_.find(key);
  if (it != index_.end()) return {it->second, pos};
  const ShapeId id = static_cast<ShapeId>(shapes_.size());
  shapes_.push_back(std::move(sh));
  index_.emplace(std::move(key), id);
  return {id, pos};
}

}  // namespace

const Shape& shape_of(ShapeId id) { return table().get(id); }

std::size_t shape_count() { return table().count(); }

ShapeId point_shape() {
  static const ShapeId id = [] {
    Raw r;
    r.dim = 0;
    r.cell_dim = {0};
    r.src.resize(1);
    r.tgt.resize(1);
    r.witness = gen(0);
    return table().intern(r).first;
  }();
  return id;
}

Arrow identity_arrow(ShapeId id) {
  Arrow a{id, std::vector<int>(shape_of(id).size())};
  for (int i = 0; i < static_cast<int>(a.label.size()); ++i) a.label[i] = i;
  return a;
}

Arrow relabel(const Arrow& a, const std::vector<int>& map) { return relabel_arrow(a, map); }

Arrow boundary(const Arrow& a, int k, Sign s) {
  const Shape& sh = shape_of(a.shape);
  if (k < 0) throw Error("negative boundary level");
  if (k >= sh.dim) return a;
  return relabel_arrow(sh.bnd[k][sidx(s)], a.label);
}

Composite compose_detailed(const Arrow& a, const Arrow& b, int k) {
  const Shape& A = shape_of(a.shape);
  const Shape& B = shape_of(b.shape);
  if (A.dim <= k || B.dim <= k) throw Error("internal: degenerate composite requested");
  if (!(boundary(a, k, Sign::plus) == boundary(b, k, Sign::minus)))
    throw BoundaryMismatch("composite #" + std::to_string(k) + " of arrows with mismatched boundaries");
  const int na = A.size(), nb = B.size();
  UnionFind uf(na + nb);
  const Arrow& ap = A.bnd[k][1];
  const Arrow& bm = B.bnd[k][0];
  for (std::size_t i = 0; i < ap.label.size(); ++i) uf.unite(ap.label[i], na + bm.label[i]);
  int m = 0;
  const std::vector<int> cls = uf.classes(&m);
  std::vector<int> fa(cls.begin(), cls.begin() + na), fb(cls.begin() + na, cls.end());

  Raw r;
  r.dim = std::max(A.dim, B.dim);
  r.cell_dim.assign(m, 0);
  r.src.resize(m);
  r.tgt.resize(m);
  for (int i = 0; i < na; ++i) {
    r.cell_dim[fa[i]] = A.cell_dim[i];
    if (A.cell_dim[i] > 0) {
      r.src[fa[i]] = relabel_arrow(A.src[i], fa);
      r.tgt[fa[i]] = relabel_arrow(A.tgt[i], fa);
    }
  }
  for (int i = 0; i < nb; ++i) {
    r.cell_dim[fb[i]] = B.cell_dim[i];
    if (B.cell_dim[i] > 0) {
      r.src[fb[i]] = relabel_arrow(B.src[i], fb);
      r.tgt[fb[i]] = relabel_arrow(B.tgt[i], fb);
    }
  }
  r.bnd.resize(r.dim);
  const Arrow ida = relabel_arrow(identity_arrow(a.shape), fa);
  const Arrow idb = relabel_arrow(identity_arrow(b.shape), fb);
  for (int j = 0; j < r.dim; ++j) {
    for (int s = 0; s < 2; ++s) {
      if (j < k) {
        r.bnd[j][s] = relabel_arrow(A.bnd[j][s], fa);
      } else if (j == k) {
        r.bnd[j][s] = s == 0 ? relabel_arrow(A.bnd[k][0], fa) : relabel_arrow(B.bnd[k][1], fb);
      } else {
        const Arrow x = j < A.dim ? relabel_arrow(A.bnd[j][s], fa) : ida;
        const Arrow y = j < B.dim ? relabel_arrow(B.bnd[j][s], fb) : idb;
        r.bnd[j][s] = compose(x, y, k);
      }
    }
  }
  r.witness = comp(rename(A.witness, fa), rename(B.witness, fb), k);

  auto [id, pos] = table().intern(r);
  Composite out;
  out.arrow.shape = id;
  out.arrow.label.assign(m, -1);
  out.left.resize(na);
  out.right.resize(nb);
  for (int i = 0; i < na; ++i) {
    out.left[i] = pos[fa[i]];
    out.arrow.label[pos[fa[i]]] = a.label[i];
  }
  for (int i = 0; i < nb; ++i) {
    out.right[i] = pos[fb[i]];
    out.arrow.label[pos[fb[i]]] = b.label[i];
  }
  return out;
}

Arrow compose(const Arrow& a, const Arrow& b, int k) {
  if (k < 0) throw Error("negative composition level");
  const int da = arrow_dim(a), db = arrow_dim(b);
  if (da <= k || db <= k) {
    if (!(boundary(a, k, Sign::plus) == boundary(b, k, Sign::minus)))
      throw BoundaryMismatch("composite #" + std::to_string(k) + " of arrows with mismatched boundaries");
    return da <= k ? b : a;
  }
  return compose_detailed(a, b, k).arrow;
}

Arrow make_plex(const Arrow& s, const Arrow& t, int top) {
  const Shape& S = shape_of(s.shape);
  const Shape& T = shape_of(t.shape);
  if (S.dim != T.dim) throw BoundaryMismatch("source and target have different dimensions");
  const int n = S.dim + 1;
  if (n >= 2)
    for (Sign e : both_signs)
      if (!(boundary(s, n - 2, e) == boundary(t, n - 2, e)))
        throw BoundaryMismatch("source and target are not parallel");
  const int ns = S.size(), nt = T.size();
  UnionFind uf(ns + nt + 1);
  if (n >= 2)
    for (int e = 0; e < 2; ++e) {
      const Arrow& bs = S.bnd[n - 2][e];
      const Arrow& bt = T.bnd[n - 2][e];
      for (std::size_t i = 0; i < bs.label.size(); ++i) uf.unite(bs.label[i], ns + bt.label[i]);
    }
  int m = 0;
  const std::vector<int> cls = uf.classes(&m);
  std::vector<int> fs(cls.begin(), cls.begin() + ns), ft(cls.begin() + ns, cls.begin() + ns + nt);
  const int tc = cls[ns + nt];

  Raw r;
  r.dim = n;
  r.cell_dim.assign(m, 0);
  r.src.resize(m);
  r.tgt.resize(m);
  auto put = [&](const Shape& X, const std::vector<int>& f) {
    for (int i = 0; i < X.size(); ++i) {
      r.cell_dim[f[i]] = X.cell_dim[i];
      if (X.cell_dim[i] > 0) {
        r.src[f[i]] = relabel_arrow(X.src[i], f);
        r.tgt[f[i]] = relabel_arrow(X.tgt[i], f);
      }
    }
  };
  put(S, fs);
  put(T, ft);
  r.cell_dim[tc] = n;
  r.src[tc] = Arrow{s.shape, fs};
  r.tgt[tc] = Arrow{t.shape, ft};
  r.bnd.resize(n);
  for (int j = 0; j + 1 < n; ++j)
    for (int e = 0; e < 2; ++e) r.bnd[j][e] = relabel_arrow(S.bnd[j][e], fs);
  r.bnd[n - 1][0] = r.src[tc];
  r.bnd[n - 1][1] = r.tgt[tc];
  r.witness = gen(tc);

  auto [id, pos] = table().intern(r);
  Arrow out{id, std::vector<int>(m, -1)};
  for (int i = 0; i < ns; ++i) out.label[pos[fs[i]]] = s.label[i];
  for (int i = 0; i < nt; ++i) out.label[pos[ft[i]]] = t.label[i];
  out.label[pos[tc]] = top;
  return out;
}

Term term_of(const Arrow& a) { return rename(shape_of(a.shape).witness, a.label); }

std::vector<char> image_mask(const Arrow& sub, int size) {
  std::vector<char> m(size, 0);
  for (int c : sub.label) m[c] = 1;
  return m;
}

}  // namespace ppx
