#include "ppx/pushout.hpp"

#include <numeric>
#include <set>

#include "ppx/errors.hpp"

namespace ppx {

static bool injective(const std::vector<int>& m) {
  std::set<int> s(m.begin(), m.end());
  return s.size() == m.size();
}

Pushout pushout(const Morphism& i, const Morphism& j) {
  if (i.domain->size() != j.domain->size()) throw PreconditionViolated("pushout legs have different domains");
  const auto mi = i.cell_map(), mj = j.cell_map();
  if (!injective(mi) && !injective(mj)) throw NotMono("neither leg of the pushout is a monomorphism");
  const Polygraph& B = *i.codomain;
  const Polygraph& C = *j.codomain;
  const int nb = B.size(), nc = C.size();
  std::vector<int> parent(nb + nc);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < mi.size(); ++a) {
    int x = find(mi[a]), y = find(nb + mj[a]);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }
  std::vector<int> cls(nb + nc, -1), rep;
  for (int x = 0; x < nb + nc; ++x) {
    int r = find(x);
    if (cls[r] < 0) {
      cls[r] = static_cast<int>(rep.size());
      rep.push_back(x);
    }
    cls[x] = cls[r];
  }
  Pushout out;
  out.from_left.assign(cls.begin(), cls.begin() + nb);
  out.from_right.assign(cls.begin() + nb, cls.end());
  for (std::size_t k = 0; k < rep.size(); ++k) {
    const int x = rep[k];
    const bool left = x < nb;
    const Cell& c = left ? B.cells[x] : C.cells[x - nb];
    const auto& map = left ? out.from_left : out.from_right;
    Cell n{static_cast<int>(k), c.name, c.dim, c.src ? rename(c.src, map) : nullptr, c.tgt ? rename(c.tgt, map) : nullptr};
    out.object.cells.push_back(std::move(n));
  }
  return out;
}

}  // namespace ppx
