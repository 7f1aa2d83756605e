#include "ppx/subpolygraph.hpp"

#include <algorithm>

#include "ppx/errors.hpp"
#include "ppx/freecat.hpp"

namespace ppx {

int SubPolygraph::size() const { return static_cast<int>(std::count(member.begin(), member.end(), 1)); }

std::vector<char> support(const Polygraph& p, const Term& t) {
  std::vector<char> m(p.size(), 0);
  if (is_positive(p)) {
    FreeCat fc(p);
    for (int c : fc.eval(t).label) m[c] = 1;
    return m;
  }
  // Non positive: syntactic occurrences, closed downward.
  std::vector<int> g;
  collect_gens(t, g);
  for (int c : g) m[c] = 1;
  return m;
}

static std::vector<char> down_closure(const Polygraph& p, std::vector<char> m) {
  const bool pos = is_positive(p);
  if (pos) {
    FreeCat fc(p);
    std::vector<char> out = m;
    for (int i = 0; i < p.size(); ++i)
      if (m[i])
        for (int c : fc.cell(i).label) out[c] = 1;
    return out;
  }
  auto order = p.by_dim();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Cell& c = p.cells[*it];
    if (!m[*it] || c.dim == 0) continue;
    std::vector<int> g;
    collect_gens(c.src, g);
    collect_gens(c.tgt, g);
    for (int x : g) m[x] = 1;
  }
  return m;
}

bool is_closed(const SubPolygraph& s) { return down_closure(*s.parent, s.member) == s.member; }

SubPolygraph closure(PolygraphPtr p, const std::vector<int>& cells) {
  std::vector<char> m(p->size(), 0);
  for (int c : cells) m.at(c) = 1;
  auto closed = down_closure(*p, m);
  return SubPolygraph{std::move(p), std::move(closed)};
}

static void check_pair(const SubPolygraph& a, const SubPolygraph& b) {
  if (a.parent != b.parent && a.parent->size() != b.parent->size())
    throw PreconditionViolated("sub-polygraphs of different polygraphs");
  if (!is_closed(a) || !is_closed(b)) throw ClosureViolation("input is not a sub-polygraph");
}

SubPolygraph sub_union(const SubPolygraph& a, const SubPolygraph& b) {
  check_pair(a, b);
  SubPolygraph r{a.parent, a.member};
  for (std::size_t i = 0; i < r.member.size(); ++i) r.member[i] = a.member[i] || b.member[i];
  if (!is_closed(r)) throw ClosureViolation("union is not closed");
  return r;
}

SubPolygraph sub_intersection(const SubPolygraph& a, const SubPolygraph& b) {
  check_pair(a, b);
  SubPolygraph r{a.parent, a.member};
  for (std::size_t i = 0; i < r.member.size(); ++i) r.member[i] = a.member[i] && b.member[i];
  if (!is_closed(r)) throw ClosureViolation("intersection is not closed");
  return r;
}

Polygraph as_polygraph(const SubPolygraph& s, std::vector<int>* old_to_new) {
  if (!is_closed(s)) throw ClosureViolation("not a sub-polygraph");
  std::vector<char> keep = s.member;
  // Terms may mention cells only through Bnd; renormalise them first.
  Polygraph p = *s.parent;
  if (is_positive(p)) {
    FreeCat fc(p);
    for (auto& c : p.cells)
      if (c.dim > 0) {
        c.src = fc.normal(c.src);
        c.tgt = fc.normal(c.tgt);
      }
  }
  return restrict(p, keep, old_to_new);
}

}  // namespace ppx
