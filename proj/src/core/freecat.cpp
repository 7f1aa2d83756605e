#include "ppx/freecat.hpp"

#include <algorithm>

#include "ppx/errors.hpp"

namespace ppx {

int term_dim(const Polygraph& p, const Term& t) {
  switch (t->kind) {
    case TermNode::Kind::gen:
      return p.cells.at(t->cell).dim;
    case TermNode::Kind::comp:
      return std::max(term_dim(p, t->left), term_dim(p, t->right));
    case TermNode::Kind::bnd:
      return std::min(t->k, term_dim(p, t->left));
  }
  return 0;
}

bool is_positive(const Polygraph& p) {
  for (const auto& c : p.cells) {
    if (c.dim == 0) continue;
    if (!c.src || !c.tgt) return false;
    if (term_dim(p, c.src) != c.dim - 1 || term_dim(p, c.tgt) != c.dim - 1) return false;
  }
  return true;
}

FreeCat::FreeCat(Polygraph p) : p_(std::move(p)) {
  if (!is_positive(p_)) throw UnsupportedClass("free category engine needs a positive polygraph");
  cells_.resize(p_.cells.size());
  for (int i : p_.by_dim()) {
    const Cell& c = p_.cells[i];
    if (c.dim == 0) {
      cells_[i] = Arrow{point_shape(), {i}};
      continue;
    }
    for (const Term& t : {c.src, c.tgt}) {
      std::vector<int> g;
      collect_gens(t, g);
      for (int x : g)
        if (p_.cells[x].dim >= c.dim) throw IllTyped("cell " + p_.label(i) + " refers to a cell of dimension >= its own");
    }
    try {
      cells_[i] = make_plex(eval(c.src), eval(c.tgt), i);
    } catch (const BoundaryMismatch& e) {
      throw IllTyped("cell " + p_.label(i) + ": " + e.what());
    }
  }
}

Arrow FreeCat::eval(const Term& t) const {
  switch (t->kind) {
    case TermNode::Kind::gen:
      if (t->cell < 0 || t->cell >= static_cast<int>(cells_.size())) throw IllTyped("unknown generator");
      if (cells_[t->cell].shape < 0) throw IllTyped("generator used before it is defined");
      return cells_[t->cell];
    case TermNode::Kind::comp:
      return ppx::compose(eval(t->left), eval(t->right), t->k);
    case TermNode::Kind::bnd:
      return ppx::boundary(eval(t->left), t->k, t->sign);
  }
  throw IllTyped("bad term");
}

Term FreeCat::boundary(const Term& t, int k, Sign s) const { return term_of(ppx::boundary(eval(t), k, s)); }

Term FreeCat::compose(const Term& a, const Term& b, int k) const {
  const Arrow x = eval(a), y = eval(b);
  ppx::compose(x, y, k);  // typecheck
  if (arrow_dim(x) <= k) return b;
  if (arrow_dim(y) <= k) return a;
  return ppx::comp(a, b, k);
}

}  // namespace ppx
