#include "ppx/validate.hpp"

#include <map>
#include <set>

#include "ppx/errors.hpp"
#include "ppx/freecat.hpp"
#include "ppx/linearization.hpp"
#include "ppx/polyplex.hpp"

namespace ppx {
namespace {

bool gens_ok(const Polygraph& p, const Term& t, int below) {
  std::vector<int> g;
  collect_gens(t, g);
  for (int x : g)
    if (x < 0 || x >= p.size() || p.cells[x].dim >= below) return false;
  return true;
}

Arrow eval(const std::vector<Arrow>& cells, const Term& t) {
  switch (t->kind) {
    case TermNode::Kind::gen:
      if (cells[t->cell].shape < 0) throw IllTyped("uses a cell that failed to typecheck");
      return cells[t->cell];
    case TermNode::Kind::comp:
      return compose(eval(cells, t->left), eval(cells, t->right), t->k);
    case TermNode::Kind::bnd:
      return boundary(eval(cells, t->left), t->k, t->sign);
  }
  throw IllTyped("bad term");
}

}  // namespace

ValidationReport validate(const Polygraph& p) {
  ValidationReport r;
  auto issue = [&](const std::string& kind, int cell, const std::string& msg) {
    r.issues.push_back({kind, cell, cell >= 0 ? "cell " + p.label(cell) + ": " + msg : msg});
  };
  std::set<int> ids;
  for (int i = 0; i < p.size(); ++i)
    if (!ids.insert(p.cells[i].id).second) issue("duplicate id", i, "id used twice");

  // Structural checks. bad[i] marks cells whose terms cannot be interpreted.
  std::vector<char> bad(p.size(), 0), identity_side(p.size(), 0);
  for (int i = 0; i < p.size(); ++i) {
    const Cell& c = p.cells[i];
    if (c.dim < 0) {
      issue("dimension", i, "negative dimension");
      bad[i] = 1;
      continue;
    }
    if (c.dim == 0) {
      if (c.src || c.tgt) {
        issue("dimension", i, "0-cell with a boundary");
        bad[i] = 1;
      }
      continue;
    }
    if (!c.src || !c.tgt) {
      issue("missing boundary", i, "source or target missing");
      bad[i] = 1;
      continue;
    }
    if (!gens_ok(p, c.src, c.dim) || !gens_ok(p, c.tgt, c.dim)) {
      issue("dangling reference", i, "boundary mentions an unknown cell or one of dimension >= its own");
      bad[i] = 1;
      continue;
    }
    for (const Term& t : {c.src, c.tgt}) {
      const int d = term_dim(p, t);
      if (d > c.dim - 1) {
        issue("dimension", i, "boundary of dimension " + std::to_string(d));
        bad[i] = 1;
      } else if (d < c.dim - 1) {
        identity_side[i] = 1;
      }
    }
  }
  const bool tagged_positive = p.tag == ClassTag::positive || p.tag == ClassTag::regular;
  for (int i = 0; i < p.size(); ++i)
    if (identity_side[i] && !bad[i] && tagged_positive)
      issue("positivity violated", i, "source or target is an identity");

  bool any_identity = false;
  for (char c : identity_side) any_identity |= c != 0;
  for (char c : bad)
    if (c) return r;

  if (!any_identity) {
    std::vector<Arrow> cells(p.size(), Arrow{-1, {}});
    for (int i : p.by_dim()) {
      const Cell& c = p.cells[i];
      if (c.dim == 0) {
        cells[i] = Arrow{point_shape(), {i}};
        continue;
      }
      Arrow s, t;
      try {
        s = eval(cells, c.src);
        t = eval(cells, c.tgt);
      } catch (const std::exception& e) {
        issue("ill-typed composition", i, e.what());
        continue;
      }
      if (c.dim >= 2) {
        bool parallel = true;
        for (Sign e : both_signs) parallel &= boundary(s, c.dim - 2, e) == boundary(t, c.dim - 2, e);
        if (!parallel) {
          issue("non-parallel boundary", i, "source and target are not parallel");
          continue;
        }
      }
      cells[i] = make_plex(s, t, i);
    }
  } else {
    // Identities in boundaries: fall back to linear typing.
    try {
      Linearization lin(p);
      for (int i : p.by_dim()) {
        const Cell& c = p.cells[i];
        if (c.dim == 0) continue;
        LinComb s, t;
        try {
          s = lin.delta(c.src, true);
          t = lin.delta(c.tgt, true);
        } catch (const std::exception& e) {
          issue("ill-typed composition", i, e.what());
          continue;
        }
        for (Sign e : both_signs)
          if (!(lin.pi(s, c.dim - 2, e) == lin.pi(t, c.dim - 2, e))) {
            issue("non-parallel boundary", i, "source and target are not parallel");
            break;
          }
      }
    } catch (const std::exception& e) {
      issue("ill-typed composition", -1, e.what());
    }
  }
  if (r.ok() && p.tag == ClassTag::regular && !is_regular(p)) {
    FreeCat fc(p);
    for (int i = 0; i < p.size(); ++i)
      if (!spherical_by_intersection(fc.cell(i).shape))
        issue("regularity violated", i, "plex lacks spherical boundary");
  }
  return r;
}

}  // namespace ppx
