#pragma once

#include <vector>

#include "ppx/polygraph.hpp"
#include "ppx/shape.hpp"

namespace ppx {

// Syntactic dimension of a term: max over composites, min(k, .) for Bnd.
int term_dim(const Polygraph& p, const Term& t);

// Every cell of dimension n >= 1 has source and target of dimension n-1.
bool is_positive(const Polygraph& p);

// The free strict ω-category on a positive polygraph, with arrows kept in
// normal form. Construction typechecks every cell.
class FreeCat {
 public:
  explicit FreeCat(Polygraph p);

  const Polygraph& polygraph() const { return p_; }
  // The plex of a cell as an arrow.
  const Arrow& cell(int i) const { return cells_.at(i); }

  Arrow eval(const Term& t) const;
  bool equal(const Term& a, const Term& b) const { return eval(a) == eval(b); }
  Term normal(const Term& t) const { return term_of(eval(t)); }

  int dimension(const Term& t) const { return arrow_dim(eval(t)); }
  Term boundary(const Term& t, int k, Sign s) const;
  // Eager unit law: composing with a lower dimensional arrow returns the other side.
  Term compose(const Term& a, const Term& b, int k) const;

 private:
  Polygraph p_;
  std::vector<Arrow> cells_;
};

}  // namespace ppx
