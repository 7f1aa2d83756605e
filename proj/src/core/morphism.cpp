#include "ppx/morphism.hpp"

#include "ppx/errors.hpp"
#include "ppx/freecat.hpp"

namespace ppx {

bool Morphism::polygraphic() const {
  for (std::size_t i = 0; i < image.size(); ++i) {
    const Term& t = image[i];
    if (t->kind != TermNode::Kind::gen) return false;
    if (codomain->cells.at(t->cell).dim != domain->cells.at(i).dim) return false;
  }
  return true;
}

std::vector<int> Morphism::cell_map() const {
  if (!polygraphic()) throw PreconditionViolated("morphism is not polygraphic");
  std::vector<int> m;
  m.reserve(image.size());
  for (const auto& t : image) m.push_back(t->cell);
  return m;
}

Morphism polygraphic(PolygraphPtr dom, PolygraphPtr cod, const std::vector<int>& map) {
  Morphism f{std::move(dom), std::move(cod), {}};
  for (int c : map) f.image.push_back(gen(c));
  return f;
}

Morphism identity_morphism(PolygraphPtr p) {
  std::vector<int> m(p->size());
  for (int i = 0; i < p->size(); ++i) m[i] = i;
  return polygraphic(p, p, m);
}

Term apply(const Morphism& f, const Term& t) {
  return substitute(t, [&](int c) { return f.image.at(c); });
}

Morphism then(const Morphism& f, const Morphism& g) {
  Morphism h{f.domain, g.codomain, {}};
  for (const auto& t : f.image) h.image.push_back(apply(g, t));
  return h;
}

void check_morphism(const Morphism& f) {
  const Polygraph& X = *f.domain;
  if (static_cast<int>(f.image.size()) != X.size()) throw IllTyped("morphism has the wrong number of images");
  FreeCat cy(*f.codomain);
  for (int i = 0; i < X.size(); ++i) {
    const Cell& c = X.cells[i];
    const Arrow a = cy.eval(f.image[i]);
    if (arrow_dim(a) > c.dim) throw IllTyped("image of " + X.label(i) + " has too large a dimension");
    if (c.dim == 0) continue;
    if (!(cy.eval(apply(f, c.src)) == boundary(a, c.dim - 1, Sign::minus)) ||
        !(cy.eval(apply(f, c.tgt)) == boundary(a, c.dim - 1, Sign::plus)))
      throw IllTyped("image of " + X.label(i) + " does not respect boundaries");
  }
}

}  // namespace ppx
