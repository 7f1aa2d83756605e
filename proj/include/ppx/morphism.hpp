#pragma once

#include <vector>

#include "ppx/polygraph.hpp"

namespace ppx {

// Morphism of free categories X* -> Y*, given on generators.
struct Morphism {
  PolygraphPtr domain, codomain;
  std::vector<Term> image;  // per domain cell, a term over the codomain

  bool polygraphic() const;
  // Cell map of a polygraphic morphism.
  std::vector<int> cell_map() const;
};

Morphism polygraphic(PolygraphPtr dom, PolygraphPtr cod, const std::vector<int>& map);
Morphism identity_morphism(PolygraphPtr p);

Term apply(const Morphism& f, const Term& t);
// g after f.
Morphism then(const Morphism& f, const Morphism& g);

// Throws IllTyped unless images respect dimensions and boundaries.
void check_morphism(const Morphism& f);

}  // namespace ppx
