#pragma once

#include <vector>

#include "ppx/morphism.hpp"

namespace ppx {

struct Pushout {
  Polygraph object;
  std::vector<int> from_left, from_right;  // cell maps B -> P and C -> P
};

// Pushout of polygraphic i: A -> B and j: A -> C. One leg must be injective.
Pushout pushout(const Morphism& i, const Morphism& j);

}  // namespace ppx
