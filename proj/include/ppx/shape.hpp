#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ppx/term.hpp"

namespace ppx {

using ShapeId = int;

// An arrow of the free category on some positive polygraph, in normal form:
// the canonical polyplex it is classified by, and the images of that
// polyplex's cells.
struct Arrow {
  ShapeId shape = -1;
  std::vector<int> label;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

// Canonical polyplex. Cell numbering is invariant under isomorphism so two
// shapes are isomorphic iff they have the same id.
struct Shape {
  int dim = 0;
  std::vector<int> cell_dim;
  std::vector<Arrow> src, tgt;            // per cell, labels into this shape
  std::vector<std::array<Arrow, 2>> bnd;  // bnd[k][sign] for k < dim
  Term witness;                           // Bnd-free term for the universal arrow
  int top = -1;                           // top cell when the shape is a plex
  std::uint64_t stable_hash = 0;          // independent of interning order

  int size() const { return static_cast<int>(cell_dim.size()); }
  bool is_plex() const { return top >= 0; }
};

const Shape& shape_of(ShapeId id);
std::size_t shape_count();
ShapeId point_shape();

inline int arrow_dim(const Arrow& a) { return shape_of(a.shape).dim; }
Arrow identity_arrow(ShapeId id);
Arrow relabel(const Arrow& a, const std::vector<int>& map);

Arrow boundary(const Arrow& a, int k, Sign s);

// a #_k b. Throws BoundaryMismatch when the k-boundaries disagree.
Arrow compose(const Arrow& a, const Arrow& b, int k);

struct Composite {
  Arrow arrow;
  std::vector<int> left, right;  // shape cells of a and b -> shape cells of the result
};
// Like compose but also reports how the two shapes sit in the result.
// Requires both dimensions to exceed k.
Composite compose_detailed(const Arrow& a, const Arrow& b, int k);

// The plex with source s, target t and top cell labelled `top`.
Arrow make_plex(const Arrow& s, const Arrow& t, int top);

// Term of the arrow, obtained from the witness of its shape.
Term term_of(const Arrow& a);

// Every cell of the shape that is in the image of the sub-arrow.
std::vector<char> image_mask(const Arrow& sub, int size);

}  // namespace ppx
