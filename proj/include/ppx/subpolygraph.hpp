#pragma once

#include <vector>

#include "ppx/polygraph.hpp"

namespace ppx {

struct SubPolygraph {
  PolygraphPtr parent;
  std::vector<char> member;

  int size() const;
  bool contains(int cell) const { return member.at(cell) != 0; }
};

// Cells that occur in the arrow denoted by t.
std::vector<char> support(const Polygraph& p, const Term& t);

bool is_closed(const SubPolygraph& s);
// Smallest sub-polygraph containing the given cells.
SubPolygraph closure(PolygraphPtr p, const std::vector<int>& cells);
SubPolygraph sub_union(const SubPolygraph& a, const SubPolygraph& b);
SubPolygraph sub_intersection(const SubPolygraph& a, const SubPolygraph& b);
Polygraph as_polygraph(const SubPolygraph& s, std::vector<int>* old_to_new = nullptr);

}  // namespace ppx
