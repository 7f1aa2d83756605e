#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ppx/term.hpp"

namespace ppx {

enum class ClassTag { positive, regular, unchecked };

struct Cell {
  int id = 0;
  std::string name;
  int dim = 0;
  Term src, tgt;  // null for 0-cells
};

// A polygraph. Terms inside refer to cell *indices* into `cells`; ids are
// only used for IO.
struct Polygraph {
  std::vector<Cell> cells;
  ClassTag tag = ClassTag::unchecked;

  int size() const { return static_cast<int>(cells.size()); }
  int dim() const;
  const Cell& operator[](int i) const { return cells[i]; }

  // Appends a cell with id = next free id and returns its index.
  int add(int dim, Term src = nullptr, Term tgt = nullptr, std::string name = {});
  int index_of_id(int id) const;
  int index_of_name(const std::string& name) const;
  std::string label(int i) const;
  // Indices sorted by dimension, stable.
  std::vector<int> by_dim() const;
  int count_dim(int d) const;
};

using PolygraphPtr = std::shared_ptr<const Polygraph>;

struct ValidationIssue {
  std::string kind;
  int cell = -1;
  std::string message;
};

// Maps a polygraph along a cell renumbering (new index of old cell i is
// perm[i]); the result lists cells in new order.
Polygraph permute(const Polygraph& p, const std::vector<int>& perm);

// Keeps only the cells with keep[i]; terms must not mention dropped cells.
Polygraph restrict(const Polygraph& p, const std::vector<char>& keep, std::vector<int>* old_to_new = nullptr);

}  // namespace ppx
