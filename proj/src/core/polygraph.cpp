#include "ppx/polygraph.hpp"

#include <algorithm>

#include "ppx/errors.hpp"

namespace ppx {

int Polygraph::dim() const {
  int d = -1;
  for (const auto& c : cells) d = std::max(d, c.dim);
  return d;
}

int Polygraph::add(int dim, Term src, Term tgt, std::string name) {
  int id = 0;
  for (const auto& c : cells) id = std::max(id, c.id + 1);
  cells.push_back(Cell{id, std::move(name), dim, std::move(src), std::move(tgt)});
  return size() - 1;
}

int Polygraph::index_of_id(int id) const {
  for (int i = 0; i < size(); ++i)
    if (cells[i].id == id) return i;
  return -1;
}

int Polygraph::index_of_name(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (cells[i].name == name) return i;
  return -1;
}

std::string Polygraph::label(int i) const {
  const auto& c = cells.at(i);
  return c.name.empty() ? std::to_string(c.id) : c.name;
}

std::vector<int> Polygraph::by_dim() const {
  std::vector<int> order(cells.size());
  for (int i = 0; i < size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return cells[a].dim < cells[b].dim; });
  return order;
}

int Polygraph::count_dim(int d) const {
  return static_cast<int>(std::count_if(cells.begin(), cells.end(), [&](const Cell& c) { return c.dim == d; }));
}

Polygraph permute(const Polygraph& p, const std::vector<int>& perm) {
  Polygraph out;
  out.tag = p.tag;
  out.cells.resize(p.cells.size());
  for (int i = 0; i < p.size(); ++i) {
    Cell c = p.cells[i];
    if (c.src) c.src = rename(c.src, perm);
    if (c.tgt) c.tgt = rename(c.tgt, perm);
    out.cells[perm[i]] = std::move(c);
  }
  return out;
}

Polygraph restrict(const Polygraph& p, const std::vector<char>& keep, std::vector<int>* old_to_new) {
  std::vector<int> map(p.size(), -1);
  int n = 0;
  for (int i = 0; i < p.size(); ++i)
    if (keep[i]) map[i] = n++;
  Polygraph out;
  out.tag = p.tag;
  auto fix = [&](const Term& t) -> Term {
    if (!t) return t;
    return substitute(t, [&](int c) {
      if (map[c] < 0) throw ClosureViolation("restriction drops cell " + p.label(c) + " still in use");
      return gen(map[c]);
    });
  };
  for (int i = 0; i < p.size(); ++i) {
    if (!keep[i]) continue;
    Cell c = p.cells[i];
    c.src = fix(c.src);
    c.tgt = fix(c.tgt);
    out.cells.push_back(std::move(c));
  }
  if (old_to_new) *old_to_new = map;
  return out;
}

}  // namespace ppx
