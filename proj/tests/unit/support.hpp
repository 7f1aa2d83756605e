#pragma once

#include <random>
#include <string>

#include "ppx/polygraph.hpp"
#include "../common/generators.hpp"

namespace ppx::test {

// Small builder so tests can write cells by name.
struct Builder {
  Polygraph p;
  int operator()(const std::string& name) const {
    int i = p.index_of_name(name);
    if (i < 0) throw std::runtime_error("no cell " + name);
    return i;
  }
  Term g(const std::string& name) const { return gen((*this)(name)); }
  int point(const std::string& name) { return p.add(0, nullptr, nullptr, name); }
  int cell(const std::string& name, int dim, Term s, Term t) { return p.add(dim, std::move(s), std::move(t), name); }
  int cell(const std::string& name, const std::string& s, const std::string& t) {
    return p.add(p.cells[(*this)(s)].dim + 1, g(s), g(t), name);
  }
};

inline std::string fixture(const std::string& rel) { return std::string(PPX_FIXTURES) + "/" + rel; }

}  // namespace ppx::test

