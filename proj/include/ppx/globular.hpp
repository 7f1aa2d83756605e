#pragma once

#include <array>
#include <string>
#include <vector>

#include "ppx/lincomb.hpp"
#include "ppx/term.hpp"

namespace ppx {

using Matrix = std::vector<std::vector<Int>>;  // row major

// Free abelian group with a graded basis and globular projections
// pi_k^e. Basis element b of grade n is fixed by every pi_k with k >= n, so
// only pi[k] for k < top() is stored.
struct GlobularGroup {
  std::vector<int> grade;
  std::vector<std::string> name;
  std::vector<std::array<std::vector<LinComb>, 2>> pi;  // pi[k][sign][b]
  std::vector<Int> augmentation;                         // empty when absent

  int size() const { return static_cast<int>(grade.size()); }
  int top() const;
  LinComb basis(int b) const { return LinComb::unit(b); }
  LinComb apply(int k, Sign s, const LinComb& v) const;
  LinComb apply_basis(int k, Sign s, int b) const;
  Int augment(const LinComb& v) const;
  // Largest grade in the support, -1 for zero.
  int grade_of(const LinComb& v) const;
  // Coordinates of v on the basis elements of grade n.
  LinComb part(const LinComb& v, int n) const;
  // Basis elements of grade n, ascending.
  std::vector<int> of_grade(int n) const;
};

// Builds an empty group with the given grades and pi tables sized.
GlobularGroup make_group(const std::vector<int>& grade);

// Throws GlobularRelationViolated when a relation or the grading fails.
void check_globular(const GlobularGroup& g);

struct ChainComplex {
  std::vector<int> rank;        // rank[n]
  std::vector<Matrix> d;        // d[n]: rank[n-1] x rank[n], d[0] empty
  std::vector<Int> augmentation;  // on degree 0, empty when absent

  int top() const { return static_cast<int>(rank.size()) - 1; }
  std::vector<Int> boundary(int n, const std::vector<Int>& v) const;
};

void check_chain(const ChainComplex& k);

// basis[n][i] is the group basis element that is the i-th generator of K_n.
ChainComplex globular_to_chain(const GlobularGroup& g, std::vector<std::vector<int>>* basis = nullptr);
GlobularGroup chain_to_globular(const ChainComplex& k);

// Column b is the image of the b-th basis element of chain_to_globular(globular_to_chain(g))
// under b -> (1 - pi_{n-1}^-) b, written in the basis of g. Throws when the
// map is not an isomorphism commuting with the projections.
Matrix canonical_iso(const GlobularGroup& g);

// (k_n^-, k_n^+) for n = 0..top.
struct DoubleSequence {
  std::vector<std::array<std::vector<Int>, 2>> k;
  friend bool operator==(const DoubleSequence&, const DoubleSequence&) = default;
};

DoubleSequence to_double_sequence(const GlobularGroup& g, const LinComb& v);
LinComb from_double_sequence(const GlobularGroup& g, const DoubleSequence& ds);
DoubleSequence pi_double_sequence(const DoubleSequence& ds, int n, Sign s);

Int det(Matrix m);
bool unimodular(const Matrix& m);

}  // namespace ppx
