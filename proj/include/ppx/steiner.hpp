#pragma once

#include <vector>

#include "ppx/globular.hpp"
#include "ppx/linearization.hpp"
#include "ppx/polygraph.hpp"

namespace ppx {

// Tensor bases are indexed by pairs: x ⊗ y sits at x * |H| + y.
inline int tensor_index(int x, int y, int hsize) { return x * hsize + y; }
LinComb tensor_lin(const LinComb& a, const LinComb& b, int hsize);

// pi_n^e(x ⊗ y) on basis elements, by the defining sum and by the
// alternate (symmetric looking) sum.
LinComb tensor_pi(const GlobularGroup& g, const GlobularGroup& h, int x, int y, int n, Sign e);
LinComb tensor_pi_alternate(const GlobularGroup& g, const GlobularGroup& h, int x, int y, int n, Sign e);

GlobularGroup tensor_globular(const GlobularGroup& g, const GlobularGroup& h);
// Generators of degree n ordered by (i, generator of K_i, generator of L_{n-i}).
ChainComplex tensor_chain(const ChainComplex& k, const ChainComplex& l);
// Position of k_a ⊗ l_b (a in K_i, b in L_j) in tensor_chain(k, l).
int tensor_chain_index(const ChainComplex& k, const ChainComplex& l, int i, int a, int j, int b);

// Z with a single 0-dimensional generator; unit for the tensor product.
GlobularGroup unit_group();

// Basis: 0 is the new 0-dimensional generator, 1 + b is b shifted up.
// Needs an augmentation; the result carries none.
GlobularGroup suspend(const GlobularGroup& g);
// Inverse of suspend on groups with one 0-dimensional generator z: the
// kernel of pi_0^-, based by b - c_b z, augmented by pi_0^+. Basis element
// b (b != z) becomes b - (b > z).
GlobularGroup desuspend(const GlobularGroup& g);

struct JoinGroup {
  GlobularGroup group;
  std::vector<int> left, right;         // copies of G and H
  std::vector<std::vector<int>> pair;   // pair[g][h] = g ⋆ h
};
JoinGroup join_group(const GlobularGroup& g, const GlobularGroup& h);

// Basis: [0, N) the base G, [N, 2N) the cells T g, 2N the apex.
GlobularGroup cone_group(const GlobularGroup& g);

// Term of an arrow of lin's polygraph with δ equal to v, assuming the
// polygraph is loop free on the support of v. Certified by relinearizing;
// throws ExtractionFailed.
Term extract_term(const Linearization& lin, const LinComb& v);

// Cells ordered as tensor_index(x, y, |Y|), named "x⊗y".
Polygraph tensor_polygraph(const Polygraph& x, const Polygraph& y);
// The arrow a ⊗ b of tensor_polygraph(x, y).
Term tensor_arrow(const Polygraph& x, const Polygraph& y, const Polygraph& xy, const Term& a, const Term& b);

// Cells: the cells of X in order, then the apex "*", then T(x) for each
// cell x at index |X| + 1 + x, named "T" + name.
Polygraph cone_polygraph(const Polygraph& x);
inline int cone_apex(const Polygraph& x) { return x.size(); }
inline int cone_t(const Polygraph& x, int cell) { return x.size() + 1 + cell; }

// Orientals through the cone with the apex as vertex 0; cells are named by
// their vertex sets, e.g. "013".
int oriental_bound();
Polygraph oriental(int n);
// D_1^{⊗n}.
Polygraph cube(int n);

}  // namespace ppx
