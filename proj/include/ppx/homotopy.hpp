#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ppx/globular.hpp"
#include "ppx/json_io.hpp"
#include "ppx/morphism.hpp"
#include "ppx/polygraph.hpp"

namespace ppx {

// A sub-polygraph u of `target`, read as the inclusion u ↪ target.
struct Inclusion {
  Polygraph target;
  std::vector<char> member;

  std::vector<int> missing() const;
};

// Unique cell of maximal dimension; PreconditionViolated otherwise.
int plex_top(const Polygraph& c);

// ∂c ↪ c.
Inclusion generating_cofibration(const Polygraph& c);

struct Horn {
  Inclusion inclusion;  // Λ^a c ↪ c
  int marked = -1;
  int top = -1;
};
// a must be a cell of dimension dim(c) - 1 (NotACell) occurring exactly once
// in exactly one boundary of the top cell (HypothesisFailed).
Horn horn(const Polygraph& c, int a);
// Every horn of c.
std::vector<Horn> horns(const Polygraph& c);

// Coefficients of x in δ(src θ) and δ(tgt θ).
std::array<Int, 2> occurrences(const Polygraph& p, int theta, int x);

struct AnodyneStep {
  int x = -1, theta = -1;
};
// u ↪ v adds exactly x and θ with dim θ = dim x + 1, x occurring exactly once
// in exactly one boundary of θ and nowhere else outside u.
std::optional<AnodyneStep> anodyne_step(const Inclusion& i);
bool recognize_anodyne_pushout(const Inclusion& i);
// A sequence of recognized steps building the target from the member cells,
// if there is one.
std::optional<std::vector<AnodyneStep>> decompose_anodyne(const Inclusion& i);

// i: A ↪ X, j: B ↪ Y gives the corner map into X ⊗ Y: cells x ⊗ y with x in A
// or y in B. Cells of the target follow tensor_polygraph.
Inclusion pushout_product(const Inclusion& i, const Inclusion& j);

// Cells *, t, w: t → *, p: * → *, θ: w #0 p → w.
Polygraph cylinder_Dprime();
// * ↪ D'*.
Inclusion dprime_inclusion();

struct RelativeCylinder {
  Polygraph w;
  int c1 = -1, c2 = -1, theta = -1;
  // Cell map c -> w sending the top cell to c1.
  std::vector<int> from_c;
  // c ↪ w through from_c.
  Inclusion inclusion() const;
};
// ∂c, two parallel copies c1, c2 of the top cell, θ: c1 → c2.
RelativeCylinder cylinder_relative(const Polygraph& c);

// ---------------------------------------------------------------------------
// Semi-simplicial sets.

struct SemiSimplicialSet {
  // face[n][s][i] = d_i of the s-th n-simplex, an index into level n-1.
  std::vector<std::vector<std::vector<int>>> face;
  std::vector<std::vector<std::string>> name;  // optional, same shape as face

  int dim() const { return static_cast<int>(face.size()) - 1; }
  int count(int n) const { return n <= dim() && n >= 0 ? static_cast<int>(face[n].size()) : 0; }
  int add(int n, std::vector<int> faces, std::string label = {});
};

// Throws PreconditionViolated when a face index or an identity fails.
void check_semi_simplicial(const SemiSimplicialSet& s);

// {"simplices": [[ids] per dim], "faces": [[[face ids] per simplex] per dim]}
json semi_simplicial_to_json(const SemiSimplicialSet& s);
SemiSimplicialSet semi_simplicial_from_json(const json& j);

// Δ^n and ∂Δ^n; simplices named by vertex sets.
SemiSimplicialSet standard_simplex(int n);
SemiSimplicialSet boundary_simplex(int n);
SemiSimplicialSet disjoint_union(const SemiSimplicialSet& a, const SemiSimplicialSet& b);
// Face of an n-simplex along an injection [k] -> [n] given by its image.
int face_along(const SemiSimplicialSet& s, int n, int simplex, const std::vector<int>& image);

// A simplex of R(X): a cell x and a chain of cells of the shape of x of
// strictly increasing dimension ending at its top cell.
struct RealizationSimplex {
  int cell = -1;
  std::vector<int> chain;
  friend bool operator<(const RealizationSimplex& a, const RealizationSimplex& b) {
    return a.cell != b.cell ? a.cell < b.cell : a.chain < b.chain;
  }
  friend bool operator==(const RealizationSimplex&, const RealizationSimplex&) = default;
};

struct Realization {
  SemiSimplicialSet set;
  std::vector<std::vector<RealizationSimplex>> simplices;  // same indexing as set.face
  int find(int n, const RealizationSimplex& s) const;
};

// Throws UnsupportedClass unless X is regular.
Realization realize(const Polygraph& x);
// Levelwise simplex maps of a polygraphic mono, as indices.
std::vector<std::vector<int>> realize_map(const Morphism& f, const Realization& rx, const Realization& ry);

// Regular polygraph whose n-cells are the n-simplices, glued from orientals.
Polygraph orientals_embed(const SemiSimplicialSet& s);

struct HomologyGroup {
  Int rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

int homology_column_bound();  // PPX_MAX_SNF_COLUMNS, default 2000
// Nonzero invariant factors of m, ascending in divisibility.
std::vector<Int> smith_diagonal(Matrix m);
// H_0 .. H_maxdeg with ∂ = Σ (-1)^i d_i.
std::vector<HomologyGroup> homology(const SemiSimplicialSet& s, int maxdeg);
// Nonempty with the homology of a point up to the top dimension.
bool reduced_acyclic(const SemiSimplicialSet& s);

}  // namespace ppx
