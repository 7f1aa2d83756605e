#pragma once

#include <string>
#include <vector>

#include "ppx/freecat.hpp"
#include "ppx/json_io.hpp"
#include "ppx/lincomb.hpp"
#include "ppx/linearization.hpp"
#include "ppx/morphism.hpp"
#include "ppx/shape.hpp"

namespace ppx {

// A polygraph with a distinguished arrow. Shapes are the canonical
// representatives; this is the concrete form used for IO and for results of
// constructions.
struct Polyplex {
  Polygraph underlying;
  Term universal;
};

Polyplex polyplex_of(ShapeId s);
Polygraph shape_polygraph(ShapeId s);

// A polygraph object with an extra "universal" term.
json polyplex_to_json(const Polyplex& p);
Polyplex polyplex_from_json(const json& j);
Polyplex load_polyplex(const std::string& path);

// The morphism D_n -> P* picking the n-arrow t.
Morphism arrow_morphism(PolygraphPtr p, const Term& t);

// Classification of an arrow of a positive polygraph.
Arrow classify(const Polygraph& p, const Term& t);
// Exact test: the classifying map of t is an isomorphism onto p.
bool is_polyplex_exact(const Polygraph& p, const Term& t);
// Shape of a polyplex; throws PreconditionViolated when (p, t) is not one.
ShapeId shape_of_polyplex(const Polyplex& p);

// (-1)^n δ(t) + Σ_{k<n} (-1)^k (δ(π_k^- t) + δ(π_k^+ t)), the image of σ_{D_n}.
LinComb sigma_image(const Linearization& lin, const Term& t);
// sigma_image == σ_p, without any hypothesis on p.
bool sigma_test(const Polygraph& p, const Term& t);
// The σ criterion; only sound on regular polygraphs, UnsupportedClass otherwise.
bool is_polyplex(const Polygraph& p, const Term& t);

// The plex of a cell of a shape, as an arrow into that shape.
Arrow subplex(ShapeId s, int cell);

// Sphericity by boundary intersections.
bool spherical_by_intersection(ShapeId s);
// Sphericity by disjointness of the δ-images of the generators of D_n.
bool spherical_by_disjoint_support(ShapeId s);
// Both methods on regular shapes (MethodDisagreement if they differ),
// intersections otherwise.
bool has_spherical_boundary(ShapeId s);
bool is_regular_shape(ShapeId s);

bool is_regular(const Polygraph& p);
bool is_regular_arrow(const Polygraph& p, const Term& t);
bool is_regular_morphism(const Morphism& f);
// Every plex map of a cell is injective.
bool plexes_mono(const Polygraph& p);

struct InnerOwner {
  bool source = false;
  int owner = -1;  // top cell whose target has x as an inner cell
};
// Both branches collected, for checking exclusivity.
struct InnerScan {
  bool in_source = false;
  std::vector<int> owners;
};
InnerScan inner_scan(ShapeId s, int x);
InnerOwner inner_owner(ShapeId s, int x);

// Cells of the arrow a (into shape s) not in its (dim a - 1)-boundaries.
std::vector<int> inner_cells(const Arrow& a);

Polyplex collapse_single_top(ShapeId s);

struct Factorization {
  PolygraphPtr middle;
  Morphism generic;      // X* -> M*
  Morphism polygraphic;  // M -> Y
};
Factorization generic_factorization(const Morphism& f);

enum class Verdict { yes, no, unknown };
struct GenericAnswer {
  Verdict answer = Verdict::unknown;
  std::string branch;
};
GenericAnswer is_generic(const Morphism& f, bool allow_fallback = true);

struct Lift {
  Term u, w;
};
// Splits v along f so that f(u') = u and f(w') = w. Polygraphic f reads the
// split off the classified composite; other f go through lift_candidates.
Lift syntactic_lift(const Morphism& f, const Term& v, const Term& u, const Term& w, int k);
// Exhaustive: every split u' #_k w' of v with f(u') = u and f(w') = w, found
// among the injective sub-arrows of the polyplex classifying v.
std::vector<Lift> lift_candidates(const Morphism& f, const Term& v, const Term& u, const Term& w, int k);

enum class EnumKind { plex, polyplex, spherical };
struct EnumOptions {
  int dim = 3;
  int max_cells = 12;
  EnumKind kind = EnumKind::polyplex;
  bool regular_only = false;
};
// Bounds from PPX_MAX_DIM / PPX_MAX_CELLS, defaults 3 and 12.
int enumeration_dim_bound();
int enumeration_cell_bound();
// Every polyplex shape up to the bounds, each once, sorted by
// (dim, size, stable hash).
std::vector<ShapeId> enumerate(const EnumOptions& opt);

}  // namespace ppx
