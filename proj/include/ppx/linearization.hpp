#pragma once

#include <array>
#include <vector>

#include "ppx/globular.hpp"
#include "ppx/lincomb.hpp"
#include "ppx/morphism.hpp"
#include "ppx/polygraph.hpp"

namespace ppx {

// The free strict ω-group ℤX on a polygraph with its δ counting function.
// Works for any polygraph, positive or not.
class Linearization {
 public:
  explicit Linearization(Polygraph p);

  const Polygraph& polygraph() const { return p_; }
  int size() const { return p_.size(); }

  // δ of an arrow. With check, every composite is typechecked on the
  // linear side and IllTyped is thrown on failure.
  LinComb delta(const Term& t, bool check = false) const;
  // δ(π_k^s x), or δ_x when k >= dim x.
  LinComb pi_cell(int x, int k, Sign s) const;
  LinComb pi(const LinComb& v, int k, Sign s) const;

  LinComb sigma() const;

  // m_x = δ_x - δ(src x) - δ(tgt x), written in the δ basis.
  LinComb m_vector(int x) const;
  LinComb to_m(const LinComb& v) const;
  LinComb to_delta(const LinComb& v) const;

  int grade(const LinComb& v) const;
  const GlobularGroup& group() const { return group_; }

 private:
  Polygraph p_;
  std::vector<std::array<std::vector<LinComb>, 2>> pic_;  // pic_[x][sign][k], k < dim x
  GlobularGroup group_;
};

enum class Positivity { makkai, alternate };

bool positive(const Linearization& lin, const LinComb& v, Positivity mode);

// Columns of the linear map ℤX -> ℤY induced by a morphism.
std::vector<LinComb> linear_images(const Morphism& f, const Linearization& codomain);
LinComb push(const std::vector<LinComb>& images, const LinComb& v);

bool preserves_sigma(const Morphism& f);
bool preserves_alternate_positivity(const Morphism& f);

// δ-support of t lies in the member cells.
bool in_subpolygraph(const Linearization& lin, const Term& t, const std::vector<char>& member);

// Cells of the codomain met by f(δ_v) for members v. Requires f to preserve σ
// and alternate positivity; check = false skips that test.
std::vector<char> image_subpolygraph(const Morphism& f, const std::vector<char>& member, bool check = true);

}  // namespace ppx
