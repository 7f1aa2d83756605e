#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace ppx {

enum class Sign : int { minus = 0, plus = 1 };

inline int sidx(Sign s) { return static_cast<int>(s); }
inline Sign flip(Sign s) { return s == Sign::minus ? Sign::plus : Sign::minus; }
inline const char* sign_str(Sign s) { return s == Sign::minus ? "-" : "+"; }
inline constexpr Sign both_signs[2] = {Sign::minus, Sign::plus};

struct TermNode;
// Immutable syntax tree of a composite. Generators are cell indices of the
// polygraph the term lives in.
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  enum class Kind { gen, comp, bnd };
  Kind kind = Kind::gen;
  int cell = -1;    // gen
  Term left, right; // comp uses both, bnd uses left
  int k = 0;        // comp and bnd
  Sign sign = Sign::minus;
};

Term gen(int cell);
Term comp(Term l, Term r, int k);
Term bnd(Term t, int k, Sign s);

// Gen(i) -> Gen(map[i]).
Term rename(const Term& t, const std::vector<int>& map);
Term substitute(const Term& t, const std::function<Term(int)>& f);

bool same_syntax(const Term& a, const Term& b);
bool has_bnd(const Term& t);
// Number of Gen leaves equal to cell.
int count_gen(const Term& t, int cell);
void collect_gens(const Term& t, std::vector<int>& out);

std::string to_string(const Term& t, const std::function<std::string(int)>& name);
std::string to_string(const Term& t);

}  // namespace ppx
