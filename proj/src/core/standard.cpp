#include "ppx/standard.hpp"

#include <string>

#include "ppx/errors.hpp"

namespace ppx {

static Polygraph globe_cells(int n, bool with_top) {
  if (n < 0) throw PreconditionViolated("negative globe dimension");
  Polygraph p;
  p.tag = ClassTag::regular;
  int prev_minus = -1, prev_plus = -1;
  for (int k = 0; k < n; ++k) {
    const std::string d = std::to_string(k);
    Term s = k == 0 ? nullptr : gen(prev_minus);
    Term t = k == 0 ? nullptr : gen(prev_plus);
    const int m = p.add(k, s, t, d + "-");
    const int q = p.add(k, s, t, d + "+");
    prev_minus = m;
    prev_plus = q;
  }
  if (with_top) {
    if (n == 0)
      p.add(0, nullptr, nullptr, "0");
    else
      p.add(n, gen(prev_minus), gen(prev_plus), std::to_string(n));
  }
  return p;
}

Polygraph globe(int n) { return globe_cells(n, true); }
Polygraph boundary_globe(int n) { return globe_cells(n, false); }

}  // namespace ppx
