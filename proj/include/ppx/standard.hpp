#pragma once

#include "ppx/polygraph.hpp"

namespace ppx {

// D_n: cells "k-" and "k+" for k < n and the top cell "n".
Polygraph globe(int n);
// The boundary of D_n, i.e. D_n without its top cell.
Polygraph boundary_globe(int n);

}  // namespace ppx
