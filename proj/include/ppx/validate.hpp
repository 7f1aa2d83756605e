#pragma once

#include <vector>

#include "ppx/polygraph.hpp"

namespace ppx {

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

// Lists every problem found; never throws. Positive cells are typechecked
// with the arrow engine, the rest through the linearization.
ValidationReport validate(const Polygraph& p);

}  // namespace ppx
