#pragma once

#include "ppx/generators.hpp"

namespace ppx::test {
using namespace ppx::rnd;
}  // namespace ppx::test
