#pragma once

#include <vector>

#include "ucycle/cycles.hpp"

namespace fixtures {

// The six-window AG(2,2) cycle 0 -> [l1] -> u1+u2 -> [l3] -> u1 -> [l2],
// with u1 = (1,0), u2 = (0,1), l1 = <u1>, l2 = <u2>, l3 = <u1+u2>.
inline ucycle::Cycle ag22_cycle() {
  using ucycle::ProjVertex;
  return {2,
          {ProjVertex::affine({0, 0}), ProjVertex::infinity({1, 0}), ProjVertex::affine({1, 1}),
           ProjVertex::infinity({1, 1}), ProjVertex::affine({1, 0}), ProjVertex::infinity({0, 1})}};
}

}  // namespace fixtures
