#pragma once

#include <stdexcept>
#include <utility>

#include "nwidth/body.hpp"
#include "nwidth/spaces.hpp"

namespace nwidth {

/// An operator restricted to a convex set of inputs: the object every width
/// and recovery computation works on.
struct Instance {
  Operator op;
  ConvexBody body;

  Instance(Operator o, ConvexBody b) : op(std::move(o)), body(std::move(b)) {
    if (body.ambient_dim() != op.source_dim())
      throw std::invalid_argument("Instance: body dimension != operator source dimension");
    if (!op.matrix.allFinite())
      throw std::invalid_argument("Instance: operator matrix has non-finite entries");
    if (op.source_dim() < 1 || op.target_dim() < 1)
      throw std::invalid_argument("Instance: dimensions must be >= 1");
  }

  int source_dim() const { return op.source_dim(); }
  int target_dim() const { return op.target_dim(); }
};

}  // namespace nwidth
