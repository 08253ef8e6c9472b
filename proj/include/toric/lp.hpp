#pragma once

#include "toric/numeric.hpp"

namespace toric {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value = 0;
  RatVec solution;  // empty unless Optimal
};

/// maximize c.x subject to A x = b, x >= 0, over exact rationals.
/// Two-phase simplex with Bland's rule; terminates on all inputs.
LpResult lp_maximize(const std::vector<RatVec>& a, const RatVec& b,
                     const RatVec& c);

/// Convenience: is {x >= 0 : A x = b} nonempty?
bool lp_feasible(const std::vector<RatVec>& a, const RatVec& b);

}  // namespace toric
