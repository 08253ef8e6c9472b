#pragma once

#include "toric/fan.hpp"

#include <optional>

namespace toric {

/// Query for the local density of a fan at a prime power q: one rational
/// shift z per ray orbit (per ray in the split case). Convergence needs
/// every z > -2.
struct LocalDensityQuery {
  const Fan* fan = nullptr;
  const GroupAction* action = nullptr;  // split case when null
  Int q;
  RatVec z;  // indexed by ray orbit (by ray when split)
};

/// Exact when every orbit exponent f*(2+z) is an integer; otherwise only
/// the high-precision value is meaningful.
struct DensityValue {
  bool exact = false;
  Rat rational;  // valid when exact
  Real approx;

  double to_double() const;
};

/// Sum over the setwise-fixed cones of the fan of the product over ray
/// orbits in the cone of 1 / (q^{f (2 + z)} - 1).
DensityValue denef_density(const LocalDensityQuery& qry);

struct EulerProductResult {
  double raw = 1.0;
  double normalized = 1.0;
  std::size_t primes_used = 0;
};

/// raw = prod_{p <= bound} density(p); normalized additionally divides out
/// the local L-factor, multiplying by prod_rho (1 - p^{-(2+z_rho)}) per
/// prime. Densities are evaluated exactly per prime whenever the exponents
/// are integral, with the float conversion at the end.
EulerProductResult euler_product(const Fan& f, const RatVec& z,
                                 unsigned long prime_bound,
                                 const GroupAction* action = nullptr);

std::vector<unsigned long> primes_up_to(unsigned long bound);

}  // namespace toric
