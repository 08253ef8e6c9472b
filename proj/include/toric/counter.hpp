#pragma once

#include "toric/picard.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace toric {

using i64 = long long;

/// Monomial-max height for a nef class on a complete smooth fan: per
/// maximal cone sigma, exponents e^sigma_rho = lambda_rho + <m_sigma,
/// n_rho> with m_sigma solving <m_sigma, n_rho> = -lambda_rho on sigma.
/// H(x) = max_sigma prod_rho |x_rho|^{e^sigma_rho}.
class HeightSpec {
 public:
  HeightSpec(const Fan& compactified, IntVec lambda);

  const Fan& fan() const { return fan_; }
  const IntVec& lambda() const { return lambda_; }
  /// One exponent vector per maximal cone, indexed like the fan's rays.
  const std::vector<std::vector<i64>>& cone_exponents() const {
    return exponents_;
  }

  /// Archimedean height of a full Cox coordinate tuple. Throws pole_error
  /// style errors for points where every monomial vanishes.
  Int evaluate(const IntVec& cox_point) const;

 private:
  Fan fan_;
  IntVec lambda_;
  std::vector<std::vector<i64>> exponents_;
};

/// Lift a point of U to Cox coordinates of the compactification by setting
/// the boundary coordinates to 1. `u_rays` are the fan indices of U's rays
/// in enumeration order.
IntVec lift_from_u(const Fan& compactified,
                   const std::vector<std::size_t>& u_rays,
                   const IntVec& u_point);

/// prod |x_i|^{lhs_i} <= scale * prod |x_i|^{rhs_i}, exponents over the
/// enumerated coordinates.
struct RegionConstraint {
  std::vector<i64> lhs;
  std::vector<i64> rhs;
  i64 scale = 1;
};

struct Region {
  std::string id = "all";
  std::vector<RegionConstraint> constraints;
};

struct CountRecord {
  std::string model_id;
  std::string region_id;
  i64 t = 0;
  i64 count = 0;
  i64 millis = 0;
};

struct CoxCountOptions {
  std::vector<i64> thresholds;  // strictly increasing height bounds
  Region region;
  bool include_boundary_points = false;  // torus points only by default
  unsigned workers = 1;
  std::string model_id = "cox";
};

/// Count integral points of U in Cox coordinates: integer tuples whose
/// divisibility support at every prime is a cone of U's fan, modulo the
/// sign-unit action of {+-1}^{rk Pic U}, with H <= T per threshold.
/// Requires Pic U torsion-free; torsion routes to enumerate_affine.
std::vector<CountRecord> enumerate_cox(const Fan& compactified,
                                       const std::vector<std::size_t>& u_rays,
                                       const HeightSpec& height,
                                       const CoxCountOptions& opts);

/// An affine counting model: integer solutions of polynomial equations
/// with gcd conditions, counted under a monomial-max height.
struct AffineModel {
  struct Term {
    i64 coef;
    std::vector<i64> exps;  // one exponent per variable
  };
  std::string id = "affine";
  std::vector<std::string> vars;
  std::vector<std::vector<Term>> equations;       // each sums to zero
  std::vector<std::vector<std::size_t>> gcd_one;  // gcd of listed vars is 1
  std::vector<std::vector<i64>> height_monomials; // H = max of these
  std::map<std::string, std::vector<RegionConstraint>> regions;
};

AffineModel load_affine_model(const std::string& json_text);
AffineModel load_affine_model_file(const std::string& path);

struct AffineCountOptions {
  std::vector<i64> thresholds;
  std::string region_id;  // empty = unrestricted
  bool include_nontorus_points = false;
  unsigned workers = 1;
};

std::vector<CountRecord> enumerate_affine(const AffineModel& model,
                                          const AffineCountOptions& opts);

/// Per-point heights of all solutions with H <= t_max, for exact
/// cumulative comparisons.
std::vector<i64> affine_solution_heights(const AffineModel& model, i64 t_max,
                                         const std::string& region_id,
                                         bool include_nontorus = false);

struct FitResult {
  double a_hat = 0;
  double b_hat = 0;
  double c_hat = 0;
  double residual = 0;
  std::size_t checkpoints = 0;
};

/// Least squares on log N = a log T + (b-1) log log T + log c. Requires at
/// least 6 checkpoints spanning 3 decades with positive counts.
FitResult fit_asymptotics(const std::vector<CountRecord>& records);

/// Same regression with the power of T pinned; used when comparing against
/// a predicted exponent, where the free fit's a-b correlation would
/// swallow the log factor.
FitResult fit_asymptotics_given_a(const std::vector<CountRecord>& records,
                                  double a);

void write_count_csv(std::ostream& os, const std::vector<CountRecord>& recs);
std::vector<CountRecord> read_count_csv(std::istream& is);

/// Default checkpoint schedule 10^3 * 2^k capped at t_max.
std::vector<i64> default_schedule(i64 t_max);

}  // namespace toric
