#pragma once

#include "toric/clemens.hpp"
#include "toric/lp.hpp"

namespace toric {

/// inf{t : K_{(X;A)} + t L in Eff}, as an exact rational. L must be big
/// (interior of the effective cone) and the cone pointed; the infimum is
/// attained because the cone is closed polyhedral.
Rat fujita_a(const AdelicPicard& ap, const DivisorClass& l);

/// Codimension of the minimal face of Eff containing K + a L.
std::size_t b_invariant(const AdelicPicard& ap, const DivisorClass& l,
                        const Rat& a);

struct AdjointData {
  Rat a;
  RatVec adjoint_class;                // free coordinates of K + a L
  ConeData minimal_face;
  std::size_t b = 0;
  std::vector<std::size_t> d_adj;      // non-boundary rays in the face
  std::vector<std::size_t> e_rays;     // complement of d_adj
  // per place: face rays in / out of the minimal face
  std::vector<std::vector<std::size_t>> a_adj;
  std::vector<std::vector<std::size_t>> b_rays;
  bool rigid = false;
  std::size_t decomposition_polytope_dim = 0;
  RatVec sample_solution;  // one nonnegative decomposition of K + a L
};

/// Splits the divisor generators into the adjoint part (classes in the
/// minimal face) and the complement, and decides adjoint rigidity by the
/// affine dimension of the polytope of nonnegative decompositions of
/// K + a L over the divisor generators.
AdjointData adjoint_decomposition(const AdelicPicard& ap,
                                  const DivisorClass& l, const Rat& a);

struct GrowthPrediction {
  bool obstructed = false;
  std::optional<IntVec> witness;
  Rat a;
  std::size_t b = 0;
  bool rigid = false;
  std::size_t adelic_rank = 0;
  ArchimedeanConstant c_arch;
  RatVec adjoint_class;
};

/// Composite report for a face: obstruction first, then (a, b, rigidity)
/// for the given polarization. `lambda` is a ray-coefficient vector for L;
/// when absent, the log-anticanonical class is used.
GrowthPrediction predict_growth(const Fan& f,
                                const std::vector<std::size_t>& boundary_rays,
                                const AdelicFaceSpec& spec,
                                const std::optional<IntVec>& lambda = {});

}  // namespace toric
