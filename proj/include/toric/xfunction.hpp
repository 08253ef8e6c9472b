#pragma once

#include "toric/cone.hpp"

namespace toric {

/// The X-function of a pointed full-dimensional cone, stored as a sum of
/// simplicial terms over a triangulation of the dual cone:
///   X(s) = (1/tors) * sum_j index_j / prod_i <s, w_{j,i}>.
/// The value is triangulation-independent as a rational function.
struct RationalConeFunction {
  struct Term {
    Int lattice_index;
    std::vector<IntVec> linear_forms;  // dual-cone generators of the piece
  };
  std::size_t ambient_rank = 0;
  std::vector<Term> terms;
  Int torsion_order = 1;  // #A_tors normalization

  Rat evaluate(const RatVec& s) const;
};

/// Build the X-function of the cone; `torsion_order` is the #A_tors of the
/// ambient group (1 for a plain lattice). The optional reversed flag picks
/// the reversed-insertion triangulation of the dual cone.
RationalConeFunction make_x_function(const ConeData& c, Int torsion_order = 1,
                                     bool reversed = false);

/// Exact value of X_Lambda at a rational point; throws pole_error carrying
/// the vanishing linear form when s lies on a pole hyperplane of the
/// representation.
Rat cone_x_function(const ConeData& c, const RatVec& s, Int torsion_order = 1);

/// Order of the pole of s -> X(ell + s * a_dir) at s = 0, which equals the
/// codimension of the minimal face of the cone containing ell. Requires
/// ell in the cone and a_dir in its interior.
std::size_t x_pole_order(const ConeData& c, const RatVec& ell,
                         const RatVec& a_dir);

}  // namespace toric
