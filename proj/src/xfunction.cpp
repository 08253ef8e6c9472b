#include "toric/xfunction.hpp"

namespace toric {

Rat RationalConeFunction::evaluate(const RatVec& s) const {
  if (s.size() != ambient_rank) throw error("X-function: wrong point size");
  Rat total = 0;
  for (const Term& t : terms) {
    Rat denom = 1;
    for (const IntVec& w : t.linear_forms) {
      Rat v = dot(w, s);
      if (v == 0)
        throw pole_error("X-function pole: linear form vanishes at s", w);
      denom *= v;
    }
    total += Rat(t.lattice_index) / denom;
  }
  return total / Rat(torsion_order);
}

RationalConeFunction make_x_function(const ConeData& c, Int torsion_order,
                                     bool reversed) {
  if (c.lattice)
    throw error("X-functions are implemented for the standard lattice");
  if (!c.pointed)
    throw not_pointed_error("X-function requires a pointed cone");
  if (c.dim() != c.ambient_rank)
    throw error("X-function requires a full-dimensional cone");
  ConeData dual = dual_cone(c);
  std::vector<ConeData> tri =
      reversed ? triangulate_reversed(dual) : triangulate(dual);
  RationalConeFunction f;
  f.ambient_rank = c.ambient_rank;
  f.torsion_order = torsion_order;
  for (const ConeData& piece : tri) {
    RationalConeFunction::Term t;
    t.lattice_index = simplicial_lattice_index(piece);
    t.linear_forms = piece.generators;
    f.terms.push_back(std::move(t));
  }
  return f;
}

Rat cone_x_function(const ConeData& c, const RatVec& s, Int torsion_order) {
  return make_x_function(c, torsion_order).evaluate(s);
}

std::size_t x_pole_order(const ConeData& c, const RatVec& ell,
                         const RatVec& a_dir) {
  if (!cone_contains(c, ell))
    throw membership_error("x_pole_order: ell is not in the cone");
  if (!cone_contains_rel_interior(c, a_dir) || c.dim() != c.ambient_rank)
    throw error("x_pole_order: direction must be interior");
  return minimal_face_containing(c, ell).codim;
}

}  // namespace toric
