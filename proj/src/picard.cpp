#include "toric/picard.hpp"

#include <algorithm>

namespace toric {

CokernelPresentation::CokernelPresentation(std::size_t r,
                                           const IntMat& relations)
    : r_(r) {
  if (relations.rows() != r) throw error("relation matrix has wrong height");
  SmithResult sr = smith_normal_form(relations);
  const std::size_t lim = std::min(relations.rows(), relations.cols());
  rank_rel_ = 0;
  while (rank_rel_ < lim && sr.S(rank_rel_, rank_rel_) != 0) ++rank_rel_;
  for (std::size_t i = 0; i < rank_rel_; ++i) {
    Int d = sr.S(i, i);
    if (d > 1) {
      torsion_orders_.push_back(d);
      torsion_rows_.push_back(i);
    }
  }
  for (std::size_t i = rank_rel_; i < r_; ++i) free_rows_.push_back(i);
  free_rank_ = free_rows_.size();
  u_ = sr.U;
  u_inv_ = unimodular_inverse(u_);
}

DivisorClass CokernelPresentation::class_of(const IntVec& v) const {
  if (v.size() != r_) throw error("class_of: wrong vector length");
  IntVec w = u_ * v;
  DivisorClass c;
  for (std::size_t k = 0; k < torsion_rows_.size(); ++k) {
    Int m = w[torsion_rows_[k]] % torsion_orders_[k];
    if (m < 0) m += torsion_orders_[k];
    c.torsion.push_back(m);
  }
  for (std::size_t i : free_rows_) c.free.push_back(w[i]);
  return c;
}

IntVec CokernelPresentation::lift_free(const IntVec& free_coords) const {
  if (free_coords.size() != free_rank_)
    throw error("lift_free: wrong coordinate length");
  IntVec w(r_, Int(0));
  for (std::size_t k = 0; k < free_rows_.size(); ++k)
    w[free_rows_[k]] = free_coords[k];
  return u_inv_ * w;
}

PicardData::PicardData(const Fan& f) : fan_(f) {
  const std::size_t r = f.ray_count();
  const std::size_t n = f.lattice_rank();
  std::vector<IntVec> rows = f.rays();
  if (rows.empty() || rank(IntMat::from_rows(rows)) != n)
    throw validation_error(
        "nontrivial global units: rays do not span R^n, Pic is not the "
        "cokernel of the ray pairing");
  // relations: columns are the principal divisors div(x^{e_j}),
  // i.e. the r x n matrix with entries <e_j, n_rho>.
  IntMat rel(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) rel(i, j) = f.ray(i)[j];
  pres_ = CokernelPresentation(r, rel);
}

DivisorClass PicardData::class_map(const IntVec& lambda) const {
  return pres_.class_of(lambda);
}

DivisorClass PicardData::ray_class(std::size_t ray) const {
  IntVec e(ray_count(), Int(0));
  e.at(ray) = 1;
  return pres_.class_of(e);
}

PicardData picard_group(const Fan& f) { return PicardData(f); }

DivisorClass anticanonical_class(const PicardData& p) {
  IntVec ones(p.ray_count(), Int(1));
  return p.class_map(ones);
}

EffectiveCone effective_cone(const PicardData& p) {
  std::vector<IntVec> gens;
  for (std::size_t i = 0; i < p.ray_count(); ++i)
    gens.push_back(p.ray_class(i).free);
  EffectiveCone e;
  e.cone = ConeData::make(p.free_rank(), std::move(gens));
  return e;
}

bool big_test(const EffectiveCone& e, const DivisorClass& l) {
  const std::size_t n = e.cone.ambient_rank;
  if (l.free.size() != n) throw error("big_test: ambient rank mismatch");
  if (e.cone.dim() != n) return false;  // empty interior
  RatVec x = to_rat(l.free);
  if (!cone_contains(e.cone, x)) return false;
  return minimal_face_containing(e.cone, x).codim == 0;
}

std::size_t invariant_picard_rank(const PicardData& p, const GroupAction& a) {
  const std::size_t r = p.ray_count();
  const std::size_t fr = p.free_rank();
  if (fr == 0) return 0;
  // Induced matrix on the free part of Pic for each generator permutation:
  // A_g = class_free o P_g o lift. Well-defined because the action comes
  // from a lattice automorphism (validated in attach_action).
  std::vector<IntVec> stacked;
  for (const auto& g : a.elements()) {
    IntMat ag(fr, fr);
    for (std::size_t c = 0; c < fr; ++c) {
      IntVec e(fr, Int(0));
      e[c] = 1;
      IntVec w = p.presentation().lift_free(e);
      IntVec pw(r, Int(0));
      for (std::size_t i = 0; i < r; ++i) pw[g[i]] = w[i];
      DivisorClass img = p.class_map(pw);
      for (std::size_t i = 0; i < fr; ++i) ag(i, c) = img.free[i];
    }
    for (std::size_t i = 0; i < fr; ++i) {
      IntVec row = ag.row(i);
      row[i] -= 1;  // A_g - I
      stacked.push_back(std::move(row));
    }
  }
  return fr - rank(IntMat::from_rows(stacked));
}

}  // namespace toric
