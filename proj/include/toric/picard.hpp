#pragma once

#include "toric/fan.hpp"

namespace toric {

/// Element of a finitely generated abelian group presented in Smith
/// coordinates: a free part and torsion coordinates reduced mod their
/// orders.
struct DivisorClass {
  IntVec free;
  IntVec torsion;  // torsion[i] lives mod torsion_orders[i] of the parent

  bool operator==(const DivisorClass& o) const {
    return free == o.free && torsion == o.torsion;
  }
  bool is_zero() const { return is_zero_vec(free) && is_zero_vec(torsion); }

 private:
  static bool is_zero_vec(const IntVec& v) {
    for (const Int& x : v)
      if (x != 0) return false;
    return true;
  }
};

/// Cokernel presentation of a finitely generated abelian group Z^r / im(M),
/// with coordinates fixed by the Smith normal form of the presentation
/// matrix. Used for Pic X and Pic(X ; A).
class CokernelPresentation {
 public:
  CokernelPresentation() = default;
  /// columns of `relations` (an r x k matrix) generate the subgroup divided
  /// out of Z^r.
  CokernelPresentation(std::size_t r, const IntMat& relations);

  std::size_t ambient_rank() const { return r_; }
  std::size_t free_rank() const { return free_rank_; }
  const IntVec& torsion_orders() const { return torsion_orders_; }

  DivisorClass class_of(const IntVec& v) const;
  /// A preimage in Z^r of a class given by free coordinates.
  IntVec lift_free(const IntVec& free_coords) const;

 private:
  std::size_t r_ = 0;
  std::size_t rank_rel_ = 0;
  std::size_t free_rank_ = 0;
  IntVec torsion_orders_;
  IntMat u_;      // SNF row transform of the relation matrix
  IntMat u_inv_;
  std::vector<std::size_t> torsion_rows_;
  std::vector<std::size_t> free_rows_;
};

struct EffectiveCone {
  ConeData cone;  // in the free part of Pic tensored with R
};

/// The Picard group of the toric variety of f, as the cokernel of the
/// ray-pairing map M -> Z[Sigma_min].
class PicardData {
 public:
  explicit PicardData(const Fan& f);

  const Fan& fan() const { return fan_; }
  std::size_t ray_count() const { return fan_.ray_count(); }
  std::size_t free_rank() const { return pres_.free_rank(); }
  const IntVec& torsion_orders() const { return pres_.torsion_orders(); }

  /// Class of a ray-coefficient vector lambda in Z[Sigma_min].
  DivisorClass class_map(const IntVec& lambda) const;
  DivisorClass ray_class(std::size_t ray) const;

  const CokernelPresentation& presentation() const { return pres_; }

 private:
  Fan fan_;
  CokernelPresentation pres_;
};

PicardData picard_group(const Fan& f);

DivisorClass anticanonical_class(const PicardData& p);

/// Cone in Pic_R generated by the classes of all rays.
EffectiveCone effective_cone(const PicardData& p);

/// True iff the free part of L lies in the interior of e.
bool big_test(const EffectiveCone& e, const DivisorClass& l);

/// Rank of the fixed part of Pic (free part) under the induced action.
std::size_t invariant_picard_rank(const PicardData& p, const GroupAction& a);

}  // namespace toric
