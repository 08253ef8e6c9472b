#pragma once

#include "toric/matrix.hpp"
#include "toric/numeric.hpp"

#include <optional>

namespace toric {

/// Rational polyhedral cone, given as the nonnegative hull of primitive
/// integer generators. Pointedness is computed, never assumed. An optional
/// full-rank lattice basis reinterprets generator coordinates; it defaults
/// to the standard lattice.
struct ConeData {
  std::size_t ambient_rank = 0;
  std::vector<IntVec> generators;  // primitive, lex-sorted, deduplicated
  std::optional<IntMat> lattice;   // rows form a basis of the lattice
  bool pointed = false;

  static ConeData make(std::size_t ambient_rank, std::vector<IntVec> gens,
                       std::optional<IntMat> lattice = std::nullopt);

  /// Dimension of the linear span of the cone.
  std::size_t dim() const;
  bool is_zero_cone() const { return generators.empty(); }
};

/// Lambda* = {f : f(lambda) >= 0 for all lambda in the cone}, computed by
/// the double-description method with exact pivots. Generators come back
/// primitive and lex-sorted; lineality directions appear as +/- pairs.
ConeData dual_cone(const ConeData& c);

bool cone_contains(const ConeData& c, const RatVec& x);
bool cone_contains(const ConeData& c, const IntVec& x);

/// Relative-interior membership (open face test within the span).
bool cone_contains_rel_interior(const ConeData& c, const RatVec& x);

struct FaceResult {
  ConeData face;
  std::size_t codim = 0;  // dim(span c) - dim(span face)
};

/// The unique face with x in its relative interior. Throws
/// membership_error when x is outside the cone.
FaceResult minimal_face_containing(const ConeData& c, const RatVec& x);

/// Placing (incremental) triangulation of a pointed cone, full-dimensional
/// in its span. Insertion follows the given generator order after lex
/// sorting, so output shapes are reproducible. Each simplicial piece's
/// generators are drawn from c's generators.
std::vector<ConeData> triangulate(const ConeData& c);

/// Same, but with the extreme rays inserted in reverse lex order. Used to
/// obtain a second, generally different, triangulation of the same cone.
std::vector<ConeData> triangulate_reversed(const ConeData& c);

/// Index of the sublattice spanned by the generators of a simplicial cone
/// inside the saturation of its span (|det| in a saturated basis).
Int simplicial_lattice_index(const ConeData& simplex);

}  // namespace toric
