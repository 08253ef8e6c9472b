#pragma once

#include "toric/picard.hpp"

namespace toric {

/// Face of the Clemens complex of the toric boundary: the ray set of a
/// fan cone supported on boundary rays. dim = |rays| - 1, so the empty
/// face has dimension -1.
struct ClemensFace {
  std::vector<std::size_t> rays;  // sorted
  long dim() const { return static_cast<long>(rays.size()) - 1; }
};

/// All faces (including the empty one), ordered by ray-set inclusion
/// compatible order (size, then lex).
std::vector<ClemensFace> clemens_complex(
    const Fan& f, const std::vector<std::size_t>& boundary_rays);

/// One Clemens face per archimedean place.
struct AdelicFaceSpec {
  struct Entry {
    std::string place;
    bool complex_place = false;
    ClemensFace face;
  };
  std::vector<Entry> entries;

  /// dim A = sum_v |A_v| - 1 in the split case; -1 for the empty spec.
  long dim() const {
    long s = -1;
    for (const auto& e : entries) s += static_cast<long>(e.face.rays.size());
    return s;
  }
};

/// Pic(X ; A) presented as a cokernel: generators are the ray classes of
/// Pic X followed by one generator per (place, face ray); relations divide
/// out the principal divisors and identify each boundary divisor with the
/// sum of its per-place markers.
class AdelicPicard {
 public:
  AdelicPicard(const Fan& f, std::vector<std::size_t> boundary_rays,
               AdelicFaceSpec spec);

  std::size_t free_rank() const { return pres_.free_rank(); }
  const IntVec& torsion_orders() const { return pres_.torsion_orders(); }

  /// Image of a divisor class of X given by ray coefficients.
  DivisorClass from_ray_vector(const IntVec& lambda) const;
  /// Class of the marker generator for face ray `ray` at place `v`.
  DivisorClass place_marker(std::size_t v, std::size_t ray) const;

  /// K_{(X ; A)}, the image of K_X + D.
  DivisorClass log_canonical() const;

  /// Pseudo-effective cone in the free part, generated by the images of
  /// Eff_X and of the nonnegative place markers.
  const EffectiveCone& effective() const { return eff_; }

  const Fan& fan() const { return fan_; }
  const std::vector<std::size_t>& boundary() const { return boundary_; }
  const AdelicFaceSpec& spec() const { return spec_; }
  const CokernelPresentation& presentation() const { return pres_; }

  /// Generators of the effective cone with labels, for decompositions:
  /// first the non-boundary ray divisors (E_i candidates), then one entry
  /// per place marker.
  struct Generator {
    DivisorClass cls;
    bool is_place_marker = false;
    std::size_t place = 0;  // valid when is_place_marker
    std::size_t ray = 0;
  };
  const std::vector<Generator>& divisor_generators() const { return gens_; }

 private:
  Fan fan_;
  std::vector<std::size_t> boundary_;
  AdelicFaceSpec spec_;
  CokernelPresentation pres_;
  EffectiveCone eff_;
  std::vector<Generator> gens_;
  std::size_t total_rank_ = 0;
  std::vector<std::size_t> marker_offset_;  // per place
};

AdelicPicard adelic_picard(const Fan& f,
                           const std::vector<std::size_t>& boundary_rays,
                           const AdelicFaceSpec& spec);

struct ObstructionReport {
  bool obstructed = false;
  std::optional<IntVec> witness;  // nonzero character m when obstructed
};

/// Existence of a nonzero character m with <m, n_rho> >= 0 on the rays of
/// U and on every ray of every chosen face.
ObstructionReport analytic_obstruction(
    const Fan& f, const std::vector<std::size_t>& boundary_rays,
    const AdelicFaceSpec& spec);

/// c_A = prod_v 2^{#real face rays} (2*pi)^{#complex face rays}, kept
/// symbolic as (power of 2, power of pi, rational factor).
struct ArchimedeanConstant {
  long two_exp = 0;
  long pi_exp = 0;
  Rat factor = 1;
  double value() const;
};

ArchimedeanConstant archimedean_constant(const AdelicFaceSpec& spec);

/// Validate a face spec against a fan and boundary set.
void validate_face_spec(const Fan& f,
                        const std::vector<std::size_t>& boundary_rays,
                        const AdelicFaceSpec& spec);

}  // namespace toric
