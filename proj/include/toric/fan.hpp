#pragma once

#include "toric/cone.hpp"

#include <map>
#include <set>
#include <string>

namespace toric {

/// One archimedean place together with the rays of the chosen
/// Clemens-complex face at that place.
struct PlaceFace {
  std::string name;
  bool complex_place = false;       // real when false
  std::vector<std::size_t> rays;    // sorted ray indices
};

/// A fan of simplicial cones, stored as sorted ray-index sets with the full
/// face poset materialized at load. Immutable after construction.
class Fan {
 public:
  Fan(std::size_t lattice_rank, std::vector<IntVec> rays,
      std::vector<std::vector<std::size_t>> max_cones);

  std::size_t lattice_rank() const { return rank_; }
  const std::vector<IntVec>& rays() const { return rays_; }
  const IntVec& ray(std::size_t i) const { return rays_.at(i); }
  std::size_t ray_count() const { return rays_.size(); }

  /// All cones including {0} (the empty index set), sorted.
  const std::vector<std::vector<std::size_t>>& cones() const { return cones_; }
  /// Inclusion-maximal cones.
  const std::vector<std::vector<std::size_t>>& maximal_cones() const {
    return max_cones_;
  }
  bool has_cone(const std::vector<std::size_t>& ray_set) const;

  ConeData cone_data(const std::vector<std::size_t>& ray_set) const;

  // Optional data carried over from the fan file.
  std::vector<std::size_t> boundary_rays;            // Z_min
  std::vector<PlaceFace> places;                     // default face choices
  std::vector<std::vector<std::size_t>> action_generators;  // ray images

 private:
  std::size_t rank_;
  std::vector<IntVec> rays_;
  std::vector<std::vector<std::size_t>> cones_;
  std::vector<std::vector<std::size_t>> max_cones_;
};

/// Parse and validate a fan document (see the file schema in the README).
/// Non-primitive rays are an error, not a silent fix.
Fan load_fan(const std::string& json_text);
Fan load_fan_file(const std::string& path);

/// True iff every cone's rays extend to a basis of Z^n.
bool is_smooth(const Fan& f);

/// True iff the support is all of R^n: maximal cones are full-dimensional
/// and every facet of a maximal cone is shared by exactly two of them.
bool is_complete(const Fan& f);

/// Fan of all cones whose rays lie in the allowed set. Ray indices are
/// renumbered; `ray_map` gives old index -> new index.
Fan subfan(const Fan& f, const std::set<std::size_t>& allowed_rays,
           std::map<std::size_t, std::size_t>* ray_map = nullptr);

/// A finite group of fan automorphisms, given by permutations of ray
/// indices and materialized by closure. Elements are permutations, so the
/// action is faithful on rays by construction.
class GroupAction {
 public:
  static constexpr std::size_t kClosureCap = 10000;

  const std::vector<std::vector<std::size_t>>& elements() const {
    return elements_;
  }
  std::size_t order() const { return elements_.size(); }
  const std::vector<std::vector<std::size_t>>& ray_orbits() const {
    return ray_orbits_;
  }
  /// Orbit decomposition of the fan's cones.
  std::vector<std::vector<std::vector<std::size_t>>> cone_orbits() const;
  /// Cones fixed setwise by every group element.
  std::vector<std::vector<std::size_t>> fixed_cones() const;
  /// Orbit decomposition of the rays of one setwise-fixed cone.
  std::vector<std::vector<std::size_t>> orbits_within(
      const std::vector<std::size_t>& cone) const;

  /// Index of the orbit containing ray i.
  std::size_t orbit_of(std::size_t ray) const { return orbit_index_.at(ray); }

  const Fan& fan() const { return fan_; }

 private:
  friend GroupAction attach_action(
      const Fan&, const std::vector<std::vector<std::size_t>>&);
  Fan fan_{1, {}, {}};
  std::vector<std::vector<std::size_t>> elements_;
  std::vector<std::vector<std::size_t>> ray_orbits_;
  std::vector<std::size_t> orbit_index_;
};

/// Validate generators and build the closure. Each generator must permute
/// the rays compatibly with a lattice automorphism and map cones to cones;
/// the error names the first violated cone.
GroupAction attach_action(const Fan& f,
                          const std::vector<std::vector<std::size_t>>& perms);

std::string cone_name(const std::vector<std::size_t>& c);

}  // namespace toric
