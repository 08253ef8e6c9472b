#pragma once

#include "toric/matrix.hpp"

namespace toric {

/// Finite group given by its multiplication table. Element 0..n-1,
/// `mult[g][h]` = g*h. The designated generators are used when a module is
/// specified by matrices per generator.
class FiniteGroup {
 public:
  FiniteGroup(std::vector<std::vector<std::size_t>> mult,
              std::vector<std::size_t> generators);

  static FiniteGroup from_permutations(
      const std::vector<std::vector<std::size_t>>& perms,
      std::size_t closure_cap = 10000);

  std::size_t order() const { return mult_.size(); }
  std::size_t mult(std::size_t g, std::size_t h) const { return mult_[g][h]; }
  std::size_t identity() const { return id_; }
  std::size_t inverse(std::size_t g) const { return inv_[g]; }
  const std::vector<std::size_t>& generators() const { return gens_; }

  /// All subgroups, each as a sorted element list. Intended for small
  /// groups (fixtures run up to order 8).
  std::vector<std::vector<std::size_t>> all_subgroups() const;

 private:
  std::vector<std::vector<std::size_t>> mult_;
  std::vector<std::size_t> gens_;
  std::size_t id_ = 0;
  std::vector<std::size_t> inv_;
};

/// A free Z-module with a G-action, one integer matrix per group element.
struct GModule {
  const FiniteGroup* group = nullptr;
  std::size_t rank = 0;
  std::vector<IntMat> act;  // indexed by group element
};

/// Extend matrices given per generator to the whole group, validating that
/// they define an action (consistency on all relations, GL_n(Z) images).
GModule module_from_generator_matrices(const FiniteGroup& g,
                                       const std::vector<IntMat>& gen_mats);

/// Permutation module Z[G/H] for a subgroup H (sorted element list).
GModule coset_module(const FiniteGroup& g,
                     const std::vector<std::size_t>& subgroup);

/// Invariant factors (>1) of H^1(G, M) computed with inhomogeneous
/// cochains on the full group. Empty result means H^1 = 0.
IntVec group_h1(const GModule& m);

// Small named groups for fixtures, as permutation generator lists.
std::vector<std::vector<std::size_t>> cyclic_perm_generators(std::size_t n);
FiniteGroup quaternion_group_q8();

}  // namespace toric
