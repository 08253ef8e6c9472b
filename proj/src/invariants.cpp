#include "toric/invariants.hpp"

#include <algorithm>
#include <set>

namespace toric {

namespace {

RatVec affine_combination(const DivisorClass& k, const Rat& t,
                          const DivisorClass& l) {
  RatVec v(k.free.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = Rat(k.free[i]) + t * Rat(l.free[i]);
  return v;
}

}  // namespace

Rat fujita_a(const AdelicPicard& ap, const DivisorClass& l) {
  const EffectiveCone& eff = ap.effective();
  if (!eff.cone.pointed)
    throw not_pointed_error(
        "effective cone is not pointed (obstructed face); the Fujita "
        "invariant is undefined");
  if (!big_test(eff, l)) throw error("polarization is not big");
  DivisorClass k = ap.log_canonical();

  // With L interior, every facet pairing of L is positive, so the LP
  // min{t : K + tL in Eff} collapses to a maximum of facet ratios.
  ConeData facets = dual_cone(eff.cone);
  bool have = false;
  Rat a = 0;
  for (const IntVec& f : facets.generators) {
    Rat fk = dot(f, to_rat(k.free));
    Rat fl = dot(f, to_rat(l.free));
    if (fl <= 0) throw error("big polarization pairs nonpositively with a facet");
    Rat t = -fk / fl;
    if (!have || t > a) {
      a = t;
      have = true;
    }
  }
  if (!have) throw error("effective cone has no facets");

  // verification per contract
  if (!cone_contains(eff.cone, affine_combination(k, a, l)))
    throw error("fujita_a verification failed: K + aL not effective");
  Rat eps(1, 1000);
  if (cone_contains(eff.cone, affine_combination(k, a - eps, l)))
    throw error("fujita_a verification failed: a is not the infimum");
  return a;
}

std::size_t b_invariant(const AdelicPicard& ap, const DivisorClass& l,
                        const Rat& a) {
  const EffectiveCone& eff = ap.effective();
  DivisorClass k = ap.log_canonical();
  RatVec adj = affine_combination(k, a, l);
  if (!cone_contains(eff.cone, adj))
    throw membership_error("K + aL is not in the effective cone");
  return minimal_face_containing(eff.cone, adj).codim;
}

AdjointData adjoint_decomposition(const AdelicPicard& ap,
                                  const DivisorClass& l, const Rat& a) {
  AdjointData out;
  out.a = a;
  DivisorClass k = ap.log_canonical();
  RatVec adj = affine_combination(k, a, l);
  const EffectiveCone& eff = ap.effective();
  if (!cone_contains(eff.cone, adj))
    throw membership_error("K + aL is not in the effective cone");
  FaceResult fr = minimal_face_containing(eff.cone, adj);
  out.minimal_face = fr.face;
  out.b = fr.codim;
  out.adjoint_class = adj;

  const auto& gens = ap.divisor_generators();
  out.a_adj.resize(ap.spec().entries.size());
  out.b_rays.resize(ap.spec().entries.size());
  for (const auto& g : gens) {
    bool in_face = cone_contains(fr.face, to_rat(g.cls.free));
    if (g.is_place_marker) {
      (in_face ? out.a_adj : out.b_rays)[g.place].push_back(g.ray);
    } else {
      (in_face ? out.d_adj : out.e_rays).push_back(g.ray);
    }
  }

  // Nonnegative decompositions of K + aL over divisor generators.
  const std::size_t m = ap.free_rank();
  std::vector<RatVec> rows(m, RatVec(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < m; ++i) rows[i][j] = Rat(gens[j].cls.free[i]);
  RatVec rhs = adj;

  RatVec zero_obj(gens.size(), Rat(0));
  LpResult feas = lp_maximize(rows, rhs, zero_obj);
  if (feas.status != LpStatus::Optimal)
    throw error(
        "no nonnegative decomposition of K + aL over divisor classes; "
        "contradicts K + aL in Eff");
  out.sample_solution = feas.solution;

  // Support of the polytope: coordinates attaining a positive value.
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    RatVec obj(gens.size(), Rat(0));
    obj[j] = 1;
    LpResult r = lp_maximize(rows, rhs, obj);
    if (r.status == LpStatus::Unbounded ||
        (r.status == LpStatus::Optimal && r.value > 0))
      support.push_back(j);
  }
  // Affine dimension: kernel of the generator matrix on the support.
  if (support.empty()) {
    out.decomposition_polytope_dim = 0;
  } else {
    IntMat gs(m, support.size());
    for (std::size_t jj = 0; jj < support.size(); ++jj)
      for (std::size_t i = 0; i < m; ++i)
        gs(i, jj) = gens[support[jj]].cls.free[i];
    out.decomposition_polytope_dim = support.size() - rank(gs);
  }
  out.rigid = out.decomposition_polytope_dim == 0;
  return out;
}

GrowthPrediction predict_growth(const Fan& f,
                                const std::vector<std::size_t>& boundary_rays,
                                const AdelicFaceSpec& spec,
                                const std::optional<IntVec>& lambda) {
  if (!is_smooth(f)) throw validation_error("predict_growth requires a smooth fan");
  if (!is_complete(f))
    throw validation_error("predict_growth requires a complete fan");
  GrowthPrediction out;
  out.c_arch = archimedean_constant(spec);
  ObstructionReport obs = analytic_obstruction(f, boundary_rays, spec);
  if (obs.obstructed) {
    out.obstructed = true;
    out.witness = obs.witness;
    return out;
  }
  AdelicPicard ap = adelic_picard(f, boundary_rays, spec);
  out.adelic_rank = ap.free_rank();
  DivisorClass l;
  if (lambda) {
    l = ap.from_ray_vector(*lambda);
  } else {
    // log-anticanonical: the sum of the divisors of U
    std::set<std::size_t> bset(boundary_rays.begin(), boundary_rays.end());
    IntVec ones(f.ray_count(), Int(0));
    for (std::size_t i = 0; i < ones.size(); ++i)
      if (!bset.count(i)) ones[i] = 1;
    l = ap.from_ray_vector(ones);
  }
  out.a = fujita_a(ap, l);
  AdjointData ad = adjoint_decomposition(ap, l, out.a);
  out.b = ad.b;
  out.rigid = ad.rigid;
  out.adjoint_class = ad.adjoint_class;
  return out;
}

}  // namespace toric
