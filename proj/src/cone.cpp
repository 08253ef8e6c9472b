#include "toric/cone.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace toric {

namespace {

std::vector<IntVec> canonical_generators(std::vector<IntVec> gens) {
  for (IntVec& g : gens) g = primitivize(std::move(g));
  gens.erase(std::remove_if(gens.begin(), gens.end(),
                            [](const IntVec& g) { return is_zero(g); }),
             gens.end());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

// Generators rewritten in coordinates of the cone's lattice basis. Throws
// when a generator is not a lattice point.
std::vector<IntVec> lattice_coords(const ConeData& c) {
  if (!c.lattice) return c.generators;
  IntMat bt = c.lattice->transpose();
  std::vector<IntVec> out;
  out.reserve(c.generators.size());
  for (const IntVec& g : c.generators) {
    IntVec x;
    if (!solve_integer(bt, g, x))
      throw validation_error("cone generator outside its lattice");
    out.push_back(primitivize(std::move(x)));
  }
  return out;
}

struct DDState {
  std::vector<IntVec> lineality;            // basis of two-sided directions
  std::vector<IntVec> rays;                 // extreme rays mod lineality
  std::vector<std::set<int>> active;        // per ray: tight constraints
};

// One double-description step: intersect the current cone with
// {x : <a, x> >= 0}, constraint index `idx`.
void dd_step(DDState& st, const IntVec& a, int idx) {
  // A lineality direction with <a,v> != 0 becomes a ray; everything else
  // is projected onto the hyperplane along v.
  for (std::size_t k = 0; k < st.lineality.size(); ++k) {
    Int av = dot(a, st.lineality[k]);
    if (av == 0) continue;
    IntVec v = st.lineality[k];
    if (av < 0) {
      v = negate(std::move(v));
      av = -av;
    }
    st.lineality.erase(st.lineality.begin() + static_cast<long>(k));
    for (IntVec& w : st.lineality) {
      Int aw = dot(a, w);
      if (aw == 0) continue;
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = av * w[i] - aw * v[i];
      w = primitivize(std::move(w));
    }
    for (std::size_t r = 0; r < st.rays.size(); ++r) {
      Int ar = dot(a, st.rays[r]);
      if (ar != 0) {
        IntVec& w = st.rays[r];
        for (std::size_t i = 0; i < w.size(); ++i)
          w[i] = av * w[i] - ar * v[i];
        w = primitivize(std::move(w));
      }
      st.active[r].insert(idx);  // projected rays all lie on the hyperplane
    }
    // Every previously processed constraint vanished on the lineality
    // space, so all of them are tight at the new ray v.
    std::set<int> v_active;
    for (int m = 0; m < idx; ++m) v_active.insert(m);
    st.rays.push_back(std::move(v));
    st.active.push_back(std::move(v_active));
    return;
  }

  // a vanishes on the lineality space: classic ray partition.
  std::vector<Int> val(st.rays.size());
  for (std::size_t r = 0; r < st.rays.size(); ++r) val[r] = dot(a, st.rays[r]);

  std::vector<IntVec> new_rays;
  std::vector<std::set<int>> new_active;
  for (std::size_t r = 0; r < st.rays.size(); ++r) {
    if (val[r] < 0) continue;
    new_rays.push_back(st.rays[r]);
    std::set<int> act = st.active[r];
    if (val[r] == 0) act.insert(idx);
    new_active.push_back(std::move(act));
  }
  for (std::size_t p = 0; p < st.rays.size(); ++p) {
    if (val[p] <= 0) continue;
    for (std::size_t q = 0; q < st.rays.size(); ++q) {
      if (val[q] >= 0) continue;
      // Combinatorial adjacency: no third ray is tight on everything both
      // p and q are tight on.
      std::set<int> common;
      std::set_intersection(st.active[p].begin(), st.active[p].end(),
                            st.active[q].begin(), st.active[q].end(),
                            std::inserter(common, common.begin()));
      bool adjacent = true;
      for (std::size_t t = 0; t < st.rays.size() && adjacent; ++t) {
        if (t == p || t == q) continue;
        if (std::includes(st.active[t].begin(), st.active[t].end(),
                          common.begin(), common.end()))
          adjacent = false;
      }
      if (!adjacent) continue;
      IntVec w(st.rays[p].size());
      for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = val[p] * st.rays[q][i] - val[q] * st.rays[p][i];
      w = primitivize(std::move(w));
      common.insert(idx);
      new_rays.push_back(std::move(w));
      new_active.push_back(std::move(common));
    }
  }
  st.rays = std::move(new_rays);
  st.active = std::move(new_active);
}

// Extreme rays and lineality basis of {x : <g, x> >= 0 for all g}.
DDState dd_solve(std::size_t n, const std::vector<IntVec>& constraints) {
  DDState st;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n, Int(0));
    e[i] = 1;
    st.lineality.push_back(std::move(e));
  }
  int idx = 0;
  for (const IntVec& a : constraints) dd_step(st, a, idx++);
  return st;
}

std::size_t span_rank(const std::vector<IntVec>& vecs, std::size_t n) {
  if (vecs.empty()) return 0;
  (void)n;
  return rank(IntMat::from_rows(vecs));
}

}  // namespace

ConeData ConeData::make(std::size_t ambient_rank, std::vector<IntVec> gens,
                        std::optional<IntMat> lattice) {
  ConeData c;
  c.ambient_rank = ambient_rank;
  for (const IntVec& g : gens)
    if (g.size() != ambient_rank)
      throw validation_error("cone generator has wrong dimension");
  if (lattice) {
    if (lattice->rows() != ambient_rank || lattice->cols() != ambient_rank ||
        rank(*lattice) != ambient_rank)
      throw validation_error("cone lattice basis must be full-rank square");
    c.lattice = std::move(lattice);
  }
  c.generators = canonical_generators(std::move(gens));
  // pointed iff the dual cone is full-dimensional
  ConeData probe = c;
  probe.pointed = true;  // placeholder; not consulted by dual_cone
  ConeData d = dual_cone(probe);
  c.pointed = span_rank(d.generators, ambient_rank) == ambient_rank;
  return c;
}

std::size_t ConeData::dim() const {
  return span_rank(generators, ambient_rank);
}

ConeData dual_cone(const ConeData& c) {
  DDState st = dd_solve(c.ambient_rank, c.generators);
  std::vector<IntVec> gens = st.rays;
  for (const IntVec& b : st.lineality) {
    gens.push_back(b);
    gens.push_back(negate(b));
  }
  ConeData d;
  d.ambient_rank = c.ambient_rank;
  d.generators = canonical_generators(std::move(gens));
  d.lattice = std::nullopt;
  d.pointed = st.lineality.empty();
  return d;
}

bool cone_contains(const ConeData& c, const RatVec& x) {
  // span test first: x must be a rational combination of the generators
  if (c.generators.empty()) {
    for (const Rat& v : x)
      if (v != 0) return false;
    return true;
  }
  std::vector<IntVec> rows = c.generators;
  IntMat gt = IntMat::from_rows(rows).transpose();
  RatVec sol;
  if (!solve_rational(gt, x, sol)) return false;
  ConeData d = dual_cone(c);
  for (const IntVec& a : d.generators)
    if (dot(a, x) < 0) return false;
  return true;
}

bool cone_contains(const ConeData& c, const IntVec& x) {
  return cone_contains(c, to_rat(x));
}

bool cone_contains_rel_interior(const ConeData& c, const RatVec& x) {
  if (!cone_contains(c, x)) return false;
  FaceResult f = minimal_face_containing(c, x);
  return f.codim == 0;
}

FaceResult minimal_face_containing(const ConeData& c, const RatVec& x) {
  if (!cone_contains(c, x)) throw membership_error("point not in cone");
  ConeData d = dual_cone(c);
  std::vector<IntVec> active;
  for (const IntVec& a : d.generators)
    if (dot(a, x) == 0) active.push_back(a);
  std::vector<IntVec> face_gens;
  for (const IntVec& g : c.generators) {
    bool in_face = true;
    for (const IntVec& a : active)
      if (dot(a, g) != 0) {
        in_face = false;
        break;
      }
    if (in_face) face_gens.push_back(g);
  }
  FaceResult r;
  r.face = ConeData::make(c.ambient_rank, std::move(face_gens), c.lattice);
  r.codim = c.dim() - r.face.dim();
  return r;
}

namespace {

// Extreme generators of a pointed cone: g is extreme iff the constraints
// tight at g cut out a 1-dimensional set within the span.
std::vector<IntVec> extreme_generators(const ConeData& c) {
  const std::size_t d = c.dim();
  ConeData dual = dual_cone(c);
  std::vector<IntVec> out;
  for (const IntVec& g : c.generators) {
    std::vector<IntVec> tight;
    for (const IntVec& a : dual.generators)
      if (dot(a, g) == 0) tight.push_back(a);
    // within span(c): tight normals must have rank d-1 (modulo the
    // normals vanishing on all of span(c), which are tight everywhere)
    std::vector<IntVec> span_cut;
    for (const IntVec& a : dual.generators) {
      bool on_span = true;
      for (const IntVec& h : c.generators)
        if (dot(a, h) != 0) {
          on_span = false;
          break;
        }
      if (on_span) span_cut.push_back(a);
    }
    std::size_t base = span_cut.empty() ? 0 : span_rank(span_cut, c.ambient_rank);
    if (span_rank(tight, c.ambient_rank) == base + d - 1) out.push_back(g);
  }
  return out;
}

std::vector<ConeData> triangulate_impl(const ConeData& c, bool reversed) {
  if (!c.pointed) throw not_pointed_error("triangulate requires a pointed cone");
  const std::size_t d = c.dim();
  if (d == 0) return {};

  std::vector<IntVec> ext = extreme_generators(c);
  std::sort(ext.begin(), ext.end());
  if (reversed) std::reverse(ext.begin(), ext.end());
  if (d == 1)
    return {ConeData::make(c.ambient_rank, {ext.at(0)}, c.lattice)};

  // Work in coordinates of a saturated basis of the span.
  IntMat basis_rows = IntMat::from_rows(c.generators);
  std::vector<IntVec> sat = saturated_row_basis(basis_rows);
  IntMat bt = IntMat::from_rows(sat).transpose();
  std::vector<IntVec> pts;  // d-dimensional coordinates of ext
  for (const IntVec& g : ext) {
    IntVec x;
    if (!solve_integer(bt, g, x))
      throw error("generator not in saturated span lattice");
    pts.push_back(std::move(x));
  }

  auto det_of = [&](const std::vector<std::size_t>& idx) {
    std::vector<IntVec> rows;
    for (std::size_t i : idx) rows.push_back(pts[i]);
    return determinant(IntMat::from_rows(rows));
  };

  // Initial simplex: first d generators (in order) that are independent.
  std::vector<std::size_t> init;
  std::vector<char> used(pts.size(), 0);
  for (std::size_t i = 0; i < pts.size() && init.size() < d; ++i) {
    init.push_back(i);
    std::vector<IntVec> rows;
    for (std::size_t k : init) rows.push_back(pts[k]);
    if (rank(IntMat::from_rows(rows)) != init.size()) init.pop_back();
  }
  if (init.size() < d) throw error("cone not full-dimensional in its span");
  for (std::size_t i : init) used[i] = 1;

  std::vector<std::vector<std::size_t>> simplices{init};
  std::sort(simplices[0].begin(), simplices[0].end());

  // facet (sorted (d-1)-subset) -> owning simplices
  auto facets_of = [&](const std::vector<std::size_t>& s) {
    std::vector<std::vector<std::size_t>> fs;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      std::vector<std::size_t> f;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (i != drop) f.push_back(s[i]);
      fs.push_back(std::move(f));
    }
    return fs;
  };

  // Inward normal of facet f relative to simplex s (within the span).
  auto inward_normal = [&](const std::vector<std::size_t>& f,
                           const std::vector<std::size_t>& s) {
    std::vector<IntVec> rows;
    for (std::size_t i : f) rows.push_back(pts[i]);
    std::vector<IntVec> ker = integer_kernel(IntMat::from_rows(rows));
    if (ker.size() != 1) throw error("degenerate facet in triangulation");
    IntVec nrm = primitivize(ker[0]);
    std::size_t apex = 0;
    for (std::size_t i : s)
      if (std::find(f.begin(), f.end(), i) == f.end()) apex = i;
    Int v = dot(nrm, pts[apex]);
    if (v == 0) throw error("apex on facet hyperplane");
    if (v < 0) nrm = negate(std::move(nrm));
    return nrm;
  };

  for (std::size_t v = 0; v < pts.size(); ++v) {
    if (used[v]) continue;
    used[v] = 1;
    // boundary facets = facets owned by exactly one simplex
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> owner;
    for (std::size_t si = 0; si < simplices.size(); ++si)
      for (auto& f : facets_of(simplices[si])) owner[f].push_back(si);
    std::vector<std::vector<std::size_t>> added;
    for (auto& [f, owners] : owner) {
      if (owners.size() != 1) continue;
      IntVec nrm = inward_normal(f, simplices[owners[0]]);
      if (dot(nrm, pts[v]) < 0) {
        std::vector<std::size_t> s = f;
        s.push_back(v);
        std::sort(s.begin(), s.end());
        added.push_back(std::move(s));
      }
    }
    for (auto& s : added) simplices.push_back(std::move(s));
  }

  std::vector<ConeData> out;
  for (auto& s : simplices) {
    std::vector<IntVec> gens;
    for (std::size_t i : s) gens.push_back(ext[i]);
    out.push_back(ConeData::make(c.ambient_rank, std::move(gens), c.lattice));
  }
  return out;
}

}  // namespace

std::vector<ConeData> triangulate(const ConeData& c) {
  return triangulate_impl(c, false);
}

std::vector<ConeData> triangulate_reversed(const ConeData& c) {
  return triangulate_impl(c, true);
}

Int simplicial_lattice_index(const ConeData& simplex) {
  std::vector<IntVec> gens = lattice_coords(simplex);
  if (gens.empty()) return 1;
  IntMat m = IntMat::from_rows(gens);
  std::vector<IntVec> sat = saturated_row_basis(m);
  if (sat.size() != gens.size())
    throw error("lattice index of a non-simplicial generator set");
  IntMat bt = IntMat::from_rows(sat).transpose();
  std::vector<IntVec> coords;
  for (const IntVec& g : gens) {
    IntVec x;
    if (!solve_integer(bt, g, x)) throw error("generator outside saturation");
    coords.push_back(std::move(x));
  }
  Int d = determinant(IntMat::from_rows(coords));
  return d < 0 ? Int(-d) : d;
}

}  // namespace toric
