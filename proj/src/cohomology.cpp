#include "toric/cohomology.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace toric {

FiniteGroup::FiniteGroup(std::vector<std::vector<std::size_t>> mult,
                         std::vector<std::size_t> generators)
    : mult_(std::move(mult)), gens_(std::move(generators)) {
  const std::size_t n = mult_.size();
  if (n == 0) throw error("empty multiplication table");
  for (const auto& row : mult_) {
    if (row.size() != n) throw error("multiplication table not square");
    for (std::size_t v : row)
      if (v >= n) throw error("multiplication table entry out of range");
  }
  bool found_id = false;
  for (std::size_t e = 0; e < n && !found_id; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < n; ++g)
      if (mult_[e][g] != g || mult_[g][e] != g) {
        ok = false;
        break;
      }
    if (ok) {
      id_ = e;
      found_id = true;
    }
  }
  if (!found_id) throw error("multiplication table has no identity");
  inv_.assign(n, n);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < n; ++h)
      if (mult_[g][h] == id_ && mult_[h][g] == id_) {
        inv_[g] = h;
        break;
      }
    if (inv_[g] == n) throw error("element without inverse");
  }
  for (std::size_t g : gens_)
    if (g >= n) throw error("generator index out of range");
}

FiniteGroup FiniteGroup::from_permutations(
    const std::vector<std::vector<std::size_t>>& perms,
    std::size_t closure_cap) {
  if (perms.empty()) throw error("need at least one permutation");
  const std::size_t deg = perms[0].size();
  std::vector<std::size_t> id(deg);
  for (std::size_t i = 0; i < deg; ++i) id[i] = i;
  std::set<std::vector<std::size_t>> elems{id};
  std::vector<std::vector<std::size_t>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& e : frontier)
      for (const auto& g : perms) {
        if (g.size() != deg) throw error("permutation degree mismatch");
        std::vector<std::size_t> prod(deg);
        for (std::size_t i = 0; i < deg; ++i) prod[i] = g[e[i]];
        if (elems.insert(prod).second) {
          if (elems.size() > closure_cap)
            throw error("group closure exceeds cap");
          next.push_back(std::move(prod));
        }
      }
    frontier = std::move(next);
  }
  std::vector<std::vector<std::size_t>> sorted(elems.begin(), elems.end());
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < sorted.size(); ++i) index[sorted[i]] = i;
  std::vector<std::vector<std::size_t>> mult(
      sorted.size(), std::vector<std::size_t>(sorted.size()));
  for (std::size_t a = 0; a < sorted.size(); ++a)
    for (std::size_t b = 0; b < sorted.size(); ++b) {
      std::vector<std::size_t> prod(deg);
      for (std::size_t i = 0; i < deg; ++i) prod[i] = sorted[a][sorted[b][i]];
      mult[a][b] = index.at(prod);
    }
  std::vector<std::size_t> gens;
  for (const auto& p : perms) gens.push_back(index.at(p));
  return FiniteGroup(std::move(mult), std::move(gens));
}

std::vector<std::vector<std::size_t>> FiniteGroup::all_subgroups() const {
  const std::size_t n = order();
  auto close = [&](std::vector<std::size_t> seed) {
    std::set<std::size_t> s(seed.begin(), seed.end());
    s.insert(id_);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::size_t> cur(s.begin(), s.end());
      for (std::size_t a : cur)
        for (std::size_t b : cur)
          if (s.insert(mult_[a][b]).second) grew = true;
    }
    return std::vector<std::size_t>(s.begin(), s.end());
  };
  std::set<std::vector<std::size_t>> subs;
  subs.insert(close({}));
  for (std::size_t a = 0; a < n; ++a) {
    subs.insert(close({a}));
    for (std::size_t b = a + 1; b < n; ++b) {
      subs.insert(close({a, b}));
      for (std::size_t c = b + 1; c < n; ++c) subs.insert(close({a, b, c}));
    }
  }
  return {subs.begin(), subs.end()};
}

GModule module_from_generator_matrices(const FiniteGroup& g,
                                       const std::vector<IntMat>& gen_mats) {
  if (gen_mats.size() != g.generators().size())
    throw error("need one matrix per designated generator");
  std::size_t rank = gen_mats.empty() ? 0 : gen_mats[0].rows();
  for (const IntMat& m : gen_mats) {
    if (m.rows() != rank || m.cols() != rank)
      throw error("generator matrices must be square of equal size");
    Int d = determinant(m);
    if (d != 1 && d != -1)
      throw error("generator matrices do not define an action (det != +-1)");
  }
  GModule mod;
  mod.group = &g;
  mod.rank = rank;
  const std::size_t n = g.order();
  std::vector<char> known(n, 0);
  mod.act.assign(n, IntMat::identity(rank));
  known[g.identity()] = 1;
  std::vector<std::size_t> frontier{g.identity()};
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t e : frontier)
      for (std::size_t k = 0; k < gen_mats.size(); ++k) {
        std::size_t ge = g.mult(g.generators()[k], e);
        IntMat prod = gen_mats[k] * mod.act[e];
        if (!known[ge]) {
          mod.act[ge] = prod;
          known[ge] = 1;
          next.push_back(ge);
        } else if (!(mod.act[ge] == prod)) {
          throw error(
              "generator matrices do not define an action (inconsistent "
              "relations)");
        }
      }
    frontier = std::move(next);
  }
  for (std::size_t e = 0; e < n; ++e)
    if (!known[e])
      throw error("designated generators do not generate the group");
  // consistency of the full table
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t k = 0; k < gen_mats.size(); ++k) {
      std::size_t ga = g.mult(g.generators()[k], a);
      if (!(mod.act[ga] == gen_mats[k] * mod.act[a]))
        throw error("generator matrices do not define an action");
    }
  return mod;
}

GModule coset_module(const FiniteGroup& g,
                     const std::vector<std::size_t>& subgroup) {
  std::set<std::size_t> h(subgroup.begin(), subgroup.end());
  const std::size_t n = g.order();
  std::vector<std::size_t> coset_of(n, n);
  std::vector<std::size_t> reps;
  for (std::size_t a = 0; a < n; ++a) {
    if (coset_of[a] != n) continue;
    std::size_t c = reps.size();
    for (std::size_t s : h) coset_of[g.mult(a, s)] = c;
    reps.push_back(a);
  }
  const std::size_t m = reps.size();
  GModule mod;
  mod.group = &g;
  mod.rank = m;
  mod.act.reserve(n);
  for (std::size_t e = 0; e < n; ++e) {
    IntMat mat(m, m);
    for (std::size_t c = 0; c < m; ++c)
      mat(coset_of[g.mult(e, reps[c])], c) = 1;
    mod.act.push_back(std::move(mat));
  }
  return mod;
}

IntVec group_h1(const GModule& m) {
  const FiniteGroup& g = *m.group;
  const std::size_t n = g.order();
  const std::size_t r = m.rank;
  if (r == 0) return {};
  // d1: Maps(G, M) -> Maps(G x G, M), c -> (g,h) -> g c(h) - c(gh) + c(g)
  IntMat d1(n * n * r, n * r);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t row0 = (a * n + b) * r;
      const IntMat& ga = m.act[a];
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) d1(row0 + i, b * r + j) += ga(i, j);
        d1(row0 + i, g.mult(a, b) * r + i) -= 1;
        d1(row0 + i, a * r + i) += 1;
      }
    }
  std::vector<IntVec> kernel = integer_kernel(d1);
  const std::size_t k = kernel.size();
  if (k == 0) return {};
  // coboundaries in kernel coordinates
  IntMat kmat(n * r, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n * r; ++i) kmat(i, j) = kernel[j][i];
  IntMat d0(n * r, r);
  for (std::size_t c = 0; c < r; ++c)
    for (std::size_t a = 0; a < n; ++a) {
      const IntMat& ga = m.act[a];
      for (std::size_t i = 0; i < r; ++i) d0(a * r + i, c) = ga(i, c);
      d0(a * r + c, c) -= 1;
    }
  IntMat x(k, r);
  if (!solve_integer_matrix(kmat, d0, x))
    throw error("coboundary outside cocycle lattice");
  SmithResult sr = smith_normal_form(x);
  IntVec out;
  std::size_t lim = std::min(x.rows(), x.cols());
  std::size_t rk = 0;
  while (rk < lim && sr.S(rk, rk) != 0) ++rk;
  if (rk < k) throw error("H^1 of a finite group came out infinite");
  for (std::size_t i = 0; i < rk; ++i)
    if (sr.S(i, i) > 1) out.push_back(sr.S(i, i));
  return out;
}

std::vector<std::vector<std::size_t>> cyclic_perm_generators(std::size_t n) {
  std::vector<std::size_t> cyc(n);
  for (std::size_t i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
  return {cyc};
}

FiniteGroup quaternion_group_q8() {
  // elements: 1, -1, i, -i, j, -j, k, -k
  auto code = [](int unit, int sign) { return 2 * unit + (sign < 0 ? 1 : 0); };
  auto unit_mul = [](int a, int b, int& sign) {
    // units 0=1, 1=i, 2=j, 3=k
    static const int tbl[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1},
                                  {3, 2, 1, 0}};
    static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1},
                                  {1, -1, -1, 1}, {1, 1, -1, -1}};
    sign = sgn[a][b];
    return tbl[a][b];
  };
  std::vector<std::vector<std::size_t>> mult(8, std::vector<std::size_t>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int ua = a / 2, sa = (a % 2) ? -1 : 1;
      int ub = b / 2, sb = (b % 2) ? -1 : 1;
      int s;
      int u = unit_mul(ua, ub, s);
      mult[a][b] = static_cast<std::size_t>(code(u, sa * sb * s));
    }
  return FiniteGroup(std::move(mult), {code(1, 1), code(2, 1)});
}

}  // namespace toric
