#include "toric/counter.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace toric {

using nlohmann::json;

namespace {

// Saturating arithmetic: values above `cap` are pinned to cap+1, which is
// exact for every comparison against quantities <= cap.
i64 mul_cap(i64 a, i64 b, i64 cap) {
  if (a == 0 || b == 0) return 0;
  if (a > (cap + 1) / b + 1) return cap + 1;
  i64 r;
  if (__builtin_mul_overflow(a, b, &r) || r > cap) return cap + 1;
  return r;
}

i64 pow_cap(i64 t, i64 d, i64 cap) {
  i64 v = 1;
  for (i64 i = 0; i < d; ++i) {
    v = mul_cap(v, t, cap);
    if (v > cap) return v;
  }
  return v;
}

// max t >= 0 with a * t^d <= b  (a >= 1, d >= 1, b >= 0)
i64 bound_solve(i64 a, i64 d, i64 b) {
  if (a > b) return 0 <= b ? 0 : -1;
  if (d == 1) return b / a;
  double seed = std::pow(static_cast<double>(b) / static_cast<double>(a),
                         1.0 / static_cast<double>(d));
  i64 t = static_cast<i64>(seed);
  if (t < 0) t = 0;
  while (mul_cap(a, pow_cap(t + 1, d, b), b) <= b) ++t;
  while (t > 0 && mul_cap(a, pow_cap(t, d, b), b) > b) --t;
  return t;
}

// smallest t >= 1 with lhs <= rhs * t^d  (lhs, rhs >= 1, d >= 1); -1 when
// no t <= limit works
i64 lower_solve(i64 lhs, i64 d, i64 rhs, i64 limit) {
  auto ok = [&](i64 t) { return mul_cap(rhs, pow_cap(t, d, lhs), lhs) >= lhs; };
  if (ok(1)) return 1;
  if (d == 1) {
    i64 t = (lhs + rhs - 1) / rhs;
    return t <= limit ? t : -1;
  }
  if (!ok(limit)) return -1;
  i64 lo = 1, hi = 2;
  while (hi < limit && !ok(hi)) {
    lo = hi;
    hi = std::min(limit, hi * 2);
  }
  while (lo + 1 < hi) {
    i64 mid = lo + (hi - lo) / 2;
    if (ok(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

i64 to_i64(const Int& v) {
  static const Int hi = Int(1) << 62;
  if (v > hi || v < -hi) throw error("value exceeds 64-bit range");
  return v.convert_to<i64>();
}

}  // namespace

HeightSpec::HeightSpec(const Fan& compactified, IntVec lambda)
    : fan_(compactified), lambda_(std::move(lambda)) {
  const Fan& f = fan_;
  if (!is_smooth(f) || !is_complete(f))
    throw validation_error("heights need a smooth complete fan");
  if (lambda_.size() != f.ray_count())
    throw validation_error("class vector must have one entry per ray");
  const std::size_t n = f.lattice_rank();
  for (const auto& sigma : f.maximal_cones()) {
    // solve <m, n_rho> = -lambda_rho on the cone
    IntMat rows(sigma.size(), n);
    RatVec rhs(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j) rows(i, j) = f.ray(sigma[i])[j];
      rhs[i] = -Rat(lambda_[sigma[i]]);
    }
    RatVec m;
    if (!solve_rational(rows, rhs, m))
      throw error("no support function on a maximal cone");
    std::vector<i64> e(f.ray_count());
    for (std::size_t r = 0; r < f.ray_count(); ++r) {
      Rat v = Rat(lambda_[r]) + dot(f.ray(r), m);
      if (denominator(v) != 1)
        throw error("non-integral height exponent on a smooth cone");
      Int ei = numerator(v);
      if (ei < 0)
        throw validation_error("class is not nef: negative exponent on ray " +
                               std::to_string(r));
      e[r] = to_i64(ei);
    }
    for (std::size_t i : sigma)
      if (e[i] != 0) throw error("support function failed to vanish on cone");
    exponents_.push_back(std::move(e));
  }
}

Int HeightSpec::evaluate(const IntVec& cox_point) const {
  if (cox_point.size() != fan_.ray_count())
    throw error("height: wrong coordinate count");
  Int best = -1;
  for (const auto& e : exponents_) {
    Int m = 1;
    for (std::size_t r = 0; r < cox_point.size(); ++r) {
      if (e[r] == 0) continue;
      Int a = abs(cox_point[r]);
      for (i64 i = 0; i < e[r]; ++i) m *= a;
      if (m == 0) break;
    }
    if (m > best) best = m;
  }
  if (best <= 0)
    throw error("height 0: point lies in the boundary of every chart");
  return best;
}

IntVec lift_from_u(const Fan& compactified,
                   const std::vector<std::size_t>& u_rays,
                   const IntVec& u_point) {
  if (u_point.size() != u_rays.size())
    throw error("lift: point size does not match U ray count");
  IntVec full(compactified.ray_count(), Int(1));
  for (std::size_t i = 0; i < u_rays.size(); ++i)
    full.at(u_rays[i]) = u_point[i];
  return full;
}

namespace {

constexpr i64 kRegionCap = i64(1) << 60;

struct CoxEnumerator {
  std::size_t k = 0;                         // number of U coordinates
  std::vector<std::vector<i64>> cone_exp;    // per cone, exponents on U coords
  std::vector<std::vector<i64>> suffix_pos;  // positive exponents at >= depth
  std::vector<std::vector<std::size_t>> nonfaces;  // minimal non-faces
  std::vector<RegionConstraint> region;
  std::vector<i64> thresholds;
  i64 t_max = 0;
  bool boundary_ok = false;
  std::vector<uint64_t> class_bits;  // mod-2 ray classes per coordinate
  std::size_t pic_rank = 0;

  std::size_t orbit_log2(const std::vector<char>& nonzero) const {
    // 2^{#nonzero - rank_F2 of the classes on the nonzero support}
    uint64_t basis[64] = {0};
    std::size_t nz = 0, rk = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!nonzero[i]) continue;
      ++nz;
      uint64_t v = class_bits[i];
      for (int bit = 63; bit >= 0 && v; --bit) {
        if (!(v >> bit & 1)) continue;
        if (basis[bit]) {
          v ^= basis[bit];
        } else {
          basis[bit] = v;
          ++rk;
          v = 0;
        }
      }
    }
    return nz - rk;
  }

  bool gcd_ok_at(const std::vector<i64>& vals, std::size_t depth) const {
    for (const auto& s : nonfaces) {
      if (s.back() != depth) continue;
      i64 g = 0;
      for (std::size_t i : s) g = std::gcd(g, vals[i]);
      if (g != 1) return false;
    }
    return true;
  }

  // Count valid values of the last coordinate for every threshold; the
  // prefix vals[0..k-2] is fixed, partial monomials are saturated at
  // t_max per cone.
  void leaf(const std::vector<i64>& vals, const std::vector<i64>& partials,
            const std::vector<char>& dead, std::vector<i64>& out) const {
    const std::size_t last = k - 1;
    bool all_dead = true;
    for (std::size_t c = 0; c < cone_exp.size(); ++c)
      if (!dead[c]) all_dead = false;
    if (all_dead) return;  // height would vanish identically

    // gcd conditions involving the last coordinate
    std::vector<i64> gcds;
    bool force_one = false;
    for (const auto& s : nonfaces) {
      if (s.back() != last) continue;
      i64 g = 0;
      for (std::size_t i : s)
        if (i != last) g = std::gcd(g, vals[i]);
      if (g == 0)
        force_one = true;
      else if (g > 1)
        gcds.push_back(g);
    }

    // region bounds, independent of the threshold
    i64 lo = 1;
    i64 hi_region = -1;  // -1 = unbounded
    for (const auto& rc : region) {
      i64 lp = 1, rp = rc.scale;
      for (std::size_t i = 0; i + 1 < k; ++i) {
        lp = mul_cap(lp, pow_cap(vals[i], rc.lhs[i], kRegionCap), kRegionCap);
        rp = mul_cap(rp, pow_cap(vals[i], rc.rhs[i], kRegionCap), kRegionCap);
      }
      if (lp > kRegionCap || rp > kRegionCap)
        throw error("region constraint value exceeds 64-bit range");
      i64 g = rc.lhs[last] - rc.rhs[last];
      if (g == 0) {
        if (lp > rp) return;
      } else if (g > 0) {
        if (rp == 0) return;
        if (lp == 0) continue;  // satisfied for every t
        i64 b = bound_solve(lp, g, rp);
        if (b < 1) return;
        if (hi_region < 0 || b < hi_region) hi_region = b;
      } else {
        if (lp == 0) continue;
        if (rp == 0) return;
        i64 b = lower_solve(lp, -g, rp, t_max + 1);
        if (b < 0) return;
        if (b > lo) lo = b;
      }
    }

    // primes of the gcd radical for the coprimality sieve
    i64 primes[20];
    std::size_t nprimes = 0;
    {
      std::set<i64> ps;
      for (i64 g : gcds) {
        i64 m = g;
        for (i64 p = 2; p * p <= m; ++p)
          if (m % p == 0) {
            ps.insert(p);
            while (m % p == 0) m /= p;
          }
        if (m > 1) ps.insert(m);
      }
      for (i64 p : ps) {
        if (nprimes == 20) throw error("gcd radical has too many primes");
        primes[nprimes++] = p;
      }
    }

    std::vector<char> nonzero(k, 1);
    for (std::size_t i = 0; i + 1 < k; ++i) nonzero[i] = vals[i] != 0;
    i64 factor = i64(1) << orbit_log2(nonzero);

    for (std::size_t ti = 0; ti < thresholds.size(); ++ti) {
      i64 hi = hi_region;
      bool empty = false;
      for (std::size_t c = 0; c < cone_exp.size() && !empty; ++c) {
        if (dead[c]) continue;
        i64 e = cone_exp[c][last];
        if (e == 0) {
          if (partials[c] > thresholds[ti]) empty = true;
        } else {
          i64 b = bound_solve(partials[c], e, thresholds[ti]);
          if (b < 1)
            empty = true;
          else if (hi < 0 || b < hi)
            hi = b;
        }
      }
      if (empty) continue;
      if (hi < 0)
        throw error("last coordinate unbounded under the height");
      i64 lov = lo, hiv = hi;
      if (force_one) {
        lov = std::max<i64>(lov, 1);
        hiv = std::min<i64>(hiv, 1);
      }
      if (hiv < lov) continue;
      i64 cnt = 0;
      for (std::size_t mask = 0; mask < (std::size_t(1) << nprimes); ++mask) {
        i64 d = 1;
        int mu = 1;
        for (std::size_t b = 0; b < nprimes; ++b)
          if (mask & (std::size_t(1) << b)) {
            d *= primes[b];
            mu = -mu;
          }
        cnt += mu * (hiv / d - (lov - 1) / d);
      }
      out[ti] += factor * cnt;
    }
  }

  // last coordinate equal to zero (boundary mode)
  void leaf_zero(std::vector<i64>& vals, const std::vector<i64>& partials,
                 const std::vector<char>& dead, std::vector<i64>& out) const {
    const std::size_t last = k - 1;
    vals[last] = 0;
    bool ok = true;
    for (const auto& s : nonfaces) {
      i64 g = 0;
      for (std::size_t i : s) g = std::gcd(g, vals[i]);
      if (g != 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (const auto& rc : region) {
        i64 lp = 1, rp = rc.scale;
        for (std::size_t i = 0; i < k; ++i) {
          lp = mul_cap(lp, pow_cap(vals[i], rc.lhs[i], kRegionCap), kRegionCap);
          rp = mul_cap(rp, pow_cap(vals[i], rc.rhs[i], kRegionCap), kRegionCap);
        }
        if (lp > kRegionCap || rp > kRegionCap)
          throw error("region constraint value exceeds 64-bit range");
        if (lp > rp) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      i64 h = 0;
      bool any = false;
      for (std::size_t c = 0; c < cone_exp.size(); ++c) {
        if (dead[c] || cone_exp[c][last] > 0) continue;  // monomial is 0
        any = true;
        h = std::max(h, partials[c]);
      }
      if (any && h >= 1) {
        std::vector<char> nonzero(k);
        for (std::size_t i = 0; i < k; ++i) nonzero[i] = vals[i] != 0;
        i64 factor = i64(1) << orbit_log2(nonzero);
        for (std::size_t ti = 0; ti < thresholds.size(); ++ti)
          if (h <= thresholds[ti]) out[ti] += factor;
      }
    }
    vals[last] = -1;
  }

  void dfs(std::size_t depth, std::vector<i64>& vals,
           const std::vector<i64>& partials, const std::vector<char>& dead,
           i64 from, i64 to, std::vector<i64>& out) const {
    if (depth + 1 == k) {
      leaf(vals, partials, dead, out);
      if (boundary_ok && from <= 0) leaf_zero(vals, partials, dead, out);
      return;
    }

    i64 bound = -1;
    for (std::size_t c = 0; c < cone_exp.size(); ++c) {
      if (dead[c]) continue;
      i64 e = cone_exp[c][depth];
      if (e == 0) continue;
      if (boundary_ok && suffix_pos[c][depth + 1] > 0) continue;
      i64 b = bound_solve(partials[c], e, t_max);
      if (bound < 0 || b < bound) bound = b;
    }
    if (bound < 0)
      throw error("coordinate " + std::to_string(depth) +
                  " is unbounded under the height" +
                  (boundary_ok ? " with boundary points included" : ""));
    i64 hi = (to >= 0) ? std::min(to, bound) : bound;

    std::vector<i64> next(cone_exp.size());
    std::vector<char> ndead(cone_exp.size());
    auto descend = [&](i64 v) {
      vals[depth] = v;
      if (!gcd_ok_at(vals, depth)) return;
      for (std::size_t c = 0; c < cone_exp.size(); ++c) {
        ndead[c] = dead[c];
        next[c] = partials[c];
        if (dead[c]) continue;
        i64 p = mul_cap(partials[c], pow_cap(v, cone_exp[c][depth], t_max),
                        t_max);
        if (p == 0) ndead[c] = 1;
        next[c] = p;
        if (!ndead[c] && p > t_max) {
          bool can_vanish = boundary_ok && suffix_pos[c][depth + 1] > 0;
          if (!can_vanish) return;  // monomial already exceeds every bound
        }
      }
      dfs(depth + 1, vals, next, ndead, boundary_ok ? 0 : 1, -1, out);
    };
    if (boundary_ok && from <= 0) descend(0);
    for (i64 v = std::max<i64>(from, 1); v <= hi; ++v) descend(v);
    vals[depth] = -1;
  }
};

}  // namespace

std::vector<CountRecord> enumerate_cox(const Fan& compactified,
                                       const std::vector<std::size_t>& u_rays,
                                       const HeightSpec& height,
                                       const CoxCountOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  if (height.fan().rays() != compactified.rays())
    throw error("height spec belongs to a different fan");
  if (opts.thresholds.empty()) throw error("no thresholds given");
  for (std::size_t i = 0; i + 1 < opts.thresholds.size(); ++i)
    if (opts.thresholds[i] >= opts.thresholds[i + 1])
      throw error("thresholds must be strictly increasing");
  if (opts.thresholds.front() < 1) throw error("thresholds must be positive");

  std::set<std::size_t> uset(u_rays.begin(), u_rays.end());
  if (uset.size() != u_rays.size()) throw error("duplicate U ray indices");
  for (std::size_t i : u_rays)
    if (i >= compactified.ray_count()) throw error("U ray index out of range");
  Fan ufan = subfan(compactified, uset);
  PicardData pic_u = picard_group(ufan);
  if (!pic_u.torsion_orders().empty())
    throw error(
        "Pic U has torsion; torsor twists are not enumerable here, use "
        "enumerate_affine with a direct model");

  CoxEnumerator en;
  en.k = u_rays.size();
  if (en.k == 0) throw error("U has no rays, nothing to enumerate");
  en.thresholds = opts.thresholds;
  en.t_max = opts.thresholds.back();
  en.boundary_ok = opts.include_boundary_points;
  en.region = opts.region.constraints;
  for (const auto& rc : en.region) {
    if (rc.lhs.size() != en.k || rc.rhs.size() != en.k || rc.scale < 1)
      throw error("malformed region constraint");
    for (std::size_t i = 0; i < en.k; ++i)
      if (rc.lhs[i] < 0 || rc.rhs[i] < 0)
        throw error("region exponents must be nonnegative");
  }

  // subfan() renumbers U's rays in sorted order; map enumeration
  // coordinates (u_rays order) to the subfan indices
  std::vector<std::size_t> sorted_u(u_rays.begin(), u_rays.end());
  std::sort(sorted_u.begin(), sorted_u.end());
  std::vector<std::size_t> coord_to_sub(en.k);
  for (std::size_t i = 0; i < en.k; ++i)
    coord_to_sub[i] = static_cast<std::size_t>(
        std::lower_bound(sorted_u.begin(), sorted_u.end(), u_rays[i]) -
        sorted_u.begin());

  for (const auto& e : height.cone_exponents()) {
    std::vector<i64> re(en.k);
    for (std::size_t i = 0; i < en.k; ++i) re[i] = e[u_rays[i]];
    en.cone_exp.push_back(std::move(re));
  }
  en.suffix_pos.assign(en.cone_exp.size(), std::vector<i64>(en.k + 1, 0));
  for (std::size_t c = 0; c < en.cone_exp.size(); ++c)
    for (std::size_t d = en.k; d-- > 0;)
      en.suffix_pos[c][d] =
          en.suffix_pos[c][d + 1] + (en.cone_exp[c][d] > 0 ? 1 : 0);

  // minimal non-faces of U's fan, in enumeration coordinates
  {
    const std::size_t k = en.k;
    for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
      std::vector<std::size_t> sub_idx;
      std::vector<std::size_t> coords;
      for (std::size_t b = 0; b < k; ++b)
        if (mask & (std::size_t(1) << b)) {
          coords.push_back(b);
          sub_idx.push_back(coord_to_sub[b]);
        }
      std::sort(sub_idx.begin(), sub_idx.end());
      if (ufan.has_cone(sub_idx)) continue;
      bool minimal = true;
      for (std::size_t drop = 0; drop < coords.size() && minimal; ++drop) {
        std::vector<std::size_t> sub;
        for (std::size_t i = 0; i < coords.size(); ++i)
          if (i != drop) sub.push_back(coord_to_sub[coords[i]]);
        std::sort(sub.begin(), sub.end());
        if (!ufan.has_cone(sub)) minimal = false;
      }
      if (minimal) en.nonfaces.push_back(std::move(coords));
    }
  }

  en.pic_rank = pic_u.free_rank();
  if (en.pic_rank > 62) throw error("Picard rank too large for sign masks");
  en.class_bits.assign(en.k, 0);
  for (std::size_t i = 0; i < en.k; ++i) {
    DivisorClass c = pic_u.ray_class(coord_to_sub[i]);
    uint64_t mask = 0;
    for (std::size_t j = 0; j < c.free.size(); ++j)
      if (c.free[j] % 2 != 0) mask |= (uint64_t(1) << j);
    en.class_bits[i] = mask;
  }

  unsigned workers = std::max(1u, opts.workers);
  std::vector<std::vector<i64>> partial_counts(
      workers, std::vector<i64>(opts.thresholds.size(), 0));

  auto run_chunk = [&](unsigned w, i64 lo, i64 hi) {
    std::vector<i64> vals(en.k, -1);
    std::vector<i64> partials(en.cone_exp.size(), 1);
    std::vector<char> dead(en.cone_exp.size(), 0);
    en.dfs(0, vals, partials, dead, lo, hi, partial_counts[w]);
  };

  if (en.k == 1 || workers == 1) {
    run_chunk(0, en.boundary_ok ? 0 : 1, -1);
  } else {
    // bound for the first coordinate, for the static partition
    i64 top_bound = -1;
    for (std::size_t c = 0; c < en.cone_exp.size(); ++c) {
      i64 e = en.cone_exp[c][0];
      if (e == 0) continue;
      if (en.boundary_ok && en.suffix_pos[c][1] > 0) continue;
      i64 b = bound_solve(1, e, en.t_max);
      if (top_bound < 0 || b < top_bound) top_bound = b;
    }
    if (top_bound < 0)
      throw error("coordinate 0 is unbounded under the height");
    std::vector<std::thread> pool;
    i64 chunk = top_bound / workers + 1;
    for (unsigned w = 0; w < workers; ++w) {
      i64 lo = 1 + static_cast<i64>(w) * chunk;
      i64 hi = std::min(top_bound, lo + chunk - 1);
      if (w == 0 && en.boundary_ok) lo = 0;
      if (lo > hi) continue;
      pool.emplace_back(run_chunk, w, lo, hi);
    }
    for (auto& t : pool) t.join();
  }

  std::vector<i64> totals(opts.thresholds.size(), 0);
  for (const auto& pc : partial_counts)
    for (std::size_t i = 0; i < totals.size(); ++i) totals[i] += pc[i];

  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  std::vector<CountRecord> out;
  for (std::size_t i = 0; i < opts.thresholds.size(); ++i)
    out.push_back(CountRecord{opts.model_id, opts.region.id,
                              opts.thresholds[i], totals[i],
                              static_cast<i64>(ms)});
  return out;
}

AffineModel load_affine_model(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw validation_error(std::string("model file is not valid JSON: ") +
                           e.what());
  }
  AffineModel m;
  if (j.contains("id")) m.id = j["id"].get<std::string>();
  for (const auto& v : j.at("vars")) m.vars.push_back(v.get<std::string>());
  const std::size_t n = m.vars.size();
  auto var_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < n; ++i)
      if (m.vars[i] == name) return i;
    throw validation_error("unknown variable " + name + " in model");
  };
  auto parse_exps = [&](const json& je) {
    std::vector<i64> e;
    for (const auto& x : je) e.push_back(x.get<i64>());
    if (e.size() != n)
      throw validation_error("exponent vector has wrong length");
    for (i64 x : e)
      if (x < 0) throw validation_error("negative exponent in model");
    return e;
  };
  for (const auto& eq : j.at("equations")) {
    std::vector<AffineModel::Term> terms;
    for (const auto& t : eq) {
      AffineModel::Term term;
      term.coef = t.at(0).get<i64>();
      term.exps = parse_exps(t.at(1));
      terms.push_back(std::move(term));
    }
    m.equations.push_back(std::move(terms));
  }
  if (j.contains("gcd_one"))
    for (const auto& grp : j["gcd_one"]) {
      std::vector<std::size_t> g;
      for (const auto& v : grp) g.push_back(var_index(v.get<std::string>()));
      m.gcd_one.push_back(std::move(g));
    }
  for (const auto& mono : j.at("height").at("max_of"))
    m.height_monomials.push_back(parse_exps(mono));
  if (j.contains("regions"))
    for (auto it = j["regions"].begin(); it != j["regions"].end(); ++it) {
      std::vector<RegionConstraint> cs;
      for (const auto& c : it.value()) {
        RegionConstraint rc;
        rc.lhs = parse_exps(c.at("lhs"));
        rc.rhs = parse_exps(c.at("rhs"));
        rc.scale = c.contains("c") ? c["c"].get<i64>() : 1;
        if (rc.scale < 1) throw validation_error("region scale must be >= 1");
        cs.push_back(std::move(rc));
      }
      m.regions[it.key()] = std::move(cs);
    }
  return m;
}

AffineModel load_affine_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open model file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_affine_model(ss.str());
}

namespace {

struct AffinePlanStep {
  std::size_t var;        // derived variable
  std::size_t equation;   // equation used to solve it
  i64 power;              // exponent of var in that equation
};

struct AffineEnumerator {
  const AffineModel* model;
  std::vector<RegionConstraint> region;
  i64 t_max;
  bool include_nontorus;
  std::vector<std::size_t> search_vars;
  std::vector<i64> search_bounds;
  std::vector<AffinePlanStep> plan;

  // exact term value; throws on 64-bit overflow
  static i64 term_value(const AffineModel::Term& t, const std::vector<i64>& v) {
    i64 r = t.coef;
    for (std::size_t i = 0; i < t.exps.size(); ++i)
      for (i64 e = 0; e < t.exps[i]; ++e)
        if (__builtin_mul_overflow(r, v[i], &r))
          throw error("model value exceeds 64-bit range");
    return r;
  }

  bool check_point(std::vector<i64>& vals, i64& height) const {
    const AffineModel& m = *model;
    for (const auto& eq : m.equations) {
      i64 s = 0;
      for (const auto& t : eq)
        if (__builtin_add_overflow(s, term_value(t, vals), &s))
          throw error("model value exceeds 64-bit range");
      if (s != 0) return false;
    }
    if (!include_nontorus)
      for (i64 v : vals)
        if (v == 0) return false;
    for (const auto& grp : m.gcd_one) {
      i64 g = 0;
      for (std::size_t i : grp) g = std::gcd(g, vals[i]);
      if (g != 1) return false;
    }
    for (const auto& rc : region) {
      i64 lp = 1, rp = rc.scale;
      for (std::size_t i = 0; i < vals.size(); ++i) {
        lp = mul_cap(lp, pow_cap(std::llabs(vals[i]), rc.lhs[i], kRegionCap),
                     kRegionCap);
        rp = mul_cap(rp, pow_cap(std::llabs(vals[i]), rc.rhs[i], kRegionCap),
                     kRegionCap);
      }
      if (lp > kRegionCap || rp > kRegionCap)
        throw error("region value exceeds 64-bit range");
      if (lp > rp) return false;
    }
    i64 h = 0;
    for (const auto& mono : m.height_monomials) {
      i64 v = 1;
      for (std::size_t i = 0; i < vals.size(); ++i)
        v = mul_cap(v, pow_cap(std::llabs(vals[i]), mono[i], t_max), t_max);
      h = std::max(h, v);
    }
    if (h < 1 || h > t_max) return false;
    height = h;
    return true;
  }

  // integer k-th roots of `rhs`, respecting parity
  static void kth_roots(i64 rhs, i64 k, std::vector<i64>& out) {
    out.clear();
    if (k % 2 == 0 && rhs < 0) return;
    i64 mag = std::llabs(rhs);
    i64 r = static_cast<i64>(std::round(std::pow(
        static_cast<double>(mag), 1.0 / static_cast<double>(k))));
    for (i64 cand = std::max<i64>(0, r - 2); cand <= r + 2; ++cand) {
      i64 p = 1;
      bool over = false;
      for (i64 i = 0; i < k; ++i)
        if (__builtin_mul_overflow(p, cand, &p)) {
          over = true;
          break;
        }
      if (over) break;
      if (p == mag) {
        if (rhs >= 0) {
          out.push_back(cand);
          if (k % 2 == 0 && cand != 0) out.push_back(-cand);
        } else {
          out.push_back(-cand);  // k odd
        }
        return;
      }
    }
  }

  void solve_from(std::size_t step, std::vector<i64>& vals,
                  std::vector<i64>& heights) const {
    if (step == plan.size()) {
      i64 h;
      std::vector<i64> copy = vals;
      if (check_point(copy, h)) heights.push_back(h);
      return;
    }
    const AffinePlanStep& ps = plan[step];
    const auto& eq = model->equations[ps.equation];
    i64 coef = 0, rest = 0;
    for (const auto& t : eq) {
      if (t.exps[ps.var] > 0) {
        // the variable's own power is excluded from the coefficient
        AffineModel::Term reduced = t;
        reduced.exps[ps.var] = 0;
        if (__builtin_add_overflow(coef, term_value(reduced, vals), &coef))
          throw error("model value exceeds 64-bit range");
      } else {
        if (__builtin_add_overflow(rest, term_value(t, vals), &rest))
          throw error("model value exceeds 64-bit range");
      }
    }
    if (coef == 0) {
      if (rest == 0)
        throw error("equation degenerates to 0 = 0; variable " +
                    model->vars[ps.var] + " is not determined");
      return;  // no solution for this prefix
    }
    if (rest % coef != 0) return;
    std::vector<i64> roots;
    kth_roots(-rest / coef, ps.power, roots);
    for (i64 r : roots) {
      vals[ps.var] = r;
      solve_from(step + 1, vals, heights);
    }
  }

  void search(std::size_t idx, std::vector<i64>& vals, i64 from, i64 to,
              std::vector<i64>& heights) const {
    if (idx == search_vars.size()) {
      solve_from(0, vals, heights);
      return;
    }
    std::size_t v = search_vars[idx];
    i64 b = search_bounds[idx];
    i64 lo = (idx == 0) ? std::max(from, -b) : -b;
    i64 hi = (idx == 0) ? std::min(to, b) : b;
    for (i64 x = lo; x <= hi; ++x) {
      if (x == 0 && !include_nontorus) continue;
      vals[v] = x;
      // prune on monomials fully determined so far
      bool ok = true;
      for (const auto& mono : model->height_monomials) {
        i64 p = 1;
        bool full = true;
        for (std::size_t i = 0; i < vals.size(); ++i) {
          if (mono[i] == 0) continue;
          if (vals[i] == kUnset) {
            full = false;
            break;
          }
          p = mul_cap(p, pow_cap(std::llabs(vals[i]), mono[i], t_max), t_max);
        }
        if (full && p > t_max) {
          // every monomial must stay within the bound
          ok = false;
          break;
        }
      }
      if (ok) search(idx + 1, vals, from, to, heights);
      vals[v] = kUnset;
    }
  }

  static constexpr i64 kUnset = std::numeric_limits<i64>::min();
};

AffineEnumerator make_affine_enumerator(const AffineModel& model, i64 t_max,
                                        const std::string& region_id,
                                        bool include_nontorus) {
  AffineEnumerator en;
  en.model = &model;
  en.t_max = t_max;
  en.include_nontorus = include_nontorus;
  if (!region_id.empty()) {
    auto it = model.regions.find(region_id);
    if (it == model.regions.end())
      throw validation_error("unknown region " + region_id);
    en.region = it->second;
  }
  const std::size_t n = model.vars.size();
  std::vector<char> assigned(n, 0);

  // search variables: bounded by a height monomial
  for (std::size_t v = 0; v < n; ++v) {
    i64 best = -1;
    for (const auto& mono : model.height_monomials) {
      if (mono[v] == 0) continue;
      bool pure = true;
      for (std::size_t w = 0; w < n; ++w)
        if (w != v && mono[w] > 0) pure = false;
      if (!pure && include_nontorus) continue;  // other factors may vanish
      i64 b = bound_solve(1, mono[v], t_max);
      if (best < 0 || b < best) best = b;
    }
    if (best >= 0) {
      en.search_vars.push_back(v);
      en.search_bounds.push_back(best);
      assigned[v] = 1;
    }
  }

  // derived variables: solved as pure powers from the equations
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (assigned[v]) continue;
      for (std::size_t e = 0; e < model.equations.size(); ++e) {
        const auto& eq = model.equations[e];
        i64 power = 0;
        bool usable = true;
        for (const auto& t : eq) {
          i64 ev = t.exps[v];
          for (std::size_t w = 0; w < n && usable; ++w)
            if (w != v && t.exps[w] > 0 && !assigned[w]) usable = false;
          if (!usable) break;
          if (ev > 0) {
            if (power == 0)
              power = ev;
            else if (power != ev)
              usable = false;
          }
        }
        if (usable && power > 0) {
          en.plan.push_back(AffinePlanStep{v, e, power});
          assigned[v] = 1;
          progress = true;
          break;
        }
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!assigned[v])
      throw error("variable " + model.vars[v] +
                  " is unbounded under the height");
  return en;
}

}  // namespace

std::vector<i64> affine_solution_heights(const AffineModel& model, i64 t_max,
                                         const std::string& region_id,
                                         bool include_nontorus) {
  AffineEnumerator en =
      make_affine_enumerator(model, t_max, region_id, include_nontorus);
  std::vector<i64> vals(model.vars.size(), AffineEnumerator::kUnset);
  std::vector<i64> heights;
  if (en.search_vars.empty()) {
    en.search(0, vals, 0, -1, heights);
  } else {
    i64 b = en.search_bounds[0];
    en.search(0, vals, -b, b, heights);
  }
  std::sort(heights.begin(), heights.end());
  return heights;
}

std::vector<CountRecord> enumerate_affine(const AffineModel& model,
                                          const AffineCountOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  if (opts.thresholds.empty()) throw error("no thresholds given");
  for (std::size_t i = 0; i + 1 < opts.thresholds.size(); ++i)
    if (opts.thresholds[i] >= opts.thresholds[i + 1])
      throw error("thresholds must be strictly increasing");
  i64 t_max = opts.thresholds.back();
  AffineEnumerator en = make_affine_enumerator(
      model, t_max, opts.region_id, opts.include_nontorus_points);

  unsigned workers = std::max(1u, opts.workers);
  std::vector<std::vector<i64>> parts(workers);
  if (en.search_vars.empty() || workers == 1) {
    std::vector<i64> vals(model.vars.size(), AffineEnumerator::kUnset);
    i64 b = en.search_vars.empty() ? 0 : en.search_bounds[0];
    en.search(0, vals, -b, b, parts[0]);
  } else {
    i64 b = en.search_bounds[0];
    i64 total = 2 * b + 1;
    i64 chunk = total / workers + 1;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      i64 lo = -b + static_cast<i64>(w) * chunk;
      i64 hi = std::min(b, lo + chunk - 1);
      if (lo > hi) continue;
      pool.emplace_back([&, w, lo, hi] {
        std::vector<i64> vals(model.vars.size(), AffineEnumerator::kUnset);
        en.search(0, vals, lo, hi, parts[w]);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<i64> heights;
  for (auto& p : parts) heights.insert(heights.end(), p.begin(), p.end());
  std::sort(heights.begin(), heights.end());

  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  std::vector<CountRecord> out;
  for (i64 t : opts.thresholds) {
    auto it = std::upper_bound(heights.begin(), heights.end(), t);
    out.push_back(CountRecord{
        model.id, opts.region_id.empty() ? "all" : opts.region_id, t,
        static_cast<i64>(it - heights.begin()), static_cast<i64>(ms)});
  }
  return out;
}

namespace {

void fit_preflight(const std::vector<CountRecord>& records) {
  if (records.size() < 6)
    throw error("fit needs at least 6 checkpoints");
  i64 tmin = records.front().t, tmax = records.front().t;
  for (const auto& r : records) {
    if (r.count <= 0) throw error("fit needs positive counts");
    if (r.t <= 0) throw error("fit needs positive height bounds");
    tmin = std::min(tmin, r.t);
    tmax = std::max(tmax, r.t);
  }
  if (tmax < 1000 * tmin)
    throw error("fit needs checkpoints spanning at least 3 decades");
}

}  // namespace

FitResult fit_asymptotics(const std::vector<CountRecord>& records) {
  fit_preflight(records);
  // normal equations for log N = a log T + (b-1) log log T + log c
  double m[3][3] = {{0}};
  double rhs[3] = {0};
  for (const auto& r : records) {
    double x0 = std::log(static_cast<double>(r.t));
    double x1 = std::log(x0);
    double x2 = 1.0;
    double y = std::log(static_cast<double>(r.count));
    double x[3] = {x0, x1, x2};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] += x[i] * x[j];
      rhs[i] += x[i] * y;
    }
  }
  // Cramer
  auto det3 = [](double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  double d = det3(m);
  if (std::abs(d) < 1e-9) throw error("degenerate design matrix in fit");
  double sol[3];
  for (int c = 0; c < 3; ++c) {
    double tmp[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) tmp[i][j] = (j == c) ? rhs[i] : m[i][j];
    sol[c] = det3(tmp) / d;
  }
  FitResult f;
  f.a_hat = sol[0];
  f.b_hat = sol[1] + 1.0;
  f.c_hat = std::exp(sol[2]);
  double ss = 0;
  for (const auto& r : records) {
    double x0 = std::log(static_cast<double>(r.t));
    double pred = sol[0] * x0 + sol[1] * std::log(x0) + sol[2];
    double res = std::log(static_cast<double>(r.count)) - pred;
    ss += res * res;
  }
  f.residual = std::sqrt(ss / static_cast<double>(records.size()));
  f.checkpoints = records.size();
  return f;
}

FitResult fit_asymptotics_given_a(const std::vector<CountRecord>& records,
                                  double a) {
  fit_preflight(records);
  double s11 = 0, s1 = 0, s0 = 0, sy1 = 0, sy = 0;
  for (const auto& r : records) {
    double x0 = std::log(static_cast<double>(r.t));
    double x1 = std::log(x0);
    double y = std::log(static_cast<double>(r.count)) - a * x0;
    s11 += x1 * x1;
    s1 += x1;
    s0 += 1.0;
    sy1 += x1 * y;
    sy += y;
  }
  double det = s11 * s0 - s1 * s1;
  if (std::abs(det) < 1e-12) throw error("degenerate design matrix in fit");
  double bm1 = (sy1 * s0 - sy * s1) / det;
  double lc = (s11 * sy - s1 * sy1) / det;
  FitResult f;
  f.a_hat = a;
  f.b_hat = bm1 + 1.0;
  f.c_hat = std::exp(lc);
  double ss = 0;
  for (const auto& r : records) {
    double x0 = std::log(static_cast<double>(r.t));
    double pred = a * x0 + bm1 * std::log(x0) + lc;
    double res = std::log(static_cast<double>(r.count)) - pred;
    ss += res * res;
  }
  f.residual = std::sqrt(ss / static_cast<double>(records.size()));
  f.checkpoints = records.size();
  return f;
}

void write_count_csv(std::ostream& os, const std::vector<CountRecord>& recs) {
  os << "model_id,region_id,T,N,millis\n";
  for (const auto& r : recs)
    os << r.model_id << "," << r.region_id << "," << r.t << "," << r.count
       << "," << r.millis << "\n";
}

std::vector<CountRecord> read_count_csv(std::istream& is) {
  std::vector<CountRecord> out;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("model_id", 0) == 0) continue;
    }
    std::istringstream ss(line);
    CountRecord r;
    std::string t, n, ms;
    if (!std::getline(ss, r.model_id, ',') ||
        !std::getline(ss, r.region_id, ',') || !std::getline(ss, t, ',') ||
        !std::getline(ss, n, ',') || !std::getline(ss, ms, ','))
      throw error("malformed count CSV line: " + line);
    r.t = std::stoll(t);
    r.count = std::stoll(n);
    r.millis = std::stoll(ms);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<i64> default_schedule(i64 t_max) {
  std::vector<i64> s;
  for (i64 t = 1000; t <= t_max; t *= 2) s.push_back(t);
  if (s.empty() || s.back() != t_max) s.push_back(t_max);
  return s;
}

}  // namespace toric
