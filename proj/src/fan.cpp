#include "toric/fan.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace toric {

using nlohmann::json;

std::string cone_name(const std::vector<std::size_t>& c) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < c.size(); ++i)
    os << (i ? "," : "") << c[i];
  os << "}";
  return os.str();
}

Fan::Fan(std::size_t lattice_rank, std::vector<IntVec> rays,
         std::vector<std::vector<std::size_t>> max_cones)
    : rank_(lattice_rank), rays_(std::move(rays)) {
  if (rank_ == 0) throw validation_error("lattice_rank must be positive");
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    if (rays_[i].size() != rank_)
      throw validation_error("ray " + std::to_string(i) +
                             " has wrong dimension");
    if (is_zero(rays_[i]))
      throw validation_error("ray " + std::to_string(i) + " is zero");
    if (vec_gcd(rays_[i]) != 1)
      throw validation_error("ray " + std::to_string(i) + " not primitive");
  }
  for (std::size_t i = 0; i < rays_.size(); ++i)
    for (std::size_t j = i + 1; j < rays_.size(); ++j)
      if (rays_[i] == rays_[j])
        throw validation_error("duplicate ray " + std::to_string(j));

  // The fan is the closure of the listed cones and all rays.
  std::set<std::vector<std::size_t>> closure;
  closure.insert(std::vector<std::size_t>{});
  for (std::size_t i = 0; i < rays_.size(); ++i) closure.insert({i});
  for (auto c : max_cones) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (std::size_t idx : c)
      if (idx >= rays_.size())
        throw validation_error("dangling ray index " + std::to_string(idx) +
                               " in cone " + cone_name(c));
    std::vector<IntVec> gens;
    for (std::size_t idx : c) gens.push_back(rays_[idx]);
    if (!gens.empty() &&
        rank(IntMat::from_rows(gens)) != gens.size())
      throw validation_error("cone " + cone_name(c) +
                             " rays linearly dependent");
    // simplicial cone: faces are exactly the ray subsets
    const std::size_t k = c.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
      std::vector<std::size_t> face;
      for (std::size_t b = 0; b < k; ++b)
        if (mask & (std::size_t(1) << b)) face.push_back(c[b]);
      closure.insert(std::move(face));
    }
  }
  cones_.assign(closure.begin(), closure.end());

  // Fan axiom: the intersection of any two cones equals their common face.
  // The intersection is computed exactly from the two dual descriptions.
  for (std::size_t a = 0; a < cones_.size(); ++a)
    for (std::size_t b = a + 1; b < cones_.size(); ++b) {
      const auto& ca = cones_[a];
      const auto& cb = cones_[b];
      if (ca.empty() || cb.empty()) continue;
      if (std::includes(ca.begin(), ca.end(), cb.begin(), cb.end()) ||
          std::includes(cb.begin(), cb.end(), ca.begin(), ca.end()))
        continue;
      std::vector<std::size_t> common;
      std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(),
                            std::back_inserter(common));
      ConeData A = cone_data(ca);
      ConeData B = cone_data(cb);
      ConeData C = cone_data(common);
      std::vector<IntVec> constraints = dual_cone(A).generators;
      ConeData dual_b = dual_cone(B);
      for (IntVec& g : dual_b.generators) constraints.push_back(std::move(g));
      ConeData inter;
      inter.ambient_rank = rank_;
      inter.generators = std::move(constraints);
      ConeData inter_gens = dual_cone(inter);  // dual of the normals = A cap B
      for (const IntVec& g : inter_gens.generators)
        if (!cone_contains(C, g))
          throw validation_error("cones " + cone_name(ca) + " and " +
                                 cone_name(cb) +
                                 " intersect outside their common face " +
                                 cone_name(common));
    }

  // recompute maximal cones
  for (const auto& c : cones_) {
    bool maximal = true;
    for (const auto& d : cones_) {
      if (&c == &d || d.size() <= c.size()) continue;
      if (std::includes(d.begin(), d.end(), c.begin(), c.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal && !c.empty()) max_cones_.push_back(c);
  }
  if (max_cones_.empty() && !cones_.empty()) max_cones_.push_back({});
}

bool Fan::has_cone(const std::vector<std::size_t>& ray_set) const {
  std::vector<std::size_t> s = ray_set;
  std::sort(s.begin(), s.end());
  return std::binary_search(cones_.begin(), cones_.end(), s);
}

ConeData Fan::cone_data(const std::vector<std::size_t>& ray_set) const {
  std::vector<IntVec> gens;
  for (std::size_t i : ray_set) gens.push_back(rays_.at(i));
  return ConeData::make(rank_, std::move(gens));
}

namespace {

std::vector<std::size_t> parse_index_list(const json& j, std::size_t bound,
                                          const char* what) {
  std::vector<std::size_t> out;
  for (const auto& e : j) {
    long long v = e.get<long long>();
    if (v < 0 || static_cast<std::size_t>(v) >= bound)
      throw validation_error(std::string("dangling ray index in ") + what);
    out.push_back(static_cast<std::size_t>(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Fan load_fan(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw validation_error(std::string("fan file is not valid JSON: ") +
                           e.what());
  }
  if (!j.contains("lattice_rank") || !j.contains("rays") ||
      !j.contains("max_cones"))
    throw validation_error(
        "fan file needs lattice_rank, rays and max_cones fields");
  std::size_t n = j["lattice_rank"].get<std::size_t>();
  std::vector<IntVec> rays;
  for (const auto& r : j["rays"]) {
    IntVec v;
    for (const auto& x : r) v.emplace_back(x.get<long long>());
    rays.push_back(std::move(v));
  }
  std::vector<std::vector<std::size_t>> max_cones;
  for (const auto& c : j["max_cones"]) {
    std::vector<std::size_t> idx;
    for (const auto& x : c) {
      long long v = x.get<long long>();
      if (v < 0 || static_cast<std::size_t>(v) >= rays.size())
        throw validation_error("dangling ray index " + std::to_string(v) +
                               " in max_cones");
      idx.push_back(static_cast<std::size_t>(v));
    }
    max_cones.push_back(std::move(idx));
  }
  Fan f(n, std::move(rays), std::move(max_cones));

  if (j.contains("boundary_rays"))
    f.boundary_rays =
        parse_index_list(j["boundary_rays"], f.ray_count(), "boundary_rays");
  if (j.contains("places")) {
    for (const auto& p : j["places"]) {
      PlaceFace pf;
      pf.name = p.at("name").get<std::string>();
      std::string kind = p.at("kind").get<std::string>();
      if (kind == "complex")
        pf.complex_place = true;
      else if (kind == "real")
        pf.complex_place = false;
      else
        throw validation_error("place kind must be \"real\" or \"complex\"");
      pf.rays = parse_index_list(p.at("face_rays"), f.ray_count(), "places");
      f.places.push_back(std::move(pf));
    }
  }
  if (j.contains("action")) {
    for (const auto& g : j["action"].at("generators")) {
      std::vector<std::size_t> perm;
      for (const auto& x : g) {
        long long v = x.get<long long>();
        if (v < 0 || static_cast<std::size_t>(v) >= f.ray_count())
          throw validation_error("action generator image out of range");
        perm.push_back(static_cast<std::size_t>(v));
      }
      if (perm.size() != f.ray_count())
        throw validation_error("action generator has wrong length");
      f.action_generators.push_back(std::move(perm));
    }
  }
  return f;
}

Fan load_fan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open fan file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_fan(ss.str());
}

bool is_smooth(const Fan& f) {
  for (const auto& c : f.cones()) {
    if (c.empty()) continue;
    std::vector<IntVec> gens;
    for (std::size_t i : c) gens.push_back(f.ray(i));
    SmithResult sr = smith_normal_form(IntMat::from_rows(gens));
    for (std::size_t k = 0; k < c.size(); ++k)
      if (sr.S(k, k) != 1) return false;
  }
  return true;
}

bool is_complete(const Fan& f) {
  const auto& mc = f.maximal_cones();
  if (mc.empty()) return false;
  for (const auto& c : mc)
    if (c.size() != f.lattice_rank()) return false;
  for (const auto& c : mc) {
    for (std::size_t drop = 0; drop < c.size(); ++drop) {
      std::vector<std::size_t> facet;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (i != drop) facet.push_back(c[i]);
      std::size_t shared = 0;
      for (const auto& d : mc)
        if (std::includes(d.begin(), d.end(), facet.begin(), facet.end()))
          ++shared;
      if (shared != 2) return false;
    }
  }
  return true;
}

Fan subfan(const Fan& f, const std::set<std::size_t>& allowed_rays,
           std::map<std::size_t, std::size_t>* ray_map) {
  std::vector<IntVec> rays;
  std::map<std::size_t, std::size_t> remap;
  for (std::size_t i : allowed_rays) {
    remap[i] = rays.size();
    rays.push_back(f.ray(i));
  }
  std::vector<std::vector<std::size_t>> cones;
  for (const auto& c : f.cones()) {
    if (c.empty()) continue;
    bool ok = true;
    for (std::size_t i : c)
      if (!allowed_rays.count(i)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    std::vector<std::size_t> mapped;
    for (std::size_t i : c) mapped.push_back(remap[i]);
    cones.push_back(std::move(mapped));
  }
  if (ray_map) *ray_map = remap;
  if (rays.empty()) {
    // the zero fan still needs a positive lattice rank
    Fan zf(f.lattice_rank(), {}, {});
    return zf;
  }
  return Fan(f.lattice_rank(), std::move(rays), std::move(cones));
}

std::vector<std::vector<std::vector<std::size_t>>> GroupAction::cone_orbits()
    const {
  std::vector<std::vector<std::vector<std::size_t>>> orbits;
  std::set<std::vector<std::size_t>> seen;
  for (const auto& c : fan_.cones()) {
    if (seen.count(c)) continue;
    std::vector<std::vector<std::size_t>> orbit;
    for (const auto& g : elements_) {
      std::vector<std::size_t> img;
      for (std::size_t i : c) img.push_back(g[i]);
      std::sort(img.begin(), img.end());
      if (!seen.count(img)) {
        seen.insert(img);
        orbit.push_back(std::move(img));
      }
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

std::vector<std::vector<std::size_t>> GroupAction::fixed_cones() const {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& c : fan_.cones()) {
    bool fixed = true;
    for (const auto& g : elements_) {
      std::vector<std::size_t> img;
      for (std::size_t i : c) img.push_back(g[i]);
      std::sort(img.begin(), img.end());
      if (img != c) {
        fixed = false;
        break;
      }
    }
    if (fixed) out.push_back(c);
  }
  return out;
}

std::vector<std::vector<std::size_t>> GroupAction::orbits_within(
    const std::vector<std::size_t>& cone) const {
  std::vector<std::vector<std::size_t>> out;
  std::set<std::size_t> seen;
  for (std::size_t i : cone) {
    if (seen.count(i)) continue;
    std::vector<std::size_t> orbit;
    for (const auto& g : elements_)
      if (!seen.count(g[i])) {
        seen.insert(g[i]);
        orbit.push_back(g[i]);
      }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

GroupAction attach_action(const Fan& f,
                          const std::vector<std::vector<std::size_t>>& perms) {
  const std::size_t r = f.ray_count();
  const std::size_t n = f.lattice_rank();

  std::vector<IntVec> all_rays = f.rays();
  if (rank(IntMat::from_rows(all_rays)) != n)
    throw validation_error("group actions require rays spanning R^n");

  for (const auto& p : perms) {
    if (p.size() != r)
      throw validation_error("action generator has wrong length");
    std::vector<char> hit(r, 0);
    for (std::size_t v : p) {
      if (v >= r || hit[v])
        throw validation_error("action generator is not a permutation");
      hit[v] = 1;
    }
    // every cone must map to a cone; checked first so the error can name
    // the violated cone
    for (const auto& c : f.maximal_cones()) {
      std::vector<std::size_t> img;
      for (std::size_t i : c) img.push_back(p[i]);
      std::sort(img.begin(), img.end());
      if (!f.has_cone(img))
        throw validation_error("action generator maps cone " + cone_name(c) +
                               " to " + cone_name(img) +
                               " which is not in the fan");
    }
    // The permutation must come from a lattice automorphism g with
    // g(n_rho) = n_{p(rho)}; solve for g from the ray matrix.
    IntMat rm = IntMat::from_rows(all_rays);          // r x n
    std::vector<IntVec> img_rows;
    for (std::size_t i = 0; i < r; ++i) img_rows.push_back(f.ray(p[i]));
    IntMat im = IntMat::from_rows(img_rows);          // r x n
    // find G (n x n) with rm * G^T = im, column by column of G^T
    IntMat gt(n, n);
    for (std::size_t cidx = 0; cidx < n; ++cidx) {
      RatVec b(r), x;
      for (std::size_t i = 0; i < r; ++i) b[i] = Rat(im(i, cidx));
      if (!solve_rational(rm, b, x))
        throw validation_error(
            "action generator does not extend to a linear map");
      for (std::size_t i = 0; i < n; ++i) {
        if (denominator(x[i]) != 1)
          throw validation_error(
              "action generator does not preserve the lattice");
        gt(i, cidx) = numerator(x[i]);
      }
    }
    Int det = determinant(gt);
    if (det != 1 && det != -1)
      throw validation_error("action generator is not a lattice automorphism");
  }

  // closure
  std::set<std::vector<std::size_t>> elems;
  std::vector<std::size_t> id(r);
  for (std::size_t i = 0; i < r; ++i) id[i] = i;
  elems.insert(id);
  std::vector<std::vector<std::size_t>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& e : frontier)
      for (const auto& g : perms) {
        std::vector<std::size_t> prod(r);
        for (std::size_t i = 0; i < r; ++i) prod[i] = g[e[i]];
        if (elems.insert(prod).second) {
          if (elems.size() > GroupAction::kClosureCap)
            throw validation_error("group closure exceeds cap of 10000");
          next.push_back(std::move(prod));
        }
      }
    frontier = std::move(next);
  }

  GroupAction a;
  a.fan_ = f;
  a.elements_.assign(elems.begin(), elems.end());
  a.orbit_index_.assign(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    if (a.orbit_index_[i] != r) continue;
    std::vector<std::size_t> orbit;
    for (const auto& g : a.elements_)
      if (a.orbit_index_[g[i]] == r) {
        a.orbit_index_[g[i]] = a.ray_orbits_.size();
        orbit.push_back(g[i]);
      }
    std::sort(orbit.begin(), orbit.end());
    a.ray_orbits_.push_back(std::move(orbit));
  }
  return a;
}

}  // namespace toric
