#include "toric/clemens.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace toric {

std::vector<ClemensFace> clemens_complex(
    const Fan& f, const std::vector<std::size_t>& boundary_rays) {
  std::set<std::size_t> b(boundary_rays.begin(), boundary_rays.end());
  for (std::size_t i : boundary_rays)
    if (i >= f.ray_count())
      throw validation_error("boundary ray index out of range");
  std::vector<ClemensFace> faces;
  for (const auto& c : f.cones()) {
    bool ok = true;
    for (std::size_t i : c)
      if (!b.count(i)) {
        ok = false;
        break;
      }
    if (ok) faces.push_back(ClemensFace{c});
  }
  std::sort(faces.begin(), faces.end(),
            [](const ClemensFace& x, const ClemensFace& y) {
              if (x.rays.size() != y.rays.size())
                return x.rays.size() < y.rays.size();
              return x.rays < y.rays;
            });
  return faces;
}

void validate_face_spec(const Fan& f,
                        const std::vector<std::size_t>& boundary_rays,
                        const AdelicFaceSpec& spec) {
  std::set<std::size_t> b(boundary_rays.begin(), boundary_rays.end());
  for (const auto& e : spec.entries) {
    if (!f.has_cone(e.face.rays))
      throw validation_error("face " + cone_name(e.face.rays) +
                             " at place " + e.place +
                             " is not a cone of the fan");
    for (std::size_t i : e.face.rays)
      if (!b.count(i))
        throw validation_error("face ray " + std::to_string(i) +
                               " at place " + e.place +
                               " is not a boundary ray");
  }
}

AdelicPicard::AdelicPicard(const Fan& f, std::vector<std::size_t> boundary_rays,
                           AdelicFaceSpec spec)
    : fan_(f), boundary_(std::move(boundary_rays)), spec_(std::move(spec)) {
  std::sort(boundary_.begin(), boundary_.end());
  validate_face_spec(f, boundary_, spec_);
  // Drop empty per-place faces; they are the same as omitting the place.
  spec_.entries.erase(
      std::remove_if(spec_.entries.begin(), spec_.entries.end(),
                     [](const AdelicFaceSpec::Entry& e) {
                       return e.face.rays.empty();
                     }),
      spec_.entries.end());

  const std::size_t r = f.ray_count();
  const std::size_t n = f.lattice_rank();
  marker_offset_.clear();
  std::size_t t = 0;
  for (const auto& e : spec_.entries) {
    marker_offset_.push_back(r + t);
    t += e.face.rays.size();
  }
  total_rank_ = r + t;

  // relations: principal divisors, then one per boundary divisor
  // identifying its Pic X image with the sum of its place markers.
  IntMat rel(total_rank_, n + boundary_.size());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) rel(i, j) = f.ray(i)[j];
  for (std::size_t k = 0; k < boundary_.size(); ++k) {
    std::size_t alpha = boundary_[k];
    rel(alpha, n + k) = 1;
    for (std::size_t v = 0; v < spec_.entries.size(); ++v) {
      const auto& rays = spec_.entries[v].face.rays;
      auto it = std::lower_bound(rays.begin(), rays.end(), alpha);
      if (it != rays.end() && *it == alpha) {
        std::size_t pos = static_cast<std::size_t>(it - rays.begin());
        rel(marker_offset_[v] + pos, n + k) = -1;
      }
    }
  }
  pres_ = CokernelPresentation(total_rank_, rel);

  // effective cone + labeled generators
  std::set<std::size_t> bset(boundary_.begin(), boundary_.end());
  std::vector<IntVec> eff_gens;
  for (std::size_t i = 0; i < r; ++i) {
    IntVec e(total_rank_, Int(0));
    e[i] = 1;
    DivisorClass c = pres_.class_of(e);
    eff_gens.push_back(c.free);
    if (!bset.count(i))
      gens_.push_back(Generator{std::move(c), false, 0, i});
  }
  for (std::size_t v = 0; v < spec_.entries.size(); ++v) {
    const auto& rays = spec_.entries[v].face.rays;
    for (std::size_t pos = 0; pos < rays.size(); ++pos) {
      IntVec e(total_rank_, Int(0));
      e[marker_offset_[v] + pos] = 1;
      DivisorClass c = pres_.class_of(e);
      eff_gens.push_back(c.free);
      gens_.push_back(Generator{std::move(c), true, v, rays[pos]});
    }
  }
  eff_.cone = ConeData::make(pres_.free_rank(), std::move(eff_gens));
}

DivisorClass AdelicPicard::from_ray_vector(const IntVec& lambda) const {
  if (lambda.size() != fan_.ray_count())
    throw error("ray vector has wrong length");
  IntVec v(total_rank_, Int(0));
  for (std::size_t i = 0; i < lambda.size(); ++i) v[i] = lambda[i];
  return pres_.class_of(v);
}

DivisorClass AdelicPicard::place_marker(std::size_t v, std::size_t ray) const {
  const auto& rays = spec_.entries.at(v).face.rays;
  auto it = std::lower_bound(rays.begin(), rays.end(), ray);
  if (it == rays.end() || *it != ray)
    throw error("ray is not part of the face at this place");
  IntVec e(total_rank_, Int(0));
  e[marker_offset_[v] + static_cast<std::size_t>(it - rays.begin())] = 1;
  return pres_.class_of(e);
}

DivisorClass AdelicPicard::log_canonical() const {
  std::set<std::size_t> bset(boundary_.begin(), boundary_.end());
  IntVec lambda(fan_.ray_count(), Int(0));
  for (std::size_t i = 0; i < lambda.size(); ++i)
    if (!bset.count(i)) lambda[i] = -1;
  return from_ray_vector(lambda);
}

AdelicPicard adelic_picard(const Fan& f,
                           const std::vector<std::size_t>& boundary_rays,
                           const AdelicFaceSpec& spec) {
  return AdelicPicard(f, boundary_rays, spec);
}

ObstructionReport analytic_obstruction(
    const Fan& f, const std::vector<std::size_t>& boundary_rays,
    const AdelicFaceSpec& spec) {
  validate_face_spec(f, boundary_rays, spec);
  std::set<std::size_t> constrained;
  std::set<std::size_t> bset(boundary_rays.begin(), boundary_rays.end());
  for (std::size_t i = 0; i < f.ray_count(); ++i)
    if (!bset.count(i)) constrained.insert(i);  // rays of U
  for (const auto& e : spec.entries)
    for (std::size_t i : e.face.rays) constrained.insert(i);
  std::vector<IntVec> gens;
  for (std::size_t i : constrained) gens.push_back(f.ray(i));
  ConeData c;
  c.ambient_rank = f.lattice_rank();
  c.generators = std::move(gens);
  ConeData d = dual_cone(c);
  ObstructionReport rep;
  if (!d.generators.empty()) {
    rep.obstructed = true;
    rep.witness = d.generators.front();
  }
  return rep;
}

double ArchimedeanConstant::value() const {
  double v = static_cast<double>(factor.convert_to<double>());
  v *= std::pow(2.0, static_cast<double>(two_exp));
  v *= std::pow(3.14159265358979323846, static_cast<double>(pi_exp));
  return v;
}

ArchimedeanConstant archimedean_constant(const AdelicFaceSpec& spec) {
  ArchimedeanConstant c;
  for (const auto& e : spec.entries) {
    long k = static_cast<long>(e.face.rays.size());
    if (e.complex_place) {
      c.two_exp += k;
      c.pi_exp += k;
    } else {
      c.two_exp += k;
    }
  }
  return c;
}

}  // namespace toric
