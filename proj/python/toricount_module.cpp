// Python bindings for the main operations: fans, Picard data, Clemens
// complexes, growth predictions, X-functions, densities and point counts.

#include "toric/acceptance.hpp"
#include "toric/counter.hpp"
#include "toric/density.hpp"
#include "toric/fixtures.hpp"
#include "toric/invariants.hpp"
#include "toric/xfunction.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace toric;

namespace {

IntVec to_intvec(const std::vector<long long>& v) {
  IntVec out;
  out.reserve(v.size());
  for (long long x : v) out.emplace_back(x);
  return out;
}

RatVec to_ratvec(const std::vector<std::pair<long long, long long>>& v) {
  RatVec out;
  for (const auto& [num, den] : v) out.emplace_back(Rat(num, den));
  return out;
}

ConeData make_cone(std::size_t ambient,
                   const std::vector<std::vector<long long>>& gens) {
  std::vector<IntVec> g;
  for (const auto& v : gens) g.push_back(to_intvec(v));
  return ConeData::make(ambient, std::move(g));
}

AdelicFaceSpec make_spec(
    const std::vector<std::tuple<std::string, bool, std::vector<std::size_t>>>&
        places) {
  AdelicFaceSpec spec;
  for (const auto& [name, complex_place, rays] : places) {
    std::vector<std::size_t> sorted = rays;
    std::sort(sorted.begin(), sorted.end());
    spec.entries.push_back({name, complex_place, ClemensFace{sorted}});
  }
  return spec;
}

py::dict prediction_dict(const GrowthPrediction& g) {
  py::dict d;
  d["obstructed"] = g.obstructed;
  if (g.obstructed) {
    std::vector<long long> w;
    for (const Int& x : *g.witness) w.push_back(x.convert_to<long long>());
    d["witness"] = w;
  } else {
    d["a_num"] = numerator(g.a).convert_to<long long>();
    d["a_den"] = denominator(g.a).convert_to<long long>();
    d["b"] = g.b;
    d["rigid"] = g.rigid;
    d["rank"] = g.adelic_rank;
  }
  d["c_arch_two_exp"] = g.c_arch.two_exp;
  d["c_arch_pi_exp"] = g.c_arch.pi_exp;
  d["c_arch"] = g.c_arch.value();
  return d;
}

}  // namespace

PYBIND11_MODULE(toricount, m) {
  m.doc() =
      "Exact combinatorial invariants and point counts for integral points "
      "on split toric varieties";

  py::register_exception<validation_error>(m, "ValidationError");

  py::class_<Fan>(m, "Fan")
      .def_static("from_json", [](const std::string& text) {
        return load_fan(text);
      })
      .def_static("from_file", [](const std::string& path) {
        return load_fan_file(path);
      })
      .def_property_readonly("lattice_rank", &Fan::lattice_rank)
      .def_property_readonly("ray_count", &Fan::ray_count)
      .def_property_readonly("boundary_rays",
                             [](const Fan& f) { return f.boundary_rays; })
      .def_property_readonly("rays",
                             [](const Fan& f) {
                               std::vector<std::vector<long long>> out;
                               for (const IntVec& r : f.rays()) {
                                 std::vector<long long> row;
                                 for (const Int& x : r)
                                   row.push_back(x.convert_to<long long>());
                                 out.push_back(std::move(row));
                               }
                               return out;
                             })
      .def_property_readonly("cones", [](const Fan& f) { return f.cones(); })
      .def("is_smooth", [](const Fan& f) { return is_smooth(f); })
      .def("is_complete", [](const Fan& f) { return is_complete(f); });

  m.def("fixture_path", &fixture_path);
  m.def("load_fixture", &load_fixture);

  m.def("smith_normal_form",
        [](const std::vector<std::vector<long long>>& rows) {
          std::vector<IntVec> r;
          for (const auto& row : rows) r.push_back(to_intvec(row));
          SmithResult sr = smith_normal_form(IntMat::from_rows(r));
          auto conv = [](const IntMat& m) {
            std::vector<std::vector<long long>> out(m.rows());
            for (std::size_t i = 0; i < m.rows(); ++i)
              for (std::size_t j = 0; j < m.cols(); ++j)
                out[i].push_back(m(i, j).convert_to<long long>());
            return out;
          };
          return py::make_tuple(conv(sr.U), conv(sr.S), conv(sr.V));
        });

  m.def("picard_summary", [](const Fan& f) {
    PicardData p = picard_group(f);
    py::dict d;
    d["free_rank"] = p.free_rank();
    std::vector<long long> tors;
    for (const Int& t : p.torsion_orders())
      tors.push_back(t.convert_to<long long>());
    d["torsion"] = tors;
    std::vector<long long> k;
    for (const Int& x : anticanonical_class(p).free)
      k.push_back(x.convert_to<long long>());
    d["anticanonical_free"] = k;
    return d;
  });

  m.def("clemens_faces",
        [](const Fan& f, const std::vector<std::size_t>& boundary) {
          std::vector<std::pair<std::vector<std::size_t>, long>> out;
          for (const auto& face : clemens_complex(f, boundary))
            out.emplace_back(face.rays, face.dim());
          return out;
        });

  m.def(
      "predict",
      [](const Fan& f, const std::vector<std::size_t>& boundary,
         const std::vector<std::tuple<std::string, bool,
                                      std::vector<std::size_t>>>& places,
         const std::optional<std::vector<long long>>& lambda) {
        std::optional<IntVec> l;
        if (lambda) l = to_intvec(*lambda);
        return prediction_dict(
            predict_growth(f, boundary, make_spec(places), l));
      },
      py::arg("fan"), py::arg("boundary"), py::arg("places"),
      py::arg("lambda_") = std::nullopt);

  m.def("analytic_obstruction_witness",
        [](const Fan& f, const std::vector<std::size_t>& boundary,
           const std::vector<std::tuple<std::string, bool,
                                        std::vector<std::size_t>>>& places)
            -> std::optional<std::vector<long long>> {
          ObstructionReport r =
              analytic_obstruction(f, boundary, make_spec(places));
          if (!r.obstructed) return std::nullopt;
          std::vector<long long> w;
          for (const Int& x : *r.witness) w.push_back(x.convert_to<long long>());
          return w;
        });

  m.def("adelic_rank",
        [](const Fan& f, const std::vector<std::size_t>& boundary,
           const std::vector<std::tuple<std::string, bool,
                                        std::vector<std::size_t>>>& places) {
          return adelic_picard(f, boundary, make_spec(places)).free_rank();
        });

  m.def("cone_x_function",
        [](std::size_t ambient, const std::vector<std::vector<long long>>& gens,
           const std::vector<std::pair<long long, long long>>& s,
           long long torsion) {
          Rat v = cone_x_function(make_cone(ambient, gens), to_ratvec(s),
                                  Int(torsion));
          return py::make_tuple(numerator(v).convert_to<long long>(),
                                denominator(v).convert_to<long long>());
        },
        py::arg("ambient"), py::arg("generators"), py::arg("s"),
        py::arg("torsion") = 1);

  m.def("denef_density",
        [](const Fan& f, long long q,
           const std::vector<std::pair<long long, long long>>& z) {
          LocalDensityQuery qry{&f, nullptr, Int(q), to_ratvec(z)};
          DensityValue d = denef_density(qry);
          py::dict out;
          out["exact"] = d.exact;
          out["value"] = d.to_double();
          if (d.exact) {
            out["num"] = numerator(d.rational).convert_to<long long>();
            out["den"] = denominator(d.rational).convert_to<long long>();
          }
          return out;
        });

  m.def("euler_product",
        [](const Fan& f, const std::vector<std::pair<long long, long long>>& z,
           unsigned long bound) {
          EulerProductResult r = euler_product(f, to_ratvec(z), bound);
          return py::make_tuple(r.raw, r.normalized, r.primes_used);
        });

  m.def(
      "count_cox",
      [](const Fan& f, const std::vector<std::size_t>& u_rays,
         const std::vector<long long>& lambda,
         const std::vector<long long>& thresholds, bool include_boundary,
         unsigned workers) {
        HeightSpec h(f, to_intvec(lambda));
        CoxCountOptions opts;
        opts.thresholds.assign(thresholds.begin(), thresholds.end());
        opts.include_boundary_points = include_boundary;
        opts.workers = workers;
        auto recs = enumerate_cox(f, u_rays, h, opts);
        std::vector<std::pair<long long, long long>> out;
        for (const auto& r : recs) out.emplace_back(r.t, r.count);
        return out;
      },
      py::arg("fan"), py::arg("u_rays"), py::arg("lambda_"),
      py::arg("thresholds"), py::arg("include_boundary") = false,
      py::arg("workers") = 1);

  m.def("count_affine_file",
        [](const std::string& path, const std::vector<long long>& thresholds,
           const std::string& region, unsigned workers) {
          AffineModel model = load_affine_model_file(path);
          AffineCountOptions opts;
          opts.thresholds.assign(thresholds.begin(), thresholds.end());
          opts.region_id = region;
          opts.workers = workers;
          auto recs = enumerate_affine(model, opts);
          std::vector<std::pair<long long, long long>> out;
          for (const auto& r : recs) out.emplace_back(r.t, r.count);
          return out;
        },
        py::arg("path"), py::arg("thresholds"), py::arg("region") = "",
        py::arg("workers") = 1);

  m.def("fit_asymptotics",
        [](const std::vector<std::pair<long long, long long>>& points) {
          std::vector<CountRecord> recs;
          for (const auto& [t, n] : points)
            recs.push_back({"py", "all", t, n, 0});
          FitResult f = fit_asymptotics(recs);
          return py::make_tuple(f.a_hat, f.b_hat, f.c_hat);
        });

  m.def("run_acceptance", [](unsigned workers) {
    std::ostringstream ss;
    bool ok = run_acceptance(ss, workers);
    return py::make_tuple(ok, ss.str());
  });
}
