// Python bindings. Vectors cross the boundary as lists of rational strings
// ("p/q" or "p"); the package wrapper in python/conival/__init__.py converts
// ints and fractions.Fraction transparently. Structured results come back as
// JSON strings and are decoded on the Python side.

#include "conival/io.hpp"
#include "conival/projection.hpp"
#include "conival/suite.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

namespace py = pybind11;
using conival::io::json;

namespace {

using Rows = std::vector<std::vector<std::string>>;

std::vector<conival::Vec> to_vecs(const Rows& rows) {
    std::vector<conival::Vec> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(conival::vec_from_strings(r));
    return out;
}

conival::Vec to_vec(const std::vector<std::string>& row) { return conival::vec_from_strings(row); }

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const std::exception& e) {
        throw conival::parse_error(std::string("invalid json: ") + e.what());
    }
}

conival::CheckReport verify_arrangement(const std::string& theorem, const conival::Arrangement& a,
                                        int k) {
    auto each_k = [&](auto&& run) {
        conival::CheckReport total{true, ""};
        auto fold = [&](const conival::CheckReport& r) {
            total.ok = total.ok && r.ok;
            if (!total.detail.empty()) total.detail += "\n";
            total.detail += r.detail;
        };
        if (k >= 0)
            fold(run(k));
        else
            for (int kk = 0; kk <= a.dim(); ++kk) fold(run(kk));
        return total;
    };
    if (theorem == "key") return conival::lemma_key_check(a);
    if (theorem == "vk-arr") return each_k([&](int kk) { return conival::theorem_vk_arr_check(a, kk); });
    if (theorem == "ks-classes") return conival::klivans_swartz_indicator_check(a);
    throw conival::parse_error("unknown arrangement theorem '" + theorem + "'");
}

conival::CheckReport verify_cone(const std::string& theorem, const conival::Cone& c,
                                 const std::vector<std::string>& normal, int k) {
    auto each_k = [&](auto&& run) {
        conival::CheckReport total{true, ""};
        auto fold = [&](const conival::CheckReport& r) {
            total.ok = total.ok && r.ok;
            if (!total.detail.empty()) total.detail += "\n";
            total.detail += r.detail;
        };
        if (k >= 0)
            fold(run(k));
        else
            for (int kk = 0; kk <= c.ambient_dim(); ++kk) fold(run(kk));
        return total;
    };
    if (theorem == "vk-val") {
        if (normal.empty()) throw conival::parse_error("vk-val needs a hyperplane normal");
        const conival::Vec n = to_vec(normal);
        return each_k([&](int kk) { return conival::verify_vk_valuation(c, n, kk); });
    }
    if (theorem == "polar-duality")
        return each_k([&](int kk) { return conival::verify_polar_duality(c, kk); });
    if (theorem == "hug-kabluchko") return conival::hug_kabluchko_check(c);
    if (theorem == "sommerville") return conival::sommerville_check(c);
    if (theorem == "moreau-iso") return conival::check_moreau_isomorphism(c);
    throw conival::parse_error("unknown cone theorem '" + theorem + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact valuations on polyhedral cones, fans and central hyperplane arrangements";

    py::register_exception<conival::parse_error>(m, "ParseError");

    py::class_<conival::CheckReport>(m, "CheckReport")
        .def_readonly("ok", &conival::CheckReport::ok)
        .def_readonly("detail", &conival::CheckReport::detail)
        .def("__bool__", [](const conival::CheckReport& r) { return r.ok; })
        .def("__repr__", [](const conival::CheckReport& r) {
            return std::string("CheckReport(ok=") + (r.ok ? "True" : "False") + ")";
        });

    py::class_<conival::Cone>(m, "Cone")
        .def_static(
            "from_rays",
            [](int d, const Rows& rays, const Rows& lineality) {
                return conival::Cone::from_generators(d, to_vecs(rays), to_vecs(lineality));
            },
            py::arg("ambient_dim"), py::arg("rays"), py::arg("lineality") = Rows{})
        .def_static(
            "from_halfspaces",
            [](int d, const Rows& equations, const Rows& inequalities) {
                return conival::Cone::from_halfspaces(d, to_vecs(equations), to_vecs(inequalities));
            },
            py::arg("ambient_dim"), py::arg("equations") = Rows{}, py::arg("inequalities") = Rows{})
        .def_static("from_json",
                    [](const std::string& s) { return conival::io::cone_from_json(parse_json(s)); })
        .def("ambient_dim", &conival::Cone::ambient_dim)
        .def("dim", &conival::Cone::dim)
        .def("lineality_dim", &conival::Cone::lineality_dim)
        .def("is_subspace", &conival::Cone::is_subspace)
        .def("is_pointed", &conival::Cone::is_pointed)
        .def("is_full_dimensional", &conival::Cone::is_full_dimensional)
        .def("polar", &conival::Cone::polar)
        .def("equal", &conival::Cone::equal)
        .def("contains",
             [](const conival::Cone& c, const std::vector<std::string>& x) {
                 return c.contains(to_vec(x));
             })
        .def("to_json", [](const conival::Cone& c) { return conival::io::cone_to_json(c).dump(); })
        .def("__repr__", [](const conival::Cone& c) {
            return "Cone(dim=" + std::to_string(c.dim()) + ", ambient_dim=" +
                   std::to_string(c.ambient_dim()) + ")";
        });

    py::class_<conival::Arrangement>(m, "Arrangement")
        .def(py::init([](int d, const Rows& normals) {
                 return conival::Arrangement(d, to_vecs(normals));
             }),
             py::arg("ambient_dim"), py::arg("normals"))
        .def_static("from_json", [](const std::string& s) {
            return conival::io::arrangement_from_json(parse_json(s));
        })
        .def("ambient_dim", &conival::Arrangement::ambient_dim)
        .def("dim", &conival::Arrangement::dim)
        .def("size", &conival::Arrangement::size)
        .def("to_json",
             [](const conival::Arrangement& a) { return conival::io::arrangement_to_json(a).dump(); })
        .def("__eq__",
             [](const conival::Arrangement& a, const conival::Arrangement& b) { return a == b; })
        .def("__repr__", [](const conival::Arrangement& a) {
            return "Arrangement(hyperplanes=" + std::to_string(a.size()) + ", dim=" +
                   std::to_string(a.dim()) + ")";
        });

    py::class_<conival::Fan>(m, "Fan")
        .def_static("from_json",
                    [](const std::string& s) { return conival::io::fan_from_json(parse_json(s)); })
        .def("ambient_dim", &conival::Fan::ambient_dim)
        .def("size", &conival::Fan::size)
        .def("cones", [](const conival::Fan& f) { return f.cones(); })
        .def("to_json", [](const conival::Fan& f) { return conival::io::fan_to_json(f).dump(); })
        .def("__len__", [](const conival::Fan& f) { return static_cast<size_t>(f.size()); })
        .def("__repr__",
             [](const conival::Fan& f) { return "Fan(cones=" + std::to_string(f.size()) + ")"; });

    py::class_<conival::IndicatorElement>(m, "IndicatorElement")
        .def_static("indicator", &conival::IndicatorElement::indicator)
        .def_static("one", &conival::IndicatorElement::one)
        .def("ambient_dim", &conival::IndicatorElement::ambient_dim)
        .def("__len__",
             [](const conival::IndicatorElement& f) { return f.terms().size(); })
        .def("evaluate",
             [](const conival::IndicatorElement& f, const std::vector<std::string>& x) {
                 return conival::evaluate(f, to_vec(x)).str();
             })
        .def("__add__", [](const conival::IndicatorElement& f,
                           const conival::IndicatorElement& g) { return f + g; })
        .def("__sub__", [](const conival::IndicatorElement& f,
                           const conival::IndicatorElement& g) { return f - g; })
        .def("__neg__", [](const conival::IndicatorElement& f) { return -f; })
        .def("equal", [](const conival::IndicatorElement& f,
                         const conival::IndicatorElement& g) { return conival::equal(f, g); })
        .def("simple_equal",
             [](const conival::IndicatorElement& f, const conival::IndicatorElement& g) {
                 return conival::simple_equal(f, g);
             })
        .def("to_json",
             [](const conival::IndicatorElement& f) { return conival::io::indicator_to_json(f).dump(); })
        .def("__repr__", [](const conival::IndicatorElement& f) {
            return "IndicatorElement(terms=" + std::to_string(f.terms().size()) + ")";
        });

    m.def("chi_json", [](const conival::Arrangement& a) {
        return conival::io::char_poly_to_json(conival::whitney_numbers(a)).dump();
    });
    m.def("regions", &conival::regions);
    m.def("flats_json", [](const conival::Arrangement& a) {
        const conival::FlatsLattice fl = conival::flats_lattice(a);
        json list = json::array();
        for (int i = 0; i < fl.size(); ++i) {
            json f;
            f["dim"] = fl.flat(i).dim();
            f["mobius"] = fl.mobius(fl.bottom(), i).str();
            json basis = json::array();
            for (const conival::Vec& b : fl.flat(i).basis())
                basis.push_back(conival::io::vec_to_json(b));
            f["basis"] = basis;
            list.push_back(f);
        }
        json j;
        j["flats"] = list;
        return j.dump();
    });
    m.def("project_json", [](const conival::Cone& c, const std::vector<std::string>& point) {
        const conival::ProjectionResult r = conival::metric_projection(c, to_vec(point));
        json j;
        j["projection"] = conival::io::vec_to_json(r.point);
        j["face_dim"] = r.face.dim;
        j["active"] = r.face.active;
        j["distance_sq"] = conival::rat_to_string(r.distance_sq);
        return j.dump();
    });
    m.def("moreau_fan", &conival::moreau_fan);
    m.def("intrinsic_volumes_json",
          [](const conival::Cone& c, long long samples, std::uint64_t seed, double z) {
              return conival::io::intrinsic_to_json(conival::mc_intrinsic_volumes(c, samples, seed), z)
                  .dump();
          },
          py::arg("cone"), py::arg("samples") = 100000, py::arg("seed") = 0, py::arg("z") = 4.0);
    m.def("fan_intrinsic_volumes_json",
          [](const conival::Fan& f, long long samples, std::uint64_t seed, double z) {
              return conival::io::intrinsic_to_json(conival::fan_intrinsic_volumes(f, samples, seed), z)
                  .dump();
          },
          py::arg("fan"), py::arg("samples") = 100000, py::arg("seed") = 0, py::arg("z") = 4.0);
    m.def("vk", &conival::vk, py::arg("cone"), py::arg("k"));
    m.def("vk_arrangement", &conival::vk_arrangement, py::arg("arrangement"), py::arg("k"));
    m.def("exceptional", &conival::exceptional_arrangement);
    m.def("verify_arrangement", &verify_arrangement, py::arg("theorem"), py::arg("arrangement"),
          py::arg("k") = -1);
    m.def("verify_cone", &verify_cone, py::arg("theorem"), py::arg("cone"),
          py::arg("normal") = std::vector<std::string>{}, py::arg("k") = -1);
    m.def("klivans_swartz", &conival::verify_klivans_swartz, py::arg("arrangement"),
          py::arg("samples") = 100000, py::arg("seed") = 0, py::arg("z") = 4.0,
          py::arg("threads") = 0);
    m.def("zaslavsky", &conival::verify_zaslavsky, py::arg("fan"), py::arg("samples") = 100000,
          py::arg("seed") = 0, py::arg("z") = 4.0, py::arg("threads") = 0);
    m.def("run_criterion", [](int number) {
        const conival::suite::CriterionResult r = conival::suite::run_criterion(number);
        py::dict d;
        d["number"] = r.number;
        d["name"] = r.name;
        d["ok"] = r.ok;
        d["detail"] = r.detail;
        d["seconds"] = r.seconds;
        return d;
    });
    m.attr("CRITERION_COUNT") = conival::suite::kCriterionCount;
}
