// conival command line tool.
//
// Exit codes: 0 success, 1 a verification failed, 2 malformed input or usage.
// All randomized commands take --samples/--seed/-z and report them, so a rerun
// with the same input, seed and sample count produces byte-identical output.

#include "conival/io.hpp"
#include "conival/projection.hpp"
#include "conival/suite.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using conival::io::json;

struct Options {
    std::string format = "text";
    long long samples = 100000;
    std::uint64_t seed = 0;
    double z = 4.0;
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void emit_csv(const std::vector<std::vector<std::string>>& rows) {
    for (const auto& r : rows) std::cout << conival::io::csv_row(r) << "\n";
}

std::string num(double x) {
    std::ostringstream os;
    os.precision(6);
    os << std::fixed << x;
    return os.str();
}

std::string vec_text(const conival::Vec& v) {
    std::string s = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += conival::rat_to_string(v(i));
    }
    return s + ")";
}

/** Parse "1,1/2,-3" into a rational vector of the expected dimension. */
conival::Vec parse_point(const std::string& text, int dim) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (static_cast<int>(parts.size()) != dim)
        throw conival::parse_error("point has " + std::to_string(parts.size()) +
                                   " coordinates, expected " + std::to_string(dim));
    return conival::vec_from_strings(parts);
}

// --- chi ---------------------------------------------------------------------

int cmd_chi(const std::string& path, const Options& o) {
    const conival::Arrangement a = conival::io::load_arrangement(path);
    const conival::CharPoly w = conival::whitney_numbers(a);
    const bool agree = w == conival::char_poly_delres(a);
    if (o.format == "json") {
        json j;
        j["command"] = "chi";
        j["input"] = path;
        j["characteristic_polynomial"] = conival::io::char_poly_to_json(w);
        j["deletion_restriction_agrees"] = agree;
        emit(j);
    } else if (o.format == "csv") {
        std::vector<std::vector<std::string>> rows{{"k", "coefficient"}};
        for (size_t k = 0; k < w.coeff.size(); ++k) rows.push_back({std::to_string(k), w.coeff[k].str()});
        emit_csv(rows);
    } else {
        std::cout << w.to_string() << "\n";
    }
    return agree ? 0 : 1;
}

// --- regions -------------------------------------------------------------------

int cmd_regions(const std::string& path, const Options& o) {
    const conival::Fan f = conival::regions(conival::io::load_arrangement(path));
    if (o.format == "json") {
        json j;
        j["command"] = "regions";
        j["input"] = path;
        j["count"] = f.size();
        j["fan"] = conival::io::fan_to_json(f);
        emit(j);
    } else if (o.format == "csv") {
        std::vector<std::vector<std::string>> rows{{"region", "dim"}};
        for (int i = 0; i < f.size(); ++i)
            rows.push_back({std::to_string(i), std::to_string(f.cones()[static_cast<size_t>(i)].dim())});
        emit_csv(rows);
    } else {
        std::cout << "regions: " << f.size() << "\n";
        for (int i = 0; i < f.size(); ++i)
            std::cout << "  region " << i << ": "
                      << conival::io::cone_to_json(f.cones()[static_cast<size_t>(i)]).dump() << "\n";
    }
    return 0;
}

// --- flats ---------------------------------------------------------------------

int cmd_flats(const std::string& path, const Options& o) {
    const conival::Arrangement a = conival::io::load_arrangement(path);
    const conival::FlatsLattice fl = conival::flats_lattice(a);
    const conival::CharPoly w = conival::whitney_numbers(a);
    if (o.format == "json") {
        json j;
        j["command"] = "flats";
        j["input"] = path;
        json list = json::array();
        for (int i = 0; i < fl.size(); ++i) {
            json f;
            f["dim"] = fl.flat(i).dim();
            f["mobius"] = fl.mobius(fl.bottom(), i).str();
            json basis = json::array();
            for (const conival::Vec& b : fl.flat(i).basis()) basis.push_back(conival::io::vec_to_json(b));
            f["basis"] = basis;
            list.push_back(f);
        }
        j["flats"] = list;
        j["characteristic_polynomial"] = conival::io::char_poly_to_json(w);
        emit(j);
    } else if (o.format == "csv") {
        std::vector<std::vector<std::string>> rows{{"flat", "dim", "mobius"}};
        for (int i = 0; i < fl.size(); ++i)
            rows.push_back({std::to_string(i), std::to_string(fl.flat(i).dim()),
                            fl.mobius(fl.bottom(), i).str()});
        emit_csv(rows);
    } else {
        std::cout << fl.size() << " flats; characteristic polynomial " << w.to_string() << "\n";
        for (int i = 0; i < fl.size(); ++i) {
            std::cout << "  flat " << i << ": dim " << fl.flat(i).dim() << ", mobius "
                      << fl.mobius(fl.bottom(), i).str() << ", basis";
            for (const conival::Vec& b : fl.flat(i).basis()) std::cout << " " << vec_text(b);
            std::cout << "\n";
        }
    }
    return 0;
}

// --- project ---------------------------------------------------------------------

int cmd_project(const std::string& path, const std::string& point, const Options& o) {
    const conival::Cone c = conival::io::load_cone(path);
    const conival::Vec x = parse_point(point, c.ambient_dim());
    const conival::ProjectionResult r = conival::metric_projection(c, x);
    if (o.format == "json") {
        json j;
        j["command"] = "project";
        j["input"] = path;
        j["point"] = conival::io::vec_to_json(x);
        j["projection"] = conival::io::vec_to_json(r.point);
        j["face_dim"] = r.face.dim;
        j["active"] = r.face.active;
        j["distance_sq"] = conival::rat_to_string(r.distance_sq);
        emit(j);
    } else {
        std::cout << "projection: " << vec_text(r.point) << "\n";
        std::cout << "face dimension: " << r.face.dim << "\n";
        std::cout << "active set: {";
        for (size_t i = 0; i < r.face.active.size(); ++i)
            std::cout << (i ? ", " : "") << r.face.active[i];
        std::cout << "}\n";
        std::cout << "distance^2: " << conival::rat_to_string(r.distance_sq) << "\n";
    }
    return 0;
}

// --- moreau ---------------------------------------------------------------------

int cmd_moreau(const std::string& path, const Options& o) {
    const conival::Cone c = conival::io::load_cone(path);
    const conival::Fan mf = conival::moreau_fan(c);
    const conival::CheckReport iso = conival::check_moreau_isomorphism(c);
    std::set<std::string> faces;
    for (const conival::Cone& cell : mf.cones()) {
        const conival::FaceLattice lat = conival::face_lattice(cell);
        for (const conival::Face& f : lat.faces()) faces.insert(f.cone.key());
    }
    const size_t intervals =
        conival::interval_poset(conival::face_poset(conival::face_lattice(c))).intervals.size();
    const bool ok = iso.ok && faces.size() == intervals;
    if (o.format == "json") {
        json j;
        j["command"] = "moreau";
        j["input"] = path;
        j["cells"] = mf.size();
        j["faces"] = faces.size();
        j["intervals"] = intervals;
        j["isomorphism"] = ok ? "pass" : "fail";
        j["fan"] = conival::io::fan_to_json(mf);
        emit(j);
    } else {
        std::cout << "cells: " << mf.size() << "\n";
        std::cout << "distinct faces: " << faces.size() << "\n";
        std::cout << "face-poset intervals: " << intervals << "\n";
        std::cout << "isomorphism: " << (ok ? "PASS" : "FAIL") << "\n";
        if (!iso.ok) std::cout << iso.detail << "\n";
    }
    return ok ? 0 : 1;
}

// --- intrinsic --------------------------------------------------------------------

int cmd_intrinsic(const std::string& cone_path, const std::string& fan_path, const Options& o) {
    auto estimate = [&](long long n) {
        return cone_path.empty()
                   ? conival::fan_intrinsic_volumes(conival::io::load_fan(fan_path), n, o.seed)
                   : conival::mc_intrinsic_volumes(conival::io::load_cone(cone_path), n, o.seed);
    };
    const std::string input = cone_path.empty() ? fan_path : cone_path;
    if (o.format == "csv") {
        // convergence trace: same seed, growing sample counts
        std::vector<std::vector<std::string>> rows{{"samples", "k", "estimate", "ci"}};
        for (long long n : {o.samples / 8, o.samples / 4, o.samples / 2, o.samples}) {
            if (n < 1) continue;
            const conival::IntrinsicEstimate e = estimate(n);
            for (int k = 0; k <= e.max_dim(); ++k)
                rows.push_back({std::to_string(n), std::to_string(k), num(e.values[static_cast<size_t>(k)]),
                                num(e.ci_radius(k, o.z))});
        }
        emit_csv(rows);
        return 0;
    }
    const conival::IntrinsicEstimate e = estimate(o.samples);
    if (o.format == "json") {
        json j;
        j["command"] = "intrinsic";
        j["input"] = input;
        j["estimate"] = conival::io::intrinsic_to_json(e, o.z);
        emit(j);
    } else {
        std::cout << "samples " << e.samples << ", seed " << e.seed << "\n";
        for (int k = 0; k <= e.max_dim(); ++k)
            std::cout << "v_" << k << " = " << num(e.values[static_cast<size_t>(k)]) << " +/- "
                      << num(e.ci_radius(k, o.z)) << "  (hits " << e.counts[static_cast<size_t>(k)]
                      << ")\n";
    }
    return 0;
}

// --- vk --------------------------------------------------------------------------

int cmd_vk(const std::string& path, int k, const Options& o) {
    const conival::Cone c = conival::io::load_cone(path);
    const conival::IndicatorElement v = conival::vk(c, k);
    if (o.format == "json") {
        json j;
        j["command"] = "vk";
        j["input"] = path;
        j["k"] = k;
        j["element"] = conival::io::indicator_to_json(v);
        emit(j);
    } else if (o.format == "csv") {
        std::vector<std::vector<std::string>> rows{{"term", "coefficient", "dim"}};
        int i = 0;
        for (const auto& [coeff, cone] : v.terms())
            rows.push_back({std::to_string(i++), coeff.str(), std::to_string(cone.dim())});
        emit_csv(rows);
    } else {
        std::cout << "V_" << k << ": " << v.terms().size() << " terms\n";
        for (const auto& [coeff, cone] : v.terms())
            std::cout << "  " << (coeff >= 0 ? "+" : "") << coeff.str() << " * "
                      << conival::io::cone_to_json(cone).dump() << "\n";
    }
    return 0;
}

// --- exceptional --------------------------------------------------------------------

int cmd_exceptional(const std::string& path, const Options& o) {
    const conival::Arrangement pi =
        conival::exceptional_arrangement(conival::io::load_arrangement(path));
    if (o.format == "json") {
        json j;
        j["command"] = "exceptional";
        j["input"] = path;
        j["arrangement"] = conival::io::arrangement_to_json(pi);
        emit(j);
    } else if (o.format == "csv") {
        std::vector<std::vector<std::string>> rows{{"hyperplane", "normal"}};
        for (int i = 0; i < pi.size(); ++i) {
            std::string coords;
            for (const std::string& s : conival::vec_to_strings(pi.normals()[static_cast<size_t>(i)]))
                coords += (coords.empty() ? "" : " ") + s;
            rows.push_back({std::to_string(i), coords});
        }
        emit_csv(rows);
    } else {
        std::cout << pi.size() << " exceptional hyperplanes\n";
        for (const conival::Vec& n : pi.normals()) std::cout << "  normal " << vec_text(n) << "\n";
    }
    return 0;
}

// --- verify ---------------------------------------------------------------------

struct VerifyArgs {
    std::string theorem;
    std::string arrangement_path;
    std::string cone_path;
    std::string input_path;  // generic alias
    std::string normal;
    int k = -1;  // -1: every applicable k
};

int cmd_verify(const VerifyArgs& va, const Options& o) {
    const bool wants_arrangement = va.theorem == "key" || va.theorem == "vk-arr";
    std::string path = wants_arrangement ? va.arrangement_path : va.cone_path;
    if (path.empty()) path = va.input_path;
    if (path.empty())
        throw conival::parse_error("verify --theorem " + va.theorem + " needs " +
                                   (wants_arrangement ? "--arrangement" : "--cone") + " (or --input)");

    conival::CheckReport total{true, ""};
    auto fold = [&](const conival::CheckReport& r) {
        total.ok = total.ok && r.ok;
        if (!total.detail.empty()) total.detail += "\n";
        total.detail += r.detail;
    };
    auto each_k = [&](int top, auto&& run) {
        if (va.k >= 0)
            fold(run(va.k));
        else
            for (int k = 0; k <= top; ++k) fold(run(k));
    };

    if (va.theorem == "key") {
        fold(conival::lemma_key_check(conival::io::load_arrangement(path)));
    } else if (va.theorem == "vk-arr") {
        const conival::Arrangement a = conival::io::load_arrangement(path);
        each_k(a.dim(), [&](int k) { return conival::theorem_vk_arr_check(a, k); });
    } else if (va.theorem == "vk-val") {
        const conival::Cone c = conival::io::load_cone(path);
        if (va.normal.empty()) throw conival::parse_error("verify --theorem vk-val needs --normal");
        const conival::Vec n = parse_point(va.normal, c.ambient_dim());
        each_k(c.ambient_dim(), [&](int k) { return conival::verify_vk_valuation(c, n, k); });
    } else if (va.theorem == "polar-duality") {
        const conival::Cone c = conival::io::load_cone(path);
        each_k(c.ambient_dim(), [&](int k) { return conival::verify_polar_duality(c, k); });
    } else if (va.theorem == "hug-kabluchko") {
        fold(conival::hug_kabluchko_check(conival::io::load_cone(path)));
    } else if (va.theorem == "sommerville") {
        fold(conival::sommerville_check(conival::io::load_cone(path)));
    } else if (va.theorem == "moreau-iso") {
        fold(conival::check_moreau_isomorphism(conival::io::load_cone(path)));
    } else {
        throw conival::parse_error("unknown theorem '" + va.theorem + "'");
    }

    if (o.format == "json") {
        emit(conival::io::report_to_json(va.theorem, path, total));
    } else {
        std::cout << (total.ok ? "PASS" : "FAIL") << "\n";
        if (!total.detail.empty()) std::cout << total.detail << "\n";
    }
    return total.ok ? 0 : 1;
}

// --- verify-ks -------------------------------------------------------------------

int cmd_verify_ks(const std::string& path, const Options& o) {
    const conival::Arrangement a = conival::io::load_arrangement(path);
    const conival::CharPoly w = conival::whitney_numbers(a);
    const conival::FanCharPoly est = conival::fan_char_poly(conival::regions(a), o.samples, o.seed);
    bool ok = true;
    struct Row {
        int k;
        double estimate, ci, whitney;
        bool within;
    };
    std::vector<Row> table;
    for (size_t k = 0; k < est.coeff.size(); ++k) {
        const double target = w.at(static_cast<int>(k)).convert_to<double>();
        const double ci = est.ci_radius(static_cast<int>(k), o.z);
        const bool within = std::abs(est.coeff[k] - target) <= ci;
        ok = ok && within;
        table.push_back({static_cast<int>(k), est.coeff[k], ci, target, within});
    }
    if (o.format == "json") {
        json j;
        j["command"] = "verify-ks";
        j["input"] = path;
        j["samples"] = o.samples;
        j["seed"] = o.seed;
        j["z"] = o.z;
        json rows = json::array();
        for (const Row& r : table) {
            json e;
            e["k"] = r.k;
            e["estimate"] = r.estimate;
            e["ci"] = r.ci;
            e["whitney"] = w.at(r.k).str();
            e["ok"] = r.within;
            rows.push_back(e);
        }
        j["coefficients"] = rows;
        j["status"] = ok ? "pass" : "fail";
        emit(j);
    } else if (o.format == "csv") {
        std::vector<std::vector<std::string>> rows{{"k", "estimate", "ci", "whitney", "ok"}};
        for (const Row& r : table)
            rows.push_back({std::to_string(r.k), num(r.estimate), num(r.ci), w.at(r.k).str(),
                            r.within ? "1" : "0"});
        emit_csv(rows);
    } else {
        std::printf("%-3s %-12s %-12s %-10s %s\n", "k", "estimate", "ci", "whitney", "ok");
        for (const Row& r : table)
            std::printf("%-3d %-12.6f %-12.6f %-10s %s\n", r.k, r.estimate, r.ci,
                        w.at(r.k).str().c_str(), r.within ? "yes" : "NO");
        std::cout << (ok ? "PASS" : "FAIL") << " (z = " << o.z << ", samples = " << o.samples
                  << ", seed = " << o.seed << ")\n";
    }
    return ok ? 0 : 1;
}

// --- suite -----------------------------------------------------------------------

int cmd_suite(int criterion, const Options& o) {
    std::vector<conival::suite::CriterionResult> results;
    if (criterion > 0)
        results.push_back(conival::suite::run_criterion(criterion));
    else
        for (int i = 1; i <= conival::suite::kCriterionCount; ++i) {
            results.push_back(conival::suite::run_criterion(i));
            if (o.format == "text") {
                const auto& r = results.back();
                std::printf("[%s] criterion %2d: %s — %s (%.2f s)\n", r.ok ? "PASS" : "FAIL",
                            r.number, r.name.c_str(), r.detail.c_str(), r.seconds);
                std::fflush(stdout);
            }
        }
    bool ok = true;
    for (const auto& r : results) ok = ok && r.ok;
    if (o.format == "json") {
        json list = json::array();
        for (const auto& r : results) {
            json j;
            j["number"] = r.number;
            j["name"] = r.name;
            j["status"] = r.ok ? "pass" : "fail";
            j["detail"] = r.detail;
            j["seconds"] = r.seconds;
            list.push_back(j);
        }
        emit(list);
    } else if (criterion > 0 && o.format == "text") {
        const auto& r = results.front();
        std::printf("[%s] criterion %2d: %s — %s (%.2f s)\n", r.ok ? "PASS" : "FAIL", r.number,
                    r.name.c_str(), r.detail.c_str(), r.seconds);
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact valuations on polyhedral cones, fans and central hyperplane arrangements"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();

    std::function<int()> action;

    std::string arrangement_path, cone_path, fan_path, point;
    int k = -1, criterion = 0;
    VerifyArgs va;

    auto add_sampling = [&](CLI::App* sub) {
        sub->add_option("-N,--samples", opt.samples, "Monte Carlo samples per cone")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--seed", opt.seed, "random seed")->capture_default_str();
        sub->add_option("-z", opt.z, "confidence multiplier")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };

    {
        CLI::App* sub = app.add_subcommand("chi", "characteristic polynomial of an arrangement");
        sub->add_option("--arrangement", arrangement_path)->required();
        sub->callback([&] { action = [&] { return cmd_chi(arrangement_path, opt); }; });
    }
    {
        CLI::App* sub = app.add_subcommand("regions", "closed regions of an arrangement");
        sub->add_option("--arrangement", arrangement_path)->required();
        sub->callback([&] { action = [&] { return cmd_regions(arrangement_path, opt); }; });
    }
    {
        CLI::App* sub = app.add_subcommand("flats", "lattice of flats with Moebius numbers");
        sub->add_option("--arrangement", arrangement_path)->required();
        sub->callback([&] { action = [&] { return cmd_flats(arrangement_path, opt); }; });
    }
    {
        CLI::App* sub = app.add_subcommand("project", "metric projection of a point onto a cone");
        sub->add_option("--cone", cone_path)->required();
        sub->add_option("--point", point, "comma-separated rational coordinates")->required();
        sub->callback([&] { action = [&] { return cmd_project(cone_path, point, opt); }; });
    }
    {
        CLI::App* sub = app.add_subcommand("moreau", "projection fan of a cone");
        sub->add_option("--cone", cone_path)->required();
        sub->callback([&] { action = [&] { return cmd_moreau(cone_path, opt); }; });
    }
    {
        CLI::App* sub = app.add_subcommand("intrinsic", "Monte Carlo intrinsic volumes");
        CLI::Option* oc = sub->add_option("--cone", cone_path);
        sub->add_option("--fan", fan_path)->excludes(oc);
        add_sampling(sub);
        sub->callback([&] {
            if (cone_path.empty() && fan_path.empty())
                throw CLI::ValidationError("intrinsic needs --cone or --fan");
            action = [&] { return cmd_intrinsic(cone_path, fan_path, opt); };
        });
    }
    {
        CLI::App* sub = app.add_subcommand("vk", "indicator element V_k of a cone");
        sub->add_option("--cone", cone_path)->required();
        sub->add_option("-k", k, "face dimension")->required()->check(CLI::NonNegativeNumber);
        sub->callback([&] { action = [&] { return cmd_vk(cone_path, k, opt); }; });
    }
    {
        CLI::App* sub = app.add_subcommand("exceptional", "exceptional arrangement Pi");
        sub->add_option("--arrangement", arrangement_path)->required();
        sub->callback([&] { action = [&] { return cmd_exceptional(arrangement_path, opt); }; });
    }
    {
        CLI::App* sub = app.add_subcommand("verify", "verify one identity on one instance");
        static const std::vector<std::string> theorems{
            "vk-val", "key", "vk-arr", "hug-kabluchko", "sommerville", "polar-duality", "moreau-iso"};
        sub->add_option("--theorem", va.theorem)->required()->check(CLI::IsMember(theorems));
        sub->add_option("--arrangement", va.arrangement_path);
        sub->add_option("--cone", va.cone_path);
        sub->add_option("--input", va.input_path, "input file (cone or arrangement as appropriate)");
        sub->add_option("--normal", va.normal, "hyperplane normal for vk-val");
        sub->add_option("-k", va.k, "face dimension (default: all)");
        sub->callback([&] { action = [&] { return cmd_verify(va, opt); }; });
    }
    {
        CLI::App* sub = app.add_subcommand("verify-ks", "Monte Carlo coefficient comparison table");
        sub->add_option("--arrangement", arrangement_path)->required();
        add_sampling(sub);
        sub->callback([&] { action = [&] { return cmd_verify_ks(arrangement_path, opt); }; });
    }
    {
        CLI::App* sub = app.add_subcommand("suite", "run the acceptance battery");
        sub->add_option("--criterion", criterion, "run a single criterion (1-10)")
            ->check(CLI::Range(1, conival::suite::kCriterionCount));
        sub->callback([&] { action = [&] { return cmd_suite(criterion, opt); }; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return action ? action() : 2;
    } catch (const conival::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
