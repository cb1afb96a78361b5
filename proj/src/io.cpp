#include "conival/io.hpp"

#include <fstream>
#include <sstream>

namespace conival::io {

namespace {

json matrix_to_json(const std::vector<Vec>& rows) {
    json out = json::array();
    for (const Vec& v : rows) out.push_back(vec_to_json(v));
    return out;
}

std::vector<Vec> matrix_from_json(const json& j, const char* what, int expect_dim) {
    if (!j.is_array()) throw parse_error(std::string(what) + " must be an array of vectors");
    std::vector<Vec> rows;
    for (const json& row : j) rows.push_back(vec_from_json(row, expect_dim));
    return rows;
}

int dim_field(const json& j) {
    if (!j.is_object() || !j.contains("ambient_dim") || !j["ambient_dim"].is_number_integer())
        throw parse_error("missing integer field 'ambient_dim'");
    const long long d = j["ambient_dim"].get<long long>();
    if (d < 0 || d > 64) throw parse_error("implausible ambient_dim");
    return static_cast<int>(d);
}

}  // namespace

json vec_to_json(const Vec& v) {
    json out = json::array();
    for (const std::string& s : vec_to_strings(v)) out.push_back(s);
    return out;
}

Vec vec_from_json(const json& j, int expect_dim) {
    if (!j.is_array()) throw parse_error("vector must be a JSON array");
    Vec v(static_cast<Eigen::Index>(j.size()));
    Eigen::Index i = 0;
    for (const json& e : j) {
        if (e.is_string())
            v(i++) = rat_from_string(e.get<std::string>());
        else if (e.is_number_integer())
            v(i++) = Rational(e.get<long long>());
        else
            throw parse_error("vector entries must be rational strings or integers");
    }
    if (expect_dim >= 0 && v.size() != expect_dim) throw parse_error("vector has wrong dimension");
    return v;
}

json cone_to_json(const Cone& c) {
    json out;
    out["ambient_dim"] = c.ambient_dim();
    out["rays"] = matrix_to_json(c.rays());
    out["lineality"] = matrix_to_json(c.lineality_basis());
    return out;
}

Cone cone_from_json(const json& j) {
    const int d = dim_field(j);
    const bool gen = j.contains("rays") || j.contains("lineality");
    const bool hsp = j.contains("equations") || j.contains("inequalities");
    if (gen == hsp)
        throw parse_error("cone needs either rays/lineality or equations/inequalities");
    if (gen) {
        std::vector<Vec> rays, lin;
        if (j.contains("rays")) rays = matrix_from_json(j["rays"], "rays", d);
        if (j.contains("lineality")) lin = matrix_from_json(j["lineality"], "lineality", d);
        return Cone::from_generators(d, rays, lin);
    }
    std::vector<Vec> eqs, ineqs;
    if (j.contains("equations")) eqs = matrix_from_json(j["equations"], "equations", d);
    if (j.contains("inequalities")) ineqs = matrix_from_json(j["inequalities"], "inequalities", d);
    return Cone::from_halfspaces(d, eqs, ineqs);
}

json arrangement_to_json(const Arrangement& a) {
    json out;
    out["ambient_dim"] = a.ambient_dim();
    if (a.subspace().dim() < a.ambient_dim()) out["subspace_basis"] = matrix_to_json(a.subspace().basis());
    out["normals"] = matrix_to_json(a.normals());
    return out;
}

Arrangement arrangement_from_json(const json& j) {
    const int d = dim_field(j);
    if (!j.contains("normals")) throw parse_error("arrangement needs a 'normals' array");
    const std::vector<Vec> normals = matrix_from_json(j["normals"], "normals", d);
    if (j.contains("subspace_basis")) {
        const Subspace u =
            Subspace::span(d, matrix_from_json(j["subspace_basis"], "subspace_basis", d));
        return Arrangement(u, normals);
    }
    return Arrangement(d, normals);
}

json fan_to_json(const Fan& f) {
    json out;
    out["ambient_dim"] = f.ambient_dim();
    json cones = json::array();
    for (int i = 0; i < f.size(); ++i) cones.push_back(cone_to_json(f.cone(i)));
    out["cones"] = cones;
    return out;
}

Fan fan_from_json(const json& j) {
    const int d = dim_field(j);
    if (!j.contains("cones") || !j["cones"].is_array())
        throw parse_error("fan needs a 'cones' array");
    std::vector<Cone> cones;
    for (const json& c : j["cones"]) cones.push_back(cone_from_json(c));
    return validate_fan(d, std::move(cones));
}

json indicator_to_json(const IndicatorElement& f) {
    json out;
    out["ambient_dim"] = f.ambient_dim();
    json terms = json::array();
    for (const auto& t : f.terms()) {
        json term;
        term["coeff"] = t.first.str();
        term["cone"] = cone_to_json(t.second);
        terms.push_back(term);
    }
    out["terms"] = terms;
    return out;
}

IndicatorElement indicator_from_json(const json& j) {
    IndicatorElement f(dim_field(j));
    if (!j.contains("terms") || !j["terms"].is_array())
        throw parse_error("indicator element needs a 'terms' array");
    for (const json& t : j["terms"]) {
        if (!t.is_object() || !t.contains("coeff") || !t.contains("cone"))
            throw parse_error("indicator term needs 'coeff' and 'cone'");
        Integer c;
        if (t["coeff"].is_string())
            c = Integer(t["coeff"].get<std::string>());
        else if (t["coeff"].is_number_integer())
            c = Integer(t["coeff"].get<long long>());
        else
            throw parse_error("indicator coefficient must be an integer or string");
        f.add_term(c, cone_from_json(t["cone"]));
    }
    return f;
}

json char_poly_to_json(const CharPoly& p) {
    json out;
    json coeff = json::array();
    for (const Integer& c : p.coeff) coeff.push_back(c.str());
    out["coefficients"] = coeff;
    out["display"] = p.to_string();
    return out;
}

json report_to_json(const std::string& theorem, const std::string& instance, const CheckReport& r) {
    json out;
    out["theorem"] = theorem;
    out["instance"] = instance;
    out["status"] = r.ok ? "pass" : "fail";
    out["details"] = r.detail;
    return out;
}

json intrinsic_to_json(const IntrinsicEstimate& e, double z) {
    json out;
    out["samples"] = e.samples;
    out["seed"] = e.seed;
    out["z"] = z;
    out["values"] = e.values;
    json ci = json::array();
    for (int k = 0; k <= e.max_dim(); ++k) ci.push_back(e.ci_radius(k, z));
    out["ci"] = ci;
    out["counts"] = e.counts;
    return out;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& ex) {
        throw parse_error("invalid JSON in '" + path + "': " + ex.what());
    }
}

namespace {

template <typename F>
auto load_as(const std::string& path, const char* what, F&& from_json) {
    try {
        return from_json(load_json(path));
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception& ex) {
        throw parse_error("invalid " + std::string(what) + " in '" + path + "': " + ex.what());
    }
}

}  // namespace

Cone load_cone(const std::string& path) { return load_as(path, "cone", cone_from_json); }

Arrangement load_arrangement(const std::string& path) {
    return load_as(path, "arrangement", arrangement_from_json);
}

Fan load_fan(const std::string& path) { return load_as(path, "fan", fan_from_json); }

std::string csv_row(const std::vector<std::string>& cells) {
    std::ostringstream os;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
        if (!quote) {
            os << cells[i];
        } else {
            os << '"';
            for (char c : cells[i]) {
                if (c == '"') os << '"';
                os << c;
            }
            os << '"';
        }
    }
    return os.str();
}

}  // namespace conival::io
