#include "conival/io.hpp"

#include "conival/projection.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

using namespace conival;
using namespace conival::testing;
using conival::io::json;

namespace {

std::string data(const std::string& name) { return std::string(CONIVAL_DATA_DIR) + "/" + name; }

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CONIVAL_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cone json round trips") {
    const Cone q = Cone::from_generators(2, {iv({1, 0}), iv({0, 1})});
    CHECK(io::cone_from_json(io::cone_to_json(q)).equal(q));

    const Cone wedge = Cone::from_halfspaces(3, {iv({0, 0, 1})}, {iv({-1, 0, 0}), iv({1, -2, 0})});
    CHECK(io::cone_from_json(io::cone_to_json(wedge)).equal(wedge));

    const Cone with_lin = Cone::from_generators(3, {iv({0, 1, 0})}, {iv({1, 0, 0})});
    const json j = io::cone_to_json(with_lin);
    CHECK(j.contains("lineality"));
    CHECK(io::cone_from_json(j).equal(with_lin));

    // halfspace description parses too
    json h;
    h["ambient_dim"] = 2;
    h["inequalities"] = json::array({json::array({"0", "-1"})});
    CHECK(io::cone_from_json(h).equal(Cone::from_halfspaces(2, {}, {iv({0, -1})})));
}

TEST_CASE("cone json rejects malformed input") {
    json j;
    j["rays"] = json::array();
    CHECK_THROWS_AS((void)io::cone_from_json(j), parse_error);  // no ambient_dim

    json both;
    both["ambient_dim"] = 2;
    both["rays"] = json::array({json::array({"1", "0"})});
    both["inequalities"] = json::array({json::array({"0", "1"})});
    CHECK_THROWS_AS((void)io::cone_from_json(both), parse_error);

    json neither;
    neither["ambient_dim"] = 2;
    CHECK_THROWS_AS((void)io::cone_from_json(neither), parse_error);

    json wrong_dim;
    wrong_dim["ambient_dim"] = 2;
    wrong_dim["rays"] = json::array({json::array({"1", "0", "0"})});
    CHECK_THROWS_AS((void)io::cone_from_json(wrong_dim), parse_error);

    json bad_rat;
    bad_rat["ambient_dim"] = 1;
    bad_rat["rays"] = json::array({json::array({"1/0"})});
    CHECK_THROWS_AS((void)io::cone_from_json(bad_rat), parse_error);
}

TEST_CASE("arrangement json round trips") {
    const Arrangement a = io::load_arrangement(data("boolean2.json"));
    CHECK(a == Arrangement(2, {iv({1, 0}), iv({0, 1})}));
    CHECK(io::arrangement_from_json(io::arrangement_to_json(a)) == a);

    // carrier subspace survives the round trip
    const Arrangement s = io::load_arrangement(data("singleton2_in3.json"));
    CHECK(s.dim() == 2);
    CHECK(s.ambient_dim() == 3);
    CHECK(s.size() == 1);
    const json j = io::arrangement_to_json(s);
    CHECK(j.contains("subspace_basis"));
    CHECK(io::arrangement_from_json(j) == s);

    // full-space arrangements omit the basis field
    CHECK_FALSE(io::arrangement_to_json(a).contains("subspace_basis"));
}

TEST_CASE("fan json round trips") {
    const Fan f = regions(io::load_arrangement(data("generic3.json")));
    const Fan g = io::fan_from_json(io::fan_to_json(f));
    REQUIRE(g.size() == f.size());
    for (int i = 0; i < f.size(); ++i)
        CHECK(g.cones()[static_cast<size_t>(i)].key() == f.cones()[static_cast<size_t>(i)].key());

    // loading from a file goes through the same validation
    const std::string path = "/tmp/conival_fan_roundtrip.json";
    {
        std::ofstream out(path);
        out << io::fan_to_json(f).dump(2);
    }
    CHECK(io::load_fan(path).size() == f.size());

    // a ray overlapping the full line is not a fan
    json bad;
    bad["ambient_dim"] = 1;
    json full;
    full["ambient_dim"] = 1;
    full["rays"] = json::array({json::array({"1"}), json::array({"-1"})});
    json ray;
    ray["ambient_dim"] = 1;
    ray["rays"] = json::array({json::array({"1"})});
    bad["cones"] = json::array({full, ray});
    CHECK_THROWS((void)io::fan_from_json(bad));
}

TEST_CASE("indicator element json round trips") {
    const Cone q = Cone::from_generators(2, {iv({1, 0}), iv({0, 1})});
    const IndicatorElement v = vk(q, 1);
    const IndicatorElement w = io::indicator_from_json(io::indicator_to_json(v));
    CHECK(equal(v, w));

    const IndicatorElement z = IndicatorElement(3);  // zero element keeps its dimension
    CHECK(io::indicator_from_json(io::indicator_to_json(z)).ambient_dim() == 3);
}

TEST_CASE("char poly and report json") {
    const CharPoly w = whitney_numbers(io::load_arrangement(data("boolean2.json")));
    const json j = io::char_poly_to_json(w);
    CHECK(j["display"] == "t^2 + 2t + 1");
    CHECK(j["coefficients"][0] == "1");
    CHECK(j["coefficients"][1] == "2");
    CHECK(j["coefficients"][2] == "1");

    const json pass = io::report_to_json("key", "line.json", CheckReport{true, "all good"});
    CHECK(pass["theorem"] == "key");
    CHECK(pass["instance"] == "line.json");
    CHECK(pass["status"] == "pass");
    CHECK(io::report_to_json("key", "x", CheckReport{false, "broke"})["status"] == "fail");
}

TEST_CASE("intrinsic estimate json carries seed and ci") {
    const Cone q = Cone::from_generators(2, {iv({1, 0}), iv({0, 1})});
    const IntrinsicEstimate e = mc_intrinsic_volumes(q, 2000, 11);
    const json j = io::intrinsic_to_json(e, 4.0);
    CHECK(j["samples"] == 2000);
    CHECK(j["seed"] == 11);
    CHECK(j["values"].size() == 3);
    CHECK(j["ci"].size() == 3);
    CHECK(j["counts"].size() == 3);
}

TEST_CASE("csv rows quote the awkward cells") {
    CHECK(io::csv_row({"a", "b"}) == "a,b");
    CHECK(io::csv_row({"a,b", "c"}) == "\"a,b\",c");
    CHECK(io::csv_row({"say \"hi\""}) == "\"say \"\"hi\"\"\"");
}

TEST_CASE("missing or malformed files raise parse errors") {
    CHECK_THROWS_AS((void)io::load_arrangement("/nonexistent/file.json"), parse_error);
    const std::string path = "/tmp/conival_bad.json";
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK_THROWS_AS((void)io::load_json(path), parse_error);
    {
        std::ofstream out(path);
        out << "{\"ambient_dim\": 2}";  // valid json, not an arrangement
    }
    CHECK_THROWS_AS((void)io::load_arrangement(path), parse_error);
}

TEST_CASE("cli chi prints the polynomial") {
    const RunResult r = run_cli("chi --arrangement " + data("boolean2.json"));
    CHECK(r.status == 0);
    CHECK(r.out == "t^2 + 2t + 1\n");

    const RunResult csv = run_cli("--format csv chi --arrangement " + data("boolean2.json"));
    CHECK(csv.status == 0);
    CHECK(contains(csv.out, "k,coefficient"));
    CHECK(contains(csv.out, "1,2"));
}

TEST_CASE("cli verify reports pass and json") {
    const RunResult r = run_cli("verify --theorem key --arrangement " + data("line.json"));
    CHECK(r.status == 0);
    CHECK(r.out.rfind("PASS", 0) == 0);

    const RunResult j =
        run_cli("--format json verify --theorem key --arrangement " + data("line.json"));
    CHECK(j.status == 0);
    const json parsed = json::parse(j.out);
    CHECK(parsed["theorem"] == "key");
    CHECK(parsed["status"] == "pass");

    CHECK(run_cli("verify --theorem vk-arr --arrangement " + data("boolean2.json")).status == 0);
    CHECK(run_cli("verify --theorem vk-val --cone " + data("quadrant.json") + " --normal 1,-1 -k 1")
              .status == 0);
    CHECK(run_cli("verify --theorem polar-duality --cone " + data("quadrant.json")).status == 0);
    CHECK(run_cli("verify --theorem hug-kabluchko --cone " + data("octant.json")).status == 0);
    CHECK(run_cli("verify --theorem sommerville --cone " + data("quadrant.json")).status == 0);
    CHECK(run_cli("verify --theorem moreau-iso --cone " + data("octant.json")).status == 0);
}

TEST_CASE("cli intrinsic output is reproducible byte for byte") {
    const std::string args =
        "--format json intrinsic --cone " + data("halfspace2.json") + " -N 20000 --seed 5";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    const json j = json::parse(a.out);
    CHECK(j["estimate"]["samples"] == 20000);
    // halfspace values concentrate on (0, 1/2, 1/2)
    CHECK(j["estimate"]["values"][0] == 0.0);

    const RunResult text = run_cli("intrinsic --cone " + data("halfspace2.json") + " -N 5000");
    CHECK(text.status == 0);
    CHECK(contains(text.out, "v_2"));
}

TEST_CASE("cli project prints point face and distance") {
    const RunResult r =
        run_cli("project --cone " + data("quadrant.json") + " --point -1,2");
    CHECK(r.status == 0);
    CHECK(contains(r.out, "projection: (0, 2)"));
    CHECK(contains(r.out, "face dimension: 1"));
    CHECK(contains(r.out, "distance^2: 1"));
    CHECK(contains(r.out, "active set: {"));
}

TEST_CASE("cli structure commands") {
    const RunResult reg = run_cli("regions --arrangement " + data("boolean2.json"));
    CHECK(reg.status == 0);
    CHECK(contains(reg.out, "regions: 4"));

    const RunResult fl = run_cli("flats --arrangement " + data("boolean2.json"));
    CHECK(fl.status == 0);
    CHECK(contains(fl.out, "4 flats"));
    CHECK(contains(fl.out, "t^2 + 2t + 1"));

    const RunResult mo = run_cli("moreau --cone " + data("quadrant.json"));
    CHECK(mo.status == 0);
    CHECK(contains(mo.out, "cells: 4"));
    CHECK(contains(mo.out, "distinct faces: 9"));
    CHECK(contains(mo.out, "isomorphism: PASS"));

    const RunResult ex = run_cli("exceptional --arrangement " + data("boolean2.json"));
    CHECK(ex.status == 0);
    CHECK(contains(ex.out, "2 exceptional hyperplanes"));

    const RunResult vkr = run_cli("vk --cone " + data("quadrant.json") + " -k 1");
    CHECK(vkr.status == 0);
    CHECK(contains(vkr.out, "V_1: 2 terms"));
}

TEST_CASE("cli verify-ks emits the coefficient table") {
    const RunResult csv =
        run_cli("--format csv verify-ks --arrangement " + data("line.json") + " -N 20000");
    CHECK(csv.status == 0);
    CHECK(csv.out.rfind("k,estimate,ci,whitney,ok", 0) == 0);

    const RunResult text = run_cli("verify-ks --arrangement " + data("line.json") + " -N 20000");
    CHECK(text.status == 0);
    CHECK(contains(text.out, "PASS"));
}

TEST_CASE("cli exit codes distinguish usage errors") {
    CHECK(run_cli("chi --arrangement /nonexistent.json").status == 2);
    CHECK(run_cli("frobnicate").status == 2);
    CHECK(run_cli("project --cone " + data("quadrant.json") + " --point 1,2,3").status == 2);
    CHECK(run_cli("verify --theorem key").status == 2);  // no input given
    CHECK(run_cli("chi").status == 2);                   // missing required option
}

TEST_CASE("cli suite runs a single criterion") {
    const RunResult r = run_cli("suite --criterion 3");
    CHECK(r.status == 0);
    CHECK(contains(r.out, "[PASS] criterion  3"));
}
