#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "bz/io.hpp"
#include "bz/verify.hpp"

using namespace bz;

namespace {

const Arrangement& z2()
{
    static const Arrangement arr = build(integer_window(9));
    return arr;
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, sep)) out.push_back(field);
    return out;
}

}  // namespace

TEST_CASE("doubles print with 17 significant digits")
{
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(0.1) == "0.10000000000000001");
    for (double v : {1.0 / 3.0, std::sqrt(2.0), 1e-300, 123456.789}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("generator sets round-trip through JSON")
{
    const GeneratorSet g = perturb({3, 10000, 1000, 5});
    const nlohmann::json j = generator_set_to_json(g);
    CHECK(j["scale"] == 10000);
    CHECK(j["points"].size() == 48);
    const GeneratorSet back = generator_set_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.points == g.points);
    CHECK(back.seed == 5);
    CHECK(back.q == 1000);

    nlohmann::json bad = j;
    bad["points"][1] = bad["points"][0];
    CHECK_THROWS_AS(generator_set_from_json(bad), std::invalid_argument);
    bad = j;
    bad.erase("scale");
    CHECK_THROWS_AS(generator_set_from_json(bad), std::invalid_argument);
    bad = j;
    bad["points"][0] = nlohmann::json::array({1});
    CHECK_THROWS_AS(generator_set_from_json(bad), std::invalid_argument);
}

TEST_CASE("arrangement JSON")
{
    const Arrangement arr = build(integer_window(1));
    const nlohmann::json j = arrangement_to_json(arr);
    CHECK(j["stats"]["n_lines"] == 8);
    CHECK(j["vertices"].size() == arr.vertices.size());
    CHECK(j["faces"].size() == arr.faces.size());
    CHECK(j["clip_half_width"] == to_string(arr.clip_half_width));
    // Vertices parse back exactly.
    for (std::size_t v = 0; v < arr.vertices.size(); ++v) {
        CHECK(parse_rat(j["vertices"][v][0].get<std::string>()) == arr.vertices[v].x);
        CHECK(parse_rat(j["vertices"][v][1].get<std::string>()) == arr.vertices[v].y);
    }
    int depth0 = 0;
    for (const auto& f : j["faces"])
        if (f["depth"] == 0) {
            ++depth0;
            CHECK(f["vertices"].size() == 4);
        }
    CHECK(depth0 == 1);
    CHECK(arrangement_to_json(build(integer_window(1))).dump() == j.dump());
}

TEST_CASE("zones CSV")
{
    std::ostringstream empty;
    write_zones_csv(empty, {});
    CHECK(empty.str() == std::string(kZonesCsvHeader) + "\n");

    const auto reps = zone_reports(z2(), 57);
    std::ostringstream os;
    write_zones_csv(os, reps);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    const auto header = split(line, ',');
    REQUIRE(header.size() == 14);
    int rows = 0;
    while (std::getline(is, line)) {
        const auto f = split(line, ',');
        REQUIRE(f.size() == 14);
        ++rows;
        CHECK(std::stoi(f[0]) == rows);
        CHECK(f[4] == "1");
        CHECK(f[5] == "1");
        CHECK(f[6] == "1");
        CHECK(f[7] == "1/1");
        CHECK(f[13] == "1");
        CHECK(std::stod(f[1]) == reps[static_cast<std::size_t>(rows - 1)].r);
        CHECK(std::stod(f[9]) == reps[static_cast<std::size_t>(rows - 1)].distortion);
    }
    CHECK(rows == 57);
}

TEST_CASE("rays CSV")
{
    const auto dirs = ray_directions(8);
    const StabilityResult res = stability_gap(integer_window(9), integer_window(9), 1, dirs);
    std::ostringstream os;
    write_rays_csv(os, res);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == kRaysCsvHeader);
    std::getline(is, line);
    CHECK(line == "1,0,1,0.5,0.5,0,1/2,1/2");
}

TEST_CASE("verification suite passes on the integer lattice")
{
    VerifyOptions opt;
    opt.depth_samples = 300;
    const VerifyReport rep = run_verify(z2(), opt);
    for (const auto& c : rep.checks) {
        CAPTURE(c.name);
        CAPTURE(c.witness);
        CHECK(c.passed);
    }
    CHECK(rep.all_passed());
    const nlohmann::json j = verify_report_to_json(rep);
    CHECK(j["all_passed"] == true);
    CHECK(j["checks"].size() == rep.checks.size());
}

TEST_CASE("verification suite passes on a strong perturbation")
{
    const Arrangement arr = build(perturb({5, 10000, 5000, 11}));
    VerifyOptions opt;
    opt.adversarial_k = 0;
    const VerifyReport rep = run_verify(arr, opt);
    for (const auto& c : rep.checks) {
        CAPTURE(c.name);
        CAPTURE(c.witness);
        CHECK(c.passed);
    }
}

TEST_CASE("a corrupted depth label is caught with a witness")
{
    Arrangement bad = z2();
    std::size_t target = 0;
    for (std::size_t i = 0; i < bad.faces.size(); ++i)
        if (bad.faces[i].depth == 4 && !bad.faces[i].on_clip_boundary) {
            target = i;
            break;
        }
    bad.faces[target].depth = 5;

    const CheckResult dc = check_depth_consistency(bad, 10, 1);
    CHECK_FALSE(dc.passed);
    CHECK(dc.witness.find("k=6 face " + std::to_string(target)) != std::string::npos);
    CHECK_FALSE(check_crossing_rule(bad).passed);

    VerifyOptions opt;
    opt.kmax = 10;
    opt.adversarial_k = 0;
    const VerifyReport rep = run_verify(bad, opt);
    CHECK_FALSE(rep.all_passed());
    const nlohmann::json j = verify_report_to_json(rep);
    bool witnessed = false;
    for (const auto& c : j["checks"])
        if (c["passed"] == false) {
            CHECK(c["witness"].get<std::string>().find("k=") != std::string::npos);
            witnessed = true;
        }
    CHECK(witnessed);
}

TEST_CASE("other checks report failures")
{
    std::vector<ZoneReport> reps = zone_reports(z2(), 10);
    CHECK(check_lattice_brackets(reps, false).passed);
    const CheckResult literal = check_lattice_brackets(reps, true);
    CHECK_FALSE(literal.passed);
    CHECK(literal.witness.rfind("k=1 r = 0.5", 0) == 0);

    reps[3].area = make_rat(3, 2);
    const CheckResult areas = check_unit_areas(reps);
    CHECK_FALSE(areas.passed);
    CHECK(areas.witness == "k=4 area 3/2");

    reps[2].n_chambers = 13;
    CHECK(check_chamber_bound(reps).witness == "k=3 has 13 chambers, bound 12");

    CHECK_FALSE(check_distortion(zone_reports(z2(), 12), 2, 1.5).passed);
    CHECK(check_distortion(zone_reports(z2(), 4), 2, 1.5).passed);

    Arrangement shrunk = z2();
    shrunk.faces.pop_back();
    CHECK_FALSE(check_area_partition(shrunk).passed);
}

TEST_CASE("adversarial chamber")
{
    const AdversarialOutcome out = run_adversarial(z2(), 5, make_rat(2, 5));
    REQUIRE(out.face);
    CHECK(out.face_depth == 4);
    CHECK(out.contains_disc);
    CHECK(out.diameter_sq >= make_rat(4, 25));
    CHECK(to_double(out.area) > M_PI * 0.04);
    CHECK(check_adversarial_chamber(z2(), 5, make_rat(2, 5)).passed);
}
