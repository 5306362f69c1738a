#include "doctest.h"

#include "cli.hpp"
#include "kvassoc/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

using namespace kvassoc;
using io::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "kvassoc");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("kvassoc_test_" + name)).string();
}

const json* find_check(const json& report, const std::string& id) {
    for (const auto& c : report["checks"])
        if (c["check"] == id) return &c;
    return nullptr;
}

void check_report_shape(const json& r) {
    for (const char* k : {"version", "command", "cap", "seed", "wall_time_seconds", "checks"}) CHECK(r.contains(k));
    std::string last;
    for (const auto& c : r["checks"]) {
        std::string id = c["check"];
        CHECK(last < id);
        last = id;
        std::string st = c["status"];
        CHECK((st == "pass" || st == "fail" || st == "skipped"));
        CHECK(c["first_failure_degree"].is_null() == (st != "fail"));
        CHECK(c["anchor"].is_string());
    }
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"solve"}).code == 2);
    CHECK(run({"solve", "--degree", "1"}).code == 2);
    CHECK(run({"verify", "--suite", "nonsense"}).code == 2);
    CHECK(run({"verify", "--suite", "kv"}).code == 2);
    CHECK(run({"verify", "--suite", "kv", "--associator", "/nonexistent.json"}).code == 2);
    CHECK(run({"gamma", "--associator", "/nonexistent.json"}).code == 2);
    CHECK(run({"braid", "--action", "twist", "--word", "x12", "--strands", "3"}).code == 2);
    CHECK(run({"braid", "--action", "ad", "--word", "s1", "--strands", "3"}).code == 2);
    CHECK(run({"braid", "--action", "ad", "--word", "x15", "--strands", "3"}).code == 2);
    CHECK(run({"braid", "--action", "cable", "--word", "x12", "--strands", "3", "--mult", "1,2"}).code == 2);
    CHECK(run({"--help"}).code == 0);

    std::string bad = temp_path("bad.json");
    {
        std::FILE* f = std::fopen(bad.c_str(), "w");
        std::fputs("{\"letters\": 2", f);
        std::fclose(f);
    }
    Run r = run({"verify", "--suite", "kv", "--associator", bad});
    CHECK(r.code == 2);
    CHECK(r.err.find("invalid JSON") != std::string::npos);
    std::filesystem::remove(bad);
}

TEST_CASE("solve writes an associator and reports the defining relations") {
    std::string path = temp_path("phi4.json");
    Run r = run({"solve", "--degree", "4", "--even", "--out", path});
    REQUIRE(r.code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["command"] == "solve");
    CHECK(rep["cap"] == 4);
    CHECK(rep["zeta"][2] == "-1/24");
    CHECK(rep["zeta"][4] == "1/1440");
    CHECK(rep["checks"].size() == 5);
    for (const auto& c : rep["checks"]) CHECK(c["status"] == "pass");
    CHECK(r.err.find("-1/24") != std::string::npos);

    Associator phi = io::associator_from_json(io::read_file(path));
    CHECK(phi.cap() == 4);
    CHECK(phi.even);
    CHECK(phi.log == solve_associator(4, true).log);

    Run g = run({"gamma", "--associator", path});
    CHECK(g.code == 0);
    CHECK(g.out.find("-1/24") != std::string::npos);
    CHECK(g.out.find("  2  -1/24  -1/48\n") != std::string::npos);  // log Gamma: zeta(2) u^2 / 2
    CHECK(g.out.find("\n  3 ") == std::string::npos);

    // the cap of a loaded file bounds --degree
    CHECK(run({"verify", "--suite", "kv", "--associator", path, "--degree", "5"}).code == 2);
    std::filesystem::remove(path);
}

TEST_CASE("verify reports: sorted ids, exit codes, skipped checks") {
    Run c = run({"verify", "--suite", "cocycle", "--degree", "3", "--seed", "7"});
    REQUIRE(c.code == 0);
    json rc = json::parse(c.out);
    check_report_shape(rc);
    CHECK(rc["cap"] == 3);
    CHECK(rc["seed"] == 7);
    CHECK(find_check(rc, "cocycle.jacobian.composition") != nullptr);

    std::string even = temp_path("even5.json"), generic = temp_path("generic5.json");
    io::write_file(even, io::to_json(solve_associator(5, true)));
    io::write_file(generic, io::to_json(solve_associator(5, false, Rational(1))));

    Run e = run({"verify", "--suite", "kv", "--associator", even});
    json re = json::parse(e.out);
    check_report_shape(re);
    CHECK(re["cap"] == 5);
    const json* swap = find_check(re, "kv.swap_symmetry.s=-1/4");
    REQUIRE(swap != nullptr);
    CHECK((*swap)["status"] == "fail");
    CHECK((*swap)["first_failure_degree"] == 1);
    CHECK((*swap)["witness"]["degree"] == 1);
    CHECK((*find_check(re, "kv.swap_symmetry.s=+1/4"))["status"] == "pass");
    int failures = 0;
    for (const auto& ch : re["checks"]) failures += ch["status"] == "fail";
    CHECK(failures == 1);
    CHECK(e.code == 1);

    Run g = run({"verify", "--suite", "kv", "--associator", generic});
    json rg = json::parse(g.out);
    CHECK(g.code == 0);
    CHECK((*find_check(rg, "kv.swap_symmetry.s=-1/4"))["status"] == "skipped");
    CHECK((*find_check(rg, "kv.kv3"))["status"] == "pass");

    std::filesystem::remove(even);
    std::filesystem::remove(generic);
}

TEST_CASE("braid actions") {
    Run ad = run({"braid", "--action", "ad", "--word", "x12", "--strands", "3"});
    CHECK(ad.code == 0);
    FreeAut img = ad_pb(PBWord::generator(3, 1, 2));
    CHECK(ad.out == "X1 -> " + img.image(1).str() + "\nX2 -> " + img.image(2).str() + "\n");
    CHECK(!img.is_identity());

    Run m = run({"braid", "--action", "ad", "--word", "x13", "--strands", "3", "--cap", "3"});
    CHECK(m.code == 0);
    TangAut g = io::taut_from_json(json::parse(m.out));
    CHECK(g == malcev_taut(PBWord::generator(3, 1, 3), 3));

    Run a = run({"braid", "--action", "artin", "--word", "s1", "--strands", "2"});
    CHECK(a.out == "X1 -> X1 X2 X1^-1\nX2 -> X1\n");
    Run ap = run({"braid", "--action", "artin", "--word", "x12", "--strands", "2"});
    CHECK(ap.out == run({"braid", "--action", "artin", "--word", "s1 s1", "--strands", "2"}).out);

    Run cab = run({"braid", "--action", "cable", "--word", "x12", "--strands", "2", "--mult", "1,2"});
    CHECK(cab.code == 0);
    CHECK(cab.out == "x12 x13\n");
    Run cg = run({"braid", "--action", "cable", "--word", "s1", "--strands", "2", "--mult", "1,2"});
    CHECK(cg.code == 0);
    CHECK(BraidWord::parse(3, cg.out.substr(0, cg.out.size() - 1)).permutation() == std::vector<int>{3, 1, 2});
}

TEST_CASE("degree 2 solve is deterministic and holds a single bracket") {
    std::string a = temp_path("d2a.json"), b = temp_path("d2b.json");
    REQUIRE(run({"solve", "--degree", "2", "--out", a}).code == 0);
    REQUIRE(run({"solve", "--degree", "2", "--out", b}).code == 0);
    json ja = io::read_file(a);
    CHECK(io::dump(ja) == io::dump(io::read_file(b)));
    CHECK(ja["terms"] == json::parse(R"([[[1,2],"1/24"]])"));
    std::filesystem::remove(a);
    std::filesystem::remove(b);

    // same seed, same random subcases
    auto strip = [](std::string s) {
        json j = json::parse(s);
        j.erase("wall_time_seconds");
        return j;
    };
    CHECK(strip(run({"verify", "--suite", "cocycle", "--degree", "3", "--seed", "11"}).out) ==
          strip(run({"verify", "--suite", "cocycle", "--degree", "3", "--seed", "11"}).out));
}

TEST_CASE("a corrupted coefficient is caught at its degree") {
    json j = io::to_json(solve_associator(5, true));
    json t = j["terms"];
    t.push_back(json::array({json::array({1, 1, 2}), "1/1"}));
    std::sort(t.begin(), t.end(), [](const json& p, const json& q) {
        return p[0].size() != q[0].size() ? p[0].size() < q[0].size() : p[0] < q[0];
    });
    j["terms"] = t;
    std::string path = temp_path("corrupt.json");
    io::write_file(path, j);

    Run r = run({"verify", "--suite", "kv", "--associator", path});
    CHECK(r.code == 1);
    json rep = json::parse(r.out);
    check_report_shape(rep);
    CHECK((*find_check(rep, "kv.mu_cofaces"))["first_failure_degree"] == 3);
    CHECK((*find_check(rep, "input.zeta_table"))["first_failure_degree"] == 3);
    CHECK((*find_check(rep, "input.even_flag"))["status"] == "fail");
    CHECK((*find_check(rep, "kv.swap_symmetry.s=-1/4"))["status"] == "skipped");

    // the gamma table has no check list to report into, so it refuses the file
    CHECK(run({"gamma", "--associator", path}).code == 2);
    std::filesystem::remove(path);
}
