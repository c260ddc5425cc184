#include "ehvortex/cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using ehv::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("ehvortex_cli_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("verify exit codes") {
    CHECK(call({"verify", "--case", "a", "--correction", "perturbative"}).code == 0);
    CHECK(call({"verify", "--case", "b", "--correction", "perturbative"}).code == 0);
    const Result mutated = call({"verify", "--case", "a", "--mutate", "beta.x:1e-3"});
    CHECK(mutated.code == 1);
    CHECK(mutated.out.find("result=FAIL") != std::string::npos);
    CHECK(mutated.out.find("\"alpha\":") != std::string::npos);
    CHECK(call({"verify", "--case", "c"}).code == 2);
    CHECK(call({"verify"}).code == 2);
    CHECK(call({"verify", "--case", "a", "--m", "0"}).code == 2);
    CHECK(call({"verify", "--case", "a", "--mutate", "beta.q:1"}).code == 2);
    CHECK(call({"nonsense"}).code == 2);
}

TEST_CASE("track writes frames, topology and summary reproducibly") {
    const fs::path a = scratch("track_a"), b = scratch("track_b");
    const std::vector<std::string> base{"track", "--case", "b", "--classical", "--box", "4", "--grid", "32",
                                        "--t", "0:0.99:5"};
    auto with_out = [&](const fs::path& p) {
        auto v = base;
        v.push_back("--out");
        v.push_back(p.string());
        return v;
    };
    REQUIRE(call(with_out(a)).code == 0);
    REQUIRE(call(with_out(b)).code == 0);
    for (const char* name : {"frame_0000.json", "frame_0004.json", "topology.csv", "summary.json"}) {
        CAPTURE(name);
        REQUIRE(fs::exists(a / name));
        CHECK(slurp(a / name) == slurp(b / name));
        CHECK(slurp(a / name).find("\"alpha\":") != std::string::npos);
    }
    CHECK_FALSE(fs::exists(a / "frame_0005.json"));
    const std::string csv = slurp(a / "topology.csv");
    CHECK(csv.find("\ntime,component_count,radius,planarity,arclength\n") != std::string::npos);
    CHECK(csv.find("\n0.99,0,") != std::string::npos);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("track echoes coupling scale and rejects bad ranges") {
    const fs::path a = scratch("track_scale");
    const Result r = call({"track", "--case", "a", "--quantum", "--alpha", "0.1", "--coupling-scale", "3", "--grid",
                           "16", "--t", "0:0.5:2", "--out", a.string()});
    REQUIRE(r.code == 0);
    const std::string js = slurp(a / "frame_0000.json");
    CHECK(js.find("\"coupling_scale\": 3.0") != std::string::npos);
    CHECK(js.find("\"mode\": \"quantum\"") != std::string::npos);
    fs::remove_all(a);

    CHECK(call({"track", "--case", "a", "--t", "1:0:3", "--out", a.string()}).code == 2);
    CHECK(call({"track", "--case", "a", "--t", "0:1:1", "--out", a.string()}).code == 2);
    CHECK(call({"track", "--case", "a", "--t", "0:1:3", "--grid", "4", "--out", a.string()}).code == 2);
    CHECK(call({"track", "--case", "a", "--classical", "--quantum", "--t", "0:1:3", "--out", a.string()}).code == 2);
    CHECK(call({"track", "--case", "a", "--t", "0:1:3", "--coupling-scale", "-1", "--out", a.string()}).code == 2);
}

TEST_CASE("render draws axes for an empty frame and overlays the ring") {
    const fs::path dir = scratch("render");
    fs::create_directories(dir);
    {
        std::ofstream os(dir / "empty.json");
        os << R"({"time": 0.5, "curves": []})";
    }
    const Result r = call({"render", "--in", (dir / "empty.json").string(), "--out", (dir / "svg").string()});
    REQUIRE(r.code == 0);
    const std::string svg = slurp(dir / "svg" / "empty.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<line") != std::string::npos);
    CHECK(svg.find("<polyline") == std::string::npos);

    const fs::path tr = dir / "ring";
    REQUIRE(call({"track", "--case", "a", "--classical", "--grid", "32", "--t", "0:0.3:2", "--out", tr.string()}).code ==
            0);
    REQUIRE(call({"render", "--in", tr.string(), "--out", (dir / "svg2").string(), "--overlay-ring"}).code == 0);
    const std::string ring = slurp(dir / "svg2" / "frame_0000.svg");
    CHECK(ring.find("stroke-dasharray") != std::string::npos);
    CHECK(ring.find("<polygon fill=\"none\" stroke=\"#1f3f9f\"") != std::string::npos);

    REQUIRE(call({"render", "--in", tr.string(), "--out", (dir / "svg3").string(), "--camera", "pair", "--y-range",
                  "-1.5:0.5"}).code == 0);
    CHECK(slurp(dir / "svg3" / "frame_0001.svg").find("y [-1.500, 0.500]") != std::string::npos);

    CHECK(call({"render", "--in", (dir / "missing.json").string(), "--out", (dir / "x").string()}).code == 2);
    CHECK(call({"render", "--in", tr.string(), "--out", (dir / "x").string(), "--camera", "fisheye"}).code == 2);
    fs::remove_all(dir);
}

TEST_CASE("integrate writes a convergence table") {
    const Result r = call({"integrate", "--case", "a", "--classical", "--box", "2", "--grid", "16", "--t", "0:0.1",
                           "--dt", "0.05", "--halvings", "1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("resolution,dt,max_interior_error\n16,0.05,") != std::string::npos);
    CHECK(r.out.find("\n16,0.025,") != std::string::npos);
    CHECK(call({"integrate", "--case", "a", "--grid", "16", "--dt", "1"}).code == 2);
    CHECK(call({"integrate", "--case", "a", "--grid", "16", "--against", "magic"}).code == 2);
}
