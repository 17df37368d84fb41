#include "cogmap/io.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>

using namespace cogmap;

namespace fs = std::filesystem;

namespace {

struct Result {
    int exit = -1;
    std::string out;
};

// Runs the cogmap binary with the bundled data dir; stderr is folded into out when merge is set.
Result cli(const std::string& args, bool merge = false) {
    std::string cmd = "COGMAP_DATA_DIR='" COGMAP_TEST_DATA_DIR "' '" COGMAP_CLI_PATH "' " + args;
    cmd += merge ? " 2>&1" : " 2>/dev/null";
    Result r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = ::pclose(pipe);
    r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("cogmap-cli-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("cli infer") {
    auto r = cli("infer --map example-1-2-1 --on Population");
    CHECK(r.exit == 0);
    CHECK(r.out.find("limit cycle, period 4") != std::string::npos);

    auto j = cli("infer --map sec-2-1-P --on 'Social inequality' --format json");
    REQUIRE(j.exit == 0);
    auto doc = Json::parse(j.out);
    CHECK(doc["outcome"] == "fixed_point");
    CHECK(doc["final"]["Manu Dharma"] == "1");

    auto file = cli(std::string("infer --map '") + test::data_path("sec-2-1-R") +
                    "' --on 'Faith in particular religious sect' --format json");
    REQUIRE(file.exit == 0);
    CHECK(Json::parse(file.out)["map"] == "sec-2-1-R");

    auto rel = cli("infer --map sec-2-6-M --side domain --on P7 --format json --trace");
    REQUIRE(rel.exit == 0);
    CHECK(Json::parse(rel.out)["trajectory"].size() >= 2);
}

TEST_CASE("cli scenario files") {
    auto path = scratch("scenario.json");
    write_file(path, R"({"map":"example-1-2-1","on":["Population"]})");
    auto r = cli("infer --scenario '" + path.string() + "' --format json");
    REQUIRE(r.exit == 0);
    CHECK(Json::parse(r.out)["period"] == 4);
}

TEST_CASE("cli exit codes") {
    auto unknown = cli("infer --map example-1-2-1 --on Nobody", true);
    CHECK(unknown.exit == 2);
    CHECK(unknown.out.find("Nobody") != std::string::npos);

    CHECK(cli("infer --map example-1-2-1 --on Population --max-iters 2").exit == 3);
    CHECK(cli("infer --map no-such-map --on X").exit == 1);
    CHECK(cli("infer --map example-1-2-1 --on Population --side range").exit == 1);
    CHECK(cli("frobnicate").exit == 1);
    CHECK(cli("infer").exit == 1);

    auto bad = scratch("bad.cogmap.json");
    write_file(bad, R"({"format_version":"1","kind":"cognitive","nodes":["A","B"],
                       "edges":[{"from":"A","to":"A","weight":"1"},{"from":"A","to":"Z","weight":"1"}]})");
    auto v = cli("validate --map '" + bad.string() + "'", true);
    CHECK(v.exit == 1);
    CHECK(v.out.find("edges[0]") != std::string::npos);
    CHECK(v.out.find("edges[1]") != std::string::npos);
}

TEST_CASE("cli validate") {
    CHECK(cli("validate --map sec-2-1-P").exit == 0);
    CHECK(cli("validate --map sec-2-1-P --simple").exit == 0);
    auto j = cli("validate --map sec-1-6-NR --format json");
    CHECK(j.exit == 0);
    CHECK(Json::parse(j.out)["ok"] == true);
    for (const char* name : {"sec-2-3-T.csv", "sec-2-3-L-ncm.csv", "sec-2-5-S19.csv"}) {
        auto r = cli(std::string("validate --map '" COGMAP_TEST_DATA_DIR "/questionable/") + name + "'", true);
        CHECK_MESSAGE(r.exit == 1, name);
    }
}

TEST_CASE("cli sweep") {
    auto r = cli("sweep --map sec-2-1-R");
    CHECK(r.exit == 0);
    std::size_t row = r.out.find("Faith in particular religious sect");
    REQUIRE(row != std::string::npos);

    auto j = Json::parse(cli("sweep --map sec-2-1-R --format json").out);
    CHECK(j["rows"][2]["on_count"] == 1);
    CHECK(cli("sweep --map sec-2-1-R --max-iters 1").exit == 3);
}

TEST_CASE("cli combine and export") {
    auto a = scratch("a.cogmap.json");
    auto b = scratch("b.cogmap.json");
    write_file(a, R"({"format_version":"1","kind":"cognitive","nodes":["A","B","C"],
                     "edges":[{"from":"A","to":"B","weight":"1"},{"from":"B","to":"C","weight":"1"}]})");
    write_file(b, R"({"format_version":"1","kind":"cognitive","nodes":["A","B"],
                     "edges":[{"from":"A","to":"B","weight":"-1"}]})");
    auto out = scratch("ab.cogmap.json");
    auto r = cli("combine --maps '" + a.string() + "' '" + b.string() + "' --out '" + out.string() + "'");
    REQUIRE(r.exit == 0);
    auto combined = std::get<CognitiveMap>(load_map_file(out));
    CHECK(combined.size() == 3);
    CHECK(combined.weights().nonzero_count() == 1);
    CHECK(combined.metadata().at("combined_from") == "a,b");

    auto dot = cli("export-dot --map example-1-2-1");
    CHECK(dot.exit == 0);
    CHECK(dot.out.rfind("digraph cogmap {", 0) == 0);
    CHECK(dot.out.find("->") != std::string::npos);
    fs::remove_all(a.parent_path());
}
