#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gfeast/cli.hpp"
#include "gfeast/matrix_market.hpp"
#include "test_support.hpp"

using namespace gfeast;
using nlohmann::json;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() / "gfeast_cli_test";
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"gfeast"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return json::parse(in);
}

struct Fixture {
    TempDir dir;
    std::string a_path, b_path, diag_path;
    Fixture() {
        const RegularPencil p = gfeast_test::reversal_pencil();
        a_path = dir.file("a.mtx");
        b_path = dir.file("b.mtx");
        write_matrix_market_array(a_path, p.A);
        write_matrix_market_array(b_path, p.B);

        CMatrix d(3, 3);
        d(0, 0) = 1.0;
        d(1, 1) = 2.0;
        d(2, 2) = 9.0;
        diag_path = dir.file("diag.mtx");
        write_matrix_market_array(diag_path, d);
    }
};

} // namespace

TEST_CASE("full run over matrix files produces a converged JSON report") {
    Fixture fx;
    const std::string out = fx.dir.file("report.json");
    const int rc = run({"--matrix-a", fx.a_path, "--matrix-b", fx.b_path, "--center", "0,0",
                        "--radius", "1", "--output", out});
    REQUIRE(rc == 0);
    const json j = read_json(out);
    CHECK(j["schema"] == "gfeast-report-v1");
    CHECK(j["method"] == "gfeast");
    CHECK(j["flag"] == 1);
    CHECK(j["problem"]["n"] == 4);
    CHECK(j["s_detected"] == 2);
    REQUIRE(j["eigenvalues"].size() == 2);
    std::vector<cd> lams;
    for (const auto& ev : j["eigenvalues"])
        lams.push_back(cd(ev["re"].get<double>(), ev["im"].get<double>()));
    CHECK(gfeast_test::multiset_distance(lams, {cd(0.2, 0), cd(0.5, 0)}) < 1e-10);
    for (const auto& r : j["residuals"]) CHECK(r.get<double>() < 1e-12);
    CHECK_FALSE(j.contains("history"));
}

TEST_CASE("reports are identical across runs once timings are stripped") {
    Fixture fx;
    const std::string out1 = fx.dir.file("r1.json");
    const std::string out2 = fx.dir.file("r2.json");
    REQUIRE(run({"--matrix-a", fx.a_path, "--matrix-b", fx.b_path, "--center", "0,0",
                 "--radius", "1", "--history", "--output", out1}) == 0);
    REQUIRE(run({"--matrix-a", fx.a_path, "--matrix-b", fx.b_path, "--center", "0,0",
                 "--radius", "1", "--history", "--output", out2}) == 0);
    json j1 = read_json(out1);
    json j2 = read_json(out2);
    CHECK(j1.contains("history"));
    j1.erase("timings");
    j2.erase("timings");
    CHECK(j1.dump() == j2.dump());
}

TEST_CASE("usage errors exit with 64") {
    Fixture fx;
    CHECK(run({"--center", "0,0", "--radius", "1"}) == 64); // no --matrix-a
    CHECK(run({"--matrix-a", fx.a_path, "--center", "0,0", "--radius", "0"}) == 64);
    CHECK(run({"--matrix-a", fx.a_path, "--center", "zero", "--radius", "1"}) == 64);
    CHECK(run({"--matrix-a", fx.a_path, "--center", "0,0", "--radius", "1", "--method",
               "dense"}) == 64);
    CHECK(run({"--matrix-a", fx.a_path, "--center", "0,0", "--radius", "1", "--alpha",
               "1.0"}) == 64);
}

TEST_CASE("runtime failures exit with 1") {
    Fixture fx;
    CHECK(run({"--matrix-a", fx.dir.file("missing.mtx"), "--center", "0,0", "--radius",
               "1"}) == 1);
    // A non-square A with B omitted cannot form a pencil.
    const std::string rect = fx.dir.file("rect.mtx");
    write_matrix_market_array(rect, CMatrix(2, 3));
    CHECK(run({"--matrix-a", rect, "--center", "0,0", "--radius", "1"}) == 1);
}

TEST_CASE("oracle method lists the inside spectrum") {
    Fixture fx;
    const std::string out = fx.dir.file("oracle.json");
    const int rc = run({"--matrix-a", fx.a_path, "--matrix-b", fx.b_path, "--center", "0,0",
                        "--radius", "1", "--method", "oracle", "--output", out});
    REQUIRE(rc == 0);
    const json j = read_json(out);
    CHECK(j["method"] == "oracle");
    CHECK(j["s_exact"] == 2);
    CHECK(j["finite_count"] == 4);
    CHECK(j["infinite_count"] == 0);
    REQUIRE(j["eigenvalues"].size() == 2);
    // Sorted by real part: 0.2 before 0.5.
    CHECK(j["eigenvalues"][0]["re"].get<double>() == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(j["eigenvalues"][1]["re"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("moment method runs end to end on a friendly problem") {
    Fixture fx;
    const std::string out = fx.dir.file("cirr.json");
    const int rc = run({"--matrix-a", fx.diag_path, "--center", "1.5,0", "--radius", "1",
                        "--method", "cirr", "--max-iter", "4", "--output", out});
    REQUIRE(rc == 0);
    const json j = read_json(out);
    CHECK(j["method"] == "cirr");
    CHECK(j["flag"] == 1);
    std::vector<cd> lams;
    for (const auto& ev : j["eigenvalues"])
        lams.push_back(cd(ev["re"].get<double>(), ev["im"].get<double>()));
    CHECK(gfeast_test::multiset_distance(lams, {cd(1, 0), cd(2, 0)}) < 1e-8);
}

TEST_CASE("help exits cleanly") {
    CHECK(run({"--help"}) == 0);
}
