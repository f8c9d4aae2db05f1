#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "deldil/cli.hpp"

using namespace deldil;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "deldil");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::path(::testing::TempDir()) / ("deldil_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string file(const std::string& name, const std::string& text) {
        const auto p = (dir / name).string();
        io::write_file(p, text);
        return p;
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }

    fs::path dir;
};

// "key value" line from construct/plant output
std::string field(const std::string& out, const std::string& key) {
    std::istringstream in(out);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(key + " ", 0) == 0) return line.substr(key.size() + 1);
    }
    return "";
}

} // namespace

TEST_F(Cli, DilationOfSquare) {
    const auto pts = file("sq.json", R"({"points": [[0,0],[1,0],[1,1],[0,1]]})");
    const auto r = run({"dilation", "--points", pts});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_DOUBLE_EQ(j["max_dilation"].get<double>(), std::sqrt(2.0));

    const auto one = run({"dilation", "--points", pts, "--pair", "0", "1"});
    ASSERT_EQ(one.code, 0);
    EXPECT_DOUBLE_EQ(nlohmann::json::parse(one.out)["dilation"].get<double>(), 1.0);
}

TEST_F(Cli, DilationErrors) {
    const auto line = file("line.json", R"({"points": [[0,0],[1,0],[2,0]]})");
    EXPECT_EQ(run({"dilation", "--points", line}).code, 1);
    const auto bad = file("bad.json", R"({"points": [[0,0],[1,0)");
    const auto r = run({"dilation", "--points", bad});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("malformed JSON"), std::string::npos);
    EXPECT_EQ(run({"dilation", "--points", path("missing.json")}).code, 2);
    const auto sq = file("sq.json", R"({"points": [[0,0],[1,0],[1,1],[0,1]]})");
    const auto tri = file("t.json", R"({"triangles": [[0,1,2],[0,1,3]]})");
    const auto m = run({"dilation", "--points", sq, "--triangulation", tri});
    EXPECT_EQ(m.code, 2);
    EXPECT_NE(m.err.find("malformed triangulation"), std::string::npos);
}

TEST_F(Cli, Verify) {
    const auto sq = file("sq.json", R"({"points": [[0,0],[1,0],[1,1],[0,1]]})");
    const auto crossing = file("cross.json", R"({"triangles": [[0,1,2],[0,1,3]]})");
    EXPECT_EQ(run({"verify", "--points", sq, "--triangulation", crossing}).code, 2);

    const auto good = file("good.json", R"({"triangles": [[0,1,2],[0,2,3]]})");
    EXPECT_EQ(run({"verify", "--points", sq, "--triangulation", good}).code, 0);

    // corner 2 pushed out: diagonal 1-3 becomes the Delaunay edge
    const auto kite = file("kite.json", R"({"points": [[0,0],[1,0],[1.1,1.1],[0,1]]})");
    const auto r = run({"verify", "--points", kite, "--triangulation", good});
    EXPECT_EQ(r.code, 1);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_FALSE(j["valid"].get<bool>());
    EXPECT_EQ(j["violations"].size(), 2u); // one illegal edge, seen from both sides
}

TEST_F(Cli, Sweep) {
    const auto r = run({"sweep", "--d-min", "0.293", "--d-max", "0.294", "--step", "1e-4"});
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "d,ell,t");
    int rows = 0;
    while (std::getline(in, line) && line.rfind("argmax", 0) != 0) {
        EXPECT_GT(std::stod(line.substr(line.rfind(',') + 1)), 1.5810528);
        ++rows;
    }
    EXPECT_EQ(rows, 11);

    const auto wide = run({"sweep", "--d-min", "0", "--d-max", "1", "--step", "1e-3"});
    std::istringstream tail(field(wide.out, "argmax_d"));
    double argmax = 0;
    tail >> argmax;
    EXPECT_GT(argmax, 0.29);
    EXPECT_LT(argmax, 0.30);

    EXPECT_EQ(run({"sweep", "--step", "0"}).code, 2);
    EXPECT_EQ(run({"sweep", "--step", "-1"}).code, 2);
}

TEST_F(Cli, ConstructChew) {
    const auto r = run({"construct", "chew", "--n", "8", "--out", path("c")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(std::stod(field(r.out, "computed_dilation")), 1.53073, 1e-5);
    EXPECT_TRUE(fs::exists(dir / "c" / "points.json"));
    EXPECT_EQ(run({"construct", "chew", "--n", "7"}).code, 2);
    EXPECT_EQ(run({"construct", "hexagon"}).code, 2);
}

TEST_F(Cli, ConstructConvexBound) {
    const auto out = path("cv");
    EXPECT_EQ(run({"construct", "convex", "--d", "0.29", "--alpha", "1.0", "--points", "222", "--out", out,
                   "--assert-bound", "1.5810"}).code, 0);
    EXPECT_EQ(run({"construct", "convex", "--points", "222", "--out", out, "--assert-bound", "1.6"}).code, 1);
    EXPECT_EQ(run({"construct", "convex", "--points", "221", "--out", out}).code, 2);
}

TEST_F(Cli, SpecFile) {
    const auto spec = file("spec.json", R"({"kind": "convex", "d": 0.29, "alpha": 1.0, "points": 18})");
    const auto r = run({"construct", "--spec", spec, "--out", path("s")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(field(r.out, "points"), "18");
    EXPECT_GT(std::stod(field(r.out, "computed_dilation")), std::numbers::pi / 2);
    const auto bad = file("bad.json", R"({"kind": "convex", "d": "wide"})");
    EXPECT_EQ(run({"construct", "--spec", bad}).code, 2);
}

TEST_F(Cli, RoundTrip) {
    for (const std::string kind : {"chew", "convex", "three-circle"}) {
        const auto out = path(kind);
        const auto c = run({"construct", kind, "--out", out});
        ASSERT_EQ(c.code, 0) << kind << c.err;
        const auto pts = out + "/points.json", tri = out + "/triangulation.json";
        EXPECT_EQ(run({"verify", "--points", pts, "--triangulation", tri}).code, 0) << kind;
        const auto d = run({"dilation", "--points", pts, "--triangulation", tri});
        ASSERT_EQ(d.code, 0) << kind;
        EXPECT_EQ(io::fmt(nlohmann::json::parse(d.out)["max_dilation"].get<double>()), field(c.out, "computed_dilation")) << kind;
    }
}

TEST_F(Cli, DeterministicBytes) {
    const auto a = run({"construct", "convex", "--points", "40", "--out", path("a"), "--svg"});
    const auto b = run({"construct", "convex", "--points", "40", "--out", path("b"), "--svg"});
    EXPECT_EQ(a.out, b.out);
    for (const char* f : {"points.json", "triangulation.json", "figure.svg"}) {
        EXPECT_EQ(io::read_file(path("a") + "/" + f), io::read_file(path("b") + "/" + f)) << f;
    }
    const auto svg = io::read_file(path("a") + "/figure.svg");
    EXPECT_NE(svg.find("<polyline"), std::string::npos);
    EXPECT_NE(svg.find("<circle"), std::string::npos);

    const auto r1 = run({"random", "--ns", "10,30", "--trials", "3", "--seed", "5"});
    const auto r2 = run({"random", "--ns", "10,30", "--trials", "3", "--seed", "5", "--threads", "2"});
    EXPECT_EQ(r1.code, 0);
    EXPECT_EQ(r1.out, r2.out);
}

TEST_F(Cli, RandomAndPlant) {
    EXPECT_EQ(run({"random", "--dist", "cauchy"}).code, 2);
    EXPECT_EQ(run({"random", "--ns", "50,x"}).code, 2);
    const auto r = run({"random", "--ns", "10,30", "--trials", "2", "--csv", path("t.csv"), "--json", path("t.json")});
    ASSERT_EQ(r.code, 0);
    const auto csv = io::read_file(path("t.csv"));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,trial,seed,max_dilation,witness_i,witness_j");
    EXPECT_TRUE(nlohmann::json::parse(io::read_file(path("t.json"))).contains("summary"));

    const auto p = run({"plant", "--config", "convex", "--n-outside", "500", "--seed", "1", "--assert-bound", "1.57"});
    EXPECT_EQ(p.code, 0) << p.err;
    EXPECT_EQ(field(p.out, "points"), "722");
    EXPECT_EQ(run({"plant", "--config", "chew"}).code, 2);
}

TEST_F(Cli, Usage) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({"verify", "--points", "x.json"}).code, 2);
}
