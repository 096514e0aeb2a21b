#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "burnside/cli.hpp"

namespace fs = std::filesystem;
using namespace burnside;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "burnside");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Result r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch_dir() {
    const auto dir = fs::temp_directory_path() / ("burnside_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == cli::usage_error);
    CHECK(run({"no-such-command"}).code == cli::usage_error);
    CHECK(run({"sample-partitions", "--n", "10", "--steps", "3"}).code == cli::usage_error);  // no seed
    CHECK(run({"sample-partitions", "--n", "10", "--steps", "3", "--seed", "1", "--bogus"}).code == cli::usage_error);
    CHECK(run({"sample-partitions", "--n", "0", "--steps", "3", "--seed", "1"}).code == cli::usage_error);
    CHECK(run({"sample-partitions", "--n", "ten", "--steps", "3", "--seed", "1"}).code == cli::usage_error);
    CHECK(run({"bench", "--target", "partitions-lumped", "--sizes", "100,10", "--steps", "5", "--seed", "1"})
              .code ==
          cli::usage_error);
    const auto r = run({"volume-test", "--table", "hair-eye", "--steps", "0", "--seed", "1"});
    CHECK(r.code == cli::usage_error);
    CHECK(!r.err.empty());
    CHECK(run({"--help"}).code == cli::ok);
}

TEST_CASE("input errors exit with 3") {
    const auto dir = scratch_dir();
    CHECK(run({"volume-test", "--table", (dir / "missing.json").string(), "--steps", "10", "--seed", "1"}).code ==
          cli::input_error);
    std::ofstream(dir / "bad.json") << R"({"table": [[1, 2], [3]]})";
    CHECK(run({"volume-test", "--table", (dir / "bad.json").string(), "--steps", "10", "--seed", "1"}).code ==
          cli::input_error);
    std::ofstream(dir / "garbage.json") << "not json";
    CHECK(run({"sample-tables", "--table", (dir / "garbage.json").string(), "--steps", "10", "--seed", "1"}).code ==
          cli::input_error);
    CHECK(run({"sample-partitions", "--n", "10", "--steps", "3", "--seed", "1", "--variant", "sideways"}).code ==
          cli::input_error);
    CHECK(run({"limit-law", "--n", "10", "--samples", "3", "--seed", "1", "--feature", "largest"}).code ==
          cli::input_error);
    CHECK(run({"oracle-verify", "--suite", "everything"}).code == cli::input_error);
    fs::remove_all(dir);
}

TEST_CASE("resource caps exit with 4") {
    CHECK(run({"tv-profile", "--n", "5000"}).code == cli::resource_limit);
    CHECK(run({"tv-profile", "--n", "16", "--steps", "65"}).code == cli::resource_limit);
    CHECK(run({"tv-profile", "--n", "9", "--variant", "unlumped"}).code == cli::resource_limit);
    CHECK(run({"oracle-verify", "--max-n", "9"}).code == cli::resource_limit);
}

TEST_CASE("sample-partitions writes one feature row per sample") {
    const auto r = run({"sample-partitions", "--n", "1000", "--steps", "5", "--samples", "4", "--seed", "7"});
    REQUIRE(r.code == cli::ok);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "sample,num_parts,largest_part,ones");
    CHECK(rows[1].rfind("0,", 0) == 0);
    CHECK(!r.err.empty());

    const auto t = run({"sample-partitions", "--n", "1000", "--steps", "10", "--thin", "5", "--trace", "--seed", "7"});
    REQUIRE(t.code == cli::ok);
    const auto trows = lines(t.out);
    REQUIRE(trows.size() == 4);
    CHECK(trows[0] == "step,largest_part,num_parts");
    CHECK(trows[1] == "0,1,1000");

    for (const char* variant : {"lumped", "unlumped"})
        CHECK(run({"sample-partitions", "--n", "50", "--steps", "3", "--samples", "2", "--seed", "1", "--variant",
                   variant})
                  .code == cli::ok);
}

TEST_CASE("identical command lines give byte-identical output") {
    const auto dir = scratch_dir();
    const std::vector<std::vector<std::string>> commands{
        {"sample-partitions", "--n", "100000", "--steps", "20", "--samples", "50", "--seed", "3", "--replicas", "3"},
        {"sample-tables", "--table", "hair-eye", "--steps", "100", "--burnin", "10", "--entries", "--seed", "3"},
        {"volume-test", "--table", "hair-eye", "--steps", "2000", "--runs", "3", "--seed", "3"},
        {"limit-law", "--n", "10000", "--samples", "40", "--feature", "parts", "--seed", "3"},
        {"tv-profile", "--n", "64"},
    };
    for (const auto& cmd : commands) {
        auto with_out = [&](const std::string& name) {
            auto c = cmd;
            c.push_back("--out");
            c.push_back((dir / name).string());
            return c;
        };
        REQUIRE(run(with_out("a.csv")).code == cli::ok);
        REQUIRE(run(with_out("b.csv")).code == cli::ok);
        const auto a = slurp(dir / "a.csv");
        CHECK(!a.empty());
        CHECK(a == slurp(dir / "b.csv"));
        CHECK(a.find('\r') == std::string::npos);
        // Without --out the CSV goes to stdout unchanged.
        CHECK(run(cmd).out == a);
    }
    // The worker count does not change the output.
    CHECK(run({"limit-law", "--n", "10000", "--samples", "40", "--seed", "3", "--replicas", "1"}).out ==
          run({"limit-law", "--n", "10000", "--samples", "40", "--seed", "3", "--replicas", "4"}).out);
    fs::remove_all(dir);
}

TEST_CASE("volume-test output format") {
    const auto dir = scratch_dir();
    std::ofstream(dir / "t.json") << R"({"table": [[6]]})";
    const auto r = run({"volume-test", "--table", (dir / "t.json").string(), "--steps", "100", "--runs", "5", "--seed",
                        "1"});
    REQUIRE(r.code == cli::ok);
    CHECK(lines(r.out) == std::vector<std::string>{"run,estimate", "0,1", "1,1", "2,1", "3,1", "4,1", "median,1"});
    const auto upper = run({"volume-test", "--table", (dir / "t.json").string(), "--steps", "100", "--runs", "1",
                            "--upper-tail", "--variant", "unlumped", "--seed", "1"});
    CHECK(lines(upper.out) == std::vector<std::string>{"run,estimate", "0,1", "median,1"});
    CHECK(run({"volume-test", "--table", "hair-eye", "--steps", "10", "--seed", "1", "--variant", "reflected"}).code ==
          cli::input_error);
    fs::remove_all(dir);
}

TEST_CASE("sample-tables output format") {
    const auto r = run({"sample-tables", "--table", "children-income", "--steps", "6", "--thin", "2", "--seed", "1"});
    REQUIRE(r.code == cli::ok);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "step,chisq");
    const auto e = run({"sample-tables", "--table", "hair-eye", "--steps", "2", "--entries", "--seed", "1"});
    CHECK(lines(e.out)[0] == "step,chisq,entries");
}

TEST_CASE("limit-law, tv-profile, bench and oracle-verify") {
    const auto ll = run({"limit-law", "--n", "10000", "--samples", "5", "--seed", "2", "--part-size", "2"});
    REQUIRE(ll.code == cli::ok);
    CHECK(lines(ll.out).size() == 6);
    CHECK(lines(ll.out)[0] == "sample,raw,normalized");
    CHECK(ll.err.find("ks=") != std::string::npos);

    const auto tv = run({"tv-profile", "--n", "16", "--steps", "5"});
    REQUIRE(tv.code == cli::ok);
    CHECK(lines(tv.out).size() == 6);
    CHECK(lines(tv.out)[0] == "j,tv");
    CHECK(run({"tv-profile", "--n", "4", "--steps", "5", "--variant", "unlumped"}).code == cli::ok);

    const auto bn = run({"bench", "--target", "partitions-reflected", "--sizes", "100,1000,10000", "--steps", "10",
                         "--seed", "1"});
    REQUIRE(bn.code == cli::ok);
    const auto brows = lines(bn.out);
    REQUIRE(brows.size() == 4);
    CHECK(brows[0] == "n,variant,mean_step_ns");
    CHECK(brows[1].rfind("100,partitions-reflected,", 0) == 0);
    CHECK(bn.err.find("slope") != std::string::npos);
    CHECK(run({"bench", "--target", "tables-lumped", "--sizes", "1,2", "--steps", "10", "--seed", "1"}).code ==
          cli::ok);

    const auto ov = run({"oracle-verify", "--suite", "double-coset", "--max-n", "3"});
    CHECK(ov.code == cli::ok);
    for (const auto& line : lines(ov.out)) CHECK(line.rfind("PASS", 0) == 0);
}
