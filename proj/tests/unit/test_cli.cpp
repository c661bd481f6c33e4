#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sdmc/cli.hpp"

using namespace sdmc;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("sdmc_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("stability subcommand") {
    const auto r = cli({"stability", "--omega", "0.9", "--c1", "2", "--c2", "2", "--mode", "plug-in"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("max_modulus 0.948683") != std::string::npos);
    const auto mc = cli({"stability", "--mode", "monte-carlo", "--samples", "20000"});
    CHECK(mc.code == kExitOk);
    CHECK(mc.out.find("std_error") != std::string::npos);
    CHECK(cli({"stability", "--mode", "exact"}).code == kExitConfig);
    const auto dist = cli({"stability", "--dist", "diff-uniform", "--a", "0", "--b", "1", "--points", "5"});
    CHECK(dist.code == kExitOk);
    CHECK(dist.out.rfind("z,pdf,cdf\n", 0) == 0);
}

TEST_CASE("sdmc-check verdicts and exit codes agree") {
    const auto covers = cli({"sdmc-check", "--algo", "partition-sampler", "--func", "sphere", "--dim", "2", "--budget",
                             "2000", "--seed", "7"});
    CHECK(covers.code == kExitOk);
    CHECK(covers.out.rfind("COVERS N=2\n", 0) == 0);

    const auto fails = cli({"sdmc-check", "--algo", "de", "--func", "sphere", "--dim", "10", "--budget", "25050",
                            "--start", "300", "--window-max", "100", "--samples", "20000"});
    CHECK(fails.code == kExitFails);
    CHECK(fails.out.rfind("FAILS t=", 0) == 0);
    CHECK(fails.out.find("\nwitness ") != std::string::npos);
}

TEST_CASE("sdmc-check replays a saved trace") {
    const auto dir = scratch("trace");
    const auto path = (dir / "scope.txt").string();
    const auto a = cli({"sdmc-check", "--algo", "partition-sampler", "--dim", "2", "--budget", "400", "--save-trace",
                        path});
    REQUIRE(a.code == kExitOk);
    const auto b = cli({"sdmc-check", "--trace", path});
    CHECK(b.code == kExitOk);
    CHECK(b.out.rfind("COVERS N=2\n", 0) == 0);
    CHECK(cli({"sdmc-check", "--trace", (dir / "missing.txt").string()}).code != kExitOk);
}

TEST_CASE("argument errors exit with 1 and usage") {
    auto r = cli({"stability", "--bogus"});
    CHECK(r.code == kExitConfig);
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(cli({}).code == kExitConfig);
    CHECK(cli({"frobnicate"}).code == kExitConfig);
    CHECK(cli({"sdmc-check", "--algo", "cma-es"}).code == kExitConfig);
    CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("run, compare and plot") {
    const auto dir = scratch("run");
    write(dir / "zero.json", R"({"algorithm": "de", "function": "sphere", "dim": 2, "runs": 0})");
    CHECK(cli({"run", (dir / "zero.json").string()}).code == kExitConfig);
    CHECK(cli({"run", (dir / "absent.json").string()}).code == kExitConfig);

    for (const std::string algo : {"de", "gtde"}) {
        write(dir / (algo + ".json"), R"({"algorithm": {"id": ")" + algo +
                                          R"(", "population": 8}, "function": "sphere", "dim": 3,
              "budget": 400, "runs": 6, "seed": 2, "instrument": {"std_trace": true, "snapshots": true,
              "snapshot_generations": [3]}})");
        const auto r = cli({"run", (dir / (algo + ".json")).string(), "-o", (dir / algo).string()});
        REQUIRE(r.code == kExitOk);
        CHECK(fs::exists(dir / algo / "run_0.csv"));
        CHECK(fs::exists(dir / algo / "std_5.csv"));
    }
    const auto cmp = cli({"compare", (dir / "de").string(), (dir / "gtde").string(), "--label", "F1", "-o",
                          (dir / "cmp.csv").string()});
    CHECK(cmp.code == kExitOk);
    CHECK(cmp.out.find("\nF1,") != std::string::npos);
    CHECK(fs::exists(dir / "cmp.csv"));

    const auto plot = cli({"plot", (dir / "de" / "std_0.csv").string(), (dir / "gtde" / "std_0.csv").string(), "-o",
                           (dir / "std.svg").string()});
    CHECK(plot.code == kExitOk);
    CHECK(fs::file_size(dir / "std.svg") > 100);
    CHECK(cli({"plot", (dir / "de" / "snap_0.csv").string(), "-o", (dir / "snap.svg").string()}).code == kExitOk);
    CHECK(cli({"plot", (dir / "de" / "run_0.csv").string(), "-o", "/proc/nope/x.svg"}).code == kExitRuntime);
    CHECK(cli({"compare", (dir / "de").string(), (dir / "missing").string()}).code != kExitOk);
}
