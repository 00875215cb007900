#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "fqlab/cli.hpp"
#include "fqlab/report.hpp"

using namespace fqlab;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    args.insert(args.begin(), "fqlab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(FQLAB_TEST_DATA) + "/" + name; }

fs::path temp_dir(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("fqlab-cli-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("count prints the conic series") {
    const auto r = cli({"count", "--spec", data("conic_p5.json"), "--max-ext", "3"});
    REQUIRE(r.code == kExitOk);
    const auto j = json::parse(r.out);
    REQUIRE(j["counts"].size() == 3);
    CHECK(j["counts"][0]["count"] == "6");
    CHECK(j["counts"][1]["count"] == "26");
    CHECK(j["counts"][2]["count"] == "126");
}

TEST_CASE("count in csv") {
    const auto r = cli({"--format", "csv", "count", "--spec", data("elliptic_p5.json")});
    REQUIRE(r.code == kExitOk);
    std::istringstream in(r.out);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "fingerprint,m,count");
    CHECK(row.substr(row.size() - 4) == ",1,6");
}

TEST_CASE("exit codes") {
    CHECK(cli({"count", "--spec", data("malformed_cubic.json")}).code == kExitParse);
    CHECK(cli({"count", "--spec", data("no_such_file.json")}).code != kExitOk);
    CHECK(cli({"--format", "xml", "count", "--spec", data("conic_p5.json")}).code == kExitParse);
    CHECK(cli({"--bogus"}).code == kExitParse);
    CHECK(cli({}).code == kExitParse);
    CHECK(cli({"--budget", "10", "count", "--spec", data("conic_p5.json")}).code == kExitBudget);
    CHECK(cli({"--threads", "0", "count", "--spec", data("conic_p5.json")}).code == kExitParse);
    CHECK(cli({"verify", "genus2"}).code == kExitOk);
    CHECK(cli({"verify", "fermat"}).code == kExitOk);
    // q = 1 on a genus-2 identity: the bound is expected to fail.
    CHECK(cli({"dynamics", "--lambda", "-2", "--n", "1", "--q", "1", "--b-middle", "0"}).code == kExitCheckFailed);
}

TEST_CASE("verify subcommands pass on the sample specs") {
    CHECK(cli({"verify", "thm-a", "--spec", data("quadric_surface_p3.json"), "--max-ext", "2"}).code == kExitOk);
    CHECK(cli({"verify", "thm-b", "--spec", data("conic_p5.json"), "--hyperplane", "2"}).code == kExitOk);
    CHECK(cli({"verify", "katz", "--spec", data("fermat_cubic_p7.json")}).code == kExitOk);
    CHECK(cli({"verify", "genus", "--spec", data("elliptic_p5.json")}).code == kExitOk);
    const auto z = cli({"zeta", "--spec", data("quadric_surface_p3.json")});
    CHECK(z.code == kExitOk);
    for (const auto& r : json::parse(z.out)["reports"]) CHECK(validate_report_json(r).empty());
}

TEST_CASE("repeated runs are byte-identical and independent of the worker count") {
    const std::vector<std::string> args = {"count", "--spec", data("quadric_surface_p3.json"), "--max-ext", "3"};
    const auto a = cli(args);
    const auto b = cli(args);
    CHECK(a.out == b.out);
    auto par = args;
    par.insert(par.begin(), {"--threads", "4"});
    CHECK(cli(par).out == a.out);

    const std::vector<std::string> rep = {"report", "--spec", data("elliptic_p5.json"), "--spec",
                                          data("quadric_surface_p3.json")};
    const auto r1 = cli(rep);
    REQUIRE(r1.code == kExitOk);
    CHECK(cli(rep).out == r1.out);
}

TEST_CASE("environment variables supply defaults and flags override them") {
    ::setenv("FQLAB_FORMAT", "csv", 1);
    const auto env = cli({"count", "--spec", data("conic_p5.json")});
    CHECK(env.out.rfind("fingerprint,m,count", 0) == 0);
    const auto flag = cli({"--format", "json", "count", "--spec", data("conic_p5.json")});
    CHECK(flag.out.front() == '{');
    ::unsetenv("FQLAB_FORMAT");

    ::setenv("FQLAB_MAX_EXT", "2", 1);
    CHECK(json::parse(cli({"count", "--spec", data("conic_p5.json")}).out)["counts"].size() == 2);
    ::unsetenv("FQLAB_MAX_EXT");
}

TEST_CASE("cache directory is filled, reused and audited") {
    const auto dir = temp_dir("cache");
    const auto a = cli({"--cache", dir.string(), "count", "--spec", data("conic_p5.json"), "--max-ext", "2"});
    REQUIRE(a.code == kExitOk);
    REQUIRE(fs::exists(dir / "counts.csv"));
    const auto b = cli({"--cache", dir.string(), "count", "--spec", data("conic_p5.json"), "--max-ext", "2"});
    CHECK(b.out == a.out);

    std::string body;
    {
        std::ifstream in(dir / "counts.csv");
        body.assign(std::istreambuf_iterator<char>(in), {});
    }
    const auto pos = body.find(",2,26");
    REQUIRE(pos != std::string::npos);
    body.replace(pos, 5, ",2,27");
    {
        std::ofstream out(dir / "counts.csv");
        out << body;
    }
    // Served as stored unless audited.
    const auto trusted = cli({"--cache", dir.string(), "count", "--spec", data("conic_p5.json"), "--max-ext", "2"});
    CHECK(trusted.code == kExitOk);
    CHECK(trusted.out.find("\"27\"") != std::string::npos);
    const auto audit =
        cli({"--cache", dir.string(), "--audit", "count", "--spec", data("conic_p5.json"), "--max-ext", "2"});
    CHECK(audit.code == kExitIntegrity);
    {
        std::ofstream out(dir / "counts.csv", std::ios::app);
        out << "garbage line\n";
    }
    CHECK(cli({"--cache", dir.string(), "count", "--spec", data("conic_p5.json")}).code == kExitIntegrity);
    fs::remove_all(dir);
}

TEST_CASE("gen writes reproducible specs") {
    const auto dir = temp_dir("gen");
    const std::vector<std::string> args = {"--seed", "3", "gen", "--N", "2", "--degrees", "3", "--p", "5",
                                           "--count", "2", "--out", dir.string()};
    const auto a = cli(args);
    REQUIRE(a.code == kExitOk);
    CHECK(json::parse(a.out)["specs"].size() == 2);
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        ++files;
        CHECK(cli({"count", "--spec", e.path().string()}).code == kExitOk);
    }
    CHECK(files == 2);
    CHECK(cli(args).out == a.out);
    fs::remove_all(dir);
}

TEST_CASE("dynamics sweep passes") {
    const auto r = cli({"dynamics", "--n-max", "3", "--q-max", "4", "--k-max", "4", "--kn-max", "3"});
    CHECK(r.code == kExitOk);
    const auto j = json::parse(r.out);
    CHECK(j["reports"].size() > 10);
    for (const auto& rep : j["reports"]) CHECK(rep["pass"] == true);
}
