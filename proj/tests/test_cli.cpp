#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(INNER_ENTROPY_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_input(const std::string& name, const std::string& body) {
    const fs::path dir = fs::temp_directory_path() / "inner_entropy_cli_test";
    fs::create_directories(dir);
    const fs::path file = dir / name;
    std::ofstream(file) << body;
    return file.string();
}

}  // namespace

TEST_CASE("eval prints the closed-form angular derivative") {
    const std::string in = write_input("example.json", R"({"blaschke": [{"re": 0, "im": 0}, {"re": 0.5, "im": 0}]})");
    const Run r = run("eval --input " + in + " --angle 0");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["boundary"]["closed_form"].get<double>() == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(j["boundary"]["radial_status"] == "finite");
}

TEST_CASE("profile of the identity is zero") {
    const std::string in = write_input("identity.json", R"({"blaschke": [{"re": 0, "im": 0}]})");
    const Run r = run("profile --input " + in + " --n 8");
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line.rfind("# quantity=A n=8 ", 0) == 0);
    std::getline(lines, line);
    CHECK(line == "angle,value,status");
    int rows = 0;
    while (std::getline(lines, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.rfind(',');
        CHECK(std::stod(line.substr(0, c1)) == doctest::Approx(rows / 8.0));
        CHECK(std::abs(std::stod(line.substr(c1 + 1, c2 - c1 - 1))) < 1e-12);
        CHECK(line.substr(c2 + 1) == "finite");
        ++rows;
    }
    CHECK(rows == 8);
}

TEST_CASE("entropy on the worked example") {
    const std::string in = write_input("example.json", R"({"blaschke": [{"re": 0, "im": 0}, {"re": 0.5, "im": 0}]})");
    const Run r = run("entropy --input " + in + " --p 1 --n 4");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const auto& first = j["points"][0];
    CHECK(first["angle"].get<double>() == 0.0);
    CHECK(first["A"].get<double>() == doctest::Approx(std::log(3.0)).epsilon(1e-6));
    CHECK(first["logfp"].get<double>() == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(j["header"]["n"] == 4);
}

TEST_CASE("profile CSV is byte-identical across runs and thread counts") {
    const std::string in = write_input("mixed.json",
                                       R"({"blaschke": [{"re": 0, "im": 0}, {"re": 0.3, "im": -0.4, "mult": 2}],
                                           "atoms": [{"angle": "1/3", "mass": 0.5}]})");
    const Run a = run("profile --input " + in + " --n 16");
    const Run b = run("profile --input " + in + " --n 16");
    const Run c = run("profile --input " + in + " --n 16 2>/dev/null; INNER_ENTROPY_THREADS=1 " +
                      std::string(INNER_ENTROPY_CLI) + " profile --input " + in + " --n 16");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(c.out == a.out + a.out);
    CHECK(a.out.rfind("# quantity=A n=16", 0) == 0);
    CHECK(a.out.find("angle,value,status\n") != std::string::npos);
}

TEST_CASE("exit codes") {
    const std::string good = write_input("square.json", R"({"blaschke": [{"re": 0, "im": 0, "mult": 2}]})");
    const std::string unknown = write_input("unknown.json", R"({"blaschke": [], "zeros": []})");
    const std::string outside = write_input("outside.json", R"({"blaschke": [{"re": 1.5, "im": 0}]})");
    const std::string broken = write_input("broken.json", R"({"blaschke": [)");
    const std::string atom = write_input("atom.json", R"({"atoms": [{"angle": 0, "mass": 1}]})");
    const std::string thirds = write_input("thirds.json", R"({"cantor": {"rule": "thirds", "levels": 200}})");

    CHECK(run("entropy --input " + good + " --n 16").code == 0);
    CHECK(run("entropy --input " + unknown).code == 2);
    CHECK(run("entropy --input " + broken).code == 2);
    CHECK(run("entropy --input " + outside).code == 3);
    CHECK(run("entropy --input " + good + " --tol -1").code == 3);
    CHECK(run("goodlambda --input " + good + " --M 2 --n 8").code == 3);
    CHECK(run("goodlambda --input " + atom + " --n 8").code == 3);
    CHECK(run("bogus --input " + good).code == 2);
    CHECK(run("entropy").code == 2);
    CHECK(run("bcset --input " + thirds + " --p 1").code == 0);
    CHECK(run("decompose --input " + write_input("third.json", R"({"atoms": [{"angle": "1/3", "mass": 1}]})") +
              " --M 1 --depth 12")
              .code == 0);
    CHECK(run("decompose --input " + write_input("tenth.json", R"({"atoms": [{"angle": 0.1, "mass": 1}]})"))
              .code == 3);
}

TEST_CASE("bcset JSON reports the three tests") {
    const std::string in = write_input("poly2.json", R"({"cantor": {"rule": "poly2", "levels": 200}})");
    const Run r = run("bcset --input " + in + " --p 1");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.dump().find("diverges") != std::string::npos);
    CHECK(j.dump().find("\"unanimous\":true") != std::string::npos);

    const std::string thirds = write_input("thirds.json", R"({"cantor": {"rule": "thirds", "levels": 200}})");
    const Run t = run("bcset --input " + thirds + " --p 1");
    REQUIRE(t.code == 0);
    const auto k = nlohmann::json::parse(t.out);
    CHECK(k["result"]["verdict"] == "converges");
    CHECK(k["result"]["unanimous"] == true);
}

TEST_CASE("verify passes on a mixed function") {
    const std::string in = write_input("verify.json", R"({"blaschke": [{"re": 0, "im": 0}, {"re": -0.2, "im": 0.6}],
                                                          "atoms": [{"angle": 0.3, "mass": 0.4}]})");
    CHECK(run("verify --input " + in).code == 0);
}
