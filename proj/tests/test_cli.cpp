#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pathsum/cli.hpp"

using pathsum::run_cli;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

}  // namespace

TEST_CASE("documented CSV headers per subcommand") {
    CHECK(first_line(invoke({"pathsum", "--n", "1", "--circuit", "H 0"}).out) ==
          "z_in,z_out,re,im");
    CHECK(first_line(invoke({"pathsum", "--n", "1", "--circuit", "H 0", "--zin", "0", "--zout",
                             "1", "--paths"}).out) == "path,states,action_pi,log2_magnitude");
    CHECK(first_line(invoke({"deutsch", "--f", "id"}).out) == "f,verdict,outcome,probability");
    CHECK(first_line(invoke({"grover", "--n", "2", "--w", "1", "--iters", "1"}).out) ==
          "iter,z,amplitude_re,amplitude_im,prob");
    CHECK(first_line(invoke({"anneal", "protocol", "--N", "16", "--eps", "0.2", "--points",
                             "9"}).out) == "schedule,t,lambda,gap");
    CHECK(first_line(invoke({"anneal", "gap", "--N", "16"}).out) == "lambda,gap");
    CHECK(first_line(invoke({"anneal", "qaoa", "--M", "4", "--T", "2"}).out) == "l,beta,gamma");
    CHECK(first_line(invoke({"walks", "classical", "--steps", "4"}).out) == "j,probability");
    CHECK(first_line(invoke({"walks", "ctqrw", "--N", "16", "--t", "1"}).out) ==
          "d,re,im,probability");
    CHECK(first_line(invoke({"walks", "dtqrw", "--steps", "5"}).out) == "z,probability");
    CHECK(first_line(invoke({"walks", "checkerboard", "--steps", "4", "--mass", "0.5"}).out) ==
          "z,re,im,probability");
    CHECK(first_line(invoke({"walks", "grover-walk", "--N", "16", "--points", "5"}).out) ==
          "t,probability");
    CHECK(first_line(invoke({"statmech", "transfer", "--n", "4", "--h", "1", "--beta", "1"}).out) ==
          "n,h,J,beta,Z");
    CHECK(first_line(invoke({"statmech", "trotter", "--h", "1", "--J", "1", "--beta", "1",
                             "--M-max", "8"}).out) == "M,Z_M,abs_error");
    CHECK(first_line(invoke({"statmech", "sign", "--h", "1", "--J", "1", "--beta", "1", "--M",
                             "4"}).out) == "phase,count,weight");
    CHECK(first_line(invoke({"statmech", "action", "--slices", "3", "--sites", "3", "--h", "1",
                             "--J", "1", "--dtau", "0.2"}).out) ==
          "temporal,spatial,value,offset");
    CHECK(first_line(invoke({"statmech", "propagator", "--M", "1", "--L", "4", "--a", "0.5"}).out) ==
          "x,re,im,modulus");
}

TEST_CASE("grover reproduction: N = 4, w = 1 reaches probability one") {
    const CliResult r = invoke({"grover", "--n", "2", "--w", "1", "--iters", "1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("1,1,1,0,1\n") != std::string::npos);  // iter 1, z = w
    CHECK(r.out.back() == '\n');
    CHECK(r.out.find("\r") == std::string::npos);  // LF endings only
}

TEST_CASE("byte-identical output for identical invocations and thread counts") {
    const std::vector<std::string> base{"pathsum", "--n", "4", "--random-depth", "9",
                                        "--seed", "42"};
    const CliResult once = invoke(base);
    const CliResult twice = invoke(base);
    REQUIRE(once.code == 0);
    CHECK(once.out == twice.out);

    std::vector<std::string> threaded = base;
    threaded.insert(threaded.end(), {"--threads", "4"});
    CHECK(invoke(threaded).out == once.out);

    const std::vector<std::string> walk{"walks", "ctqrw", "--N", "128", "--t", "3"};
    const std::string serial = invoke(walk).out;
    std::vector<std::string> walk_threaded = walk;
    walk_threaded.insert(walk_threaded.end(), {"--threads", "3"});
    CHECK(invoke(walk_threaded).out == serial);
}

TEST_CASE("seed changes the random circuit, identical seeds do not") {
    const CliResult a = invoke({"pathsum", "--n", "3", "--random-depth", "6", "--seed", "7"});
    const CliResult b = invoke({"pathsum", "--n", "3", "--random-depth", "6", "--seed", "8"});
    const CliResult c = invoke({"pathsum", "--n", "3", "--random-depth", "6", "--seed", "7"});
    CHECK(a.out != b.out);
    CHECK(a.out == c.out);
}

TEST_CASE("json format carries the same rows") {
    const CliResult r = invoke({"walks", "classical", "--steps", "2", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto rows = nlohmann::json::parse(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0]["j"] == -2);
    CHECK(rows[0]["probability"] == 0.25);
    CHECK(rows[2]["probability"] == 0.5);
}

TEST_CASE("output file writing and the unwritable-path failure") {
    const std::string path = "cli_test_output.csv";
    const CliResult ok = invoke({"anneal", "gap", "--N", "4", "--output", path});
    REQUIRE(ok.code == 0);
    std::ifstream file(path, std::ios::binary);
    std::stringstream content;
    content << file.rdbuf();
    CHECK(first_line(content.str()) == "lambda,gap");
    std::remove(path.c_str());

    const CliResult bad =
        invoke({"anneal", "gap", "--N", "4", "--output", "/nonexistent_dir/x.csv"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("cannot write") != std::string::npos);
}

TEST_CASE("exit codes: usage 2, precondition 2, budget 1, coarse grid 2") {
    CHECK(invoke({"no-such-command"}).code == 2);
    CHECK(invoke({"grover", "--n", "2"}).code == 2);  // missing required flags
    const CliResult range = invoke({"grover", "--n", "2", "--w", "9", "--iters", "1"});
    CHECK(range.code == 2);
    CHECK(range.err.find("w must satisfy") != std::string::npos);

    const CliResult budget =
        invoke({"statmech", "sign", "--h", "1", "--J", "1", "--beta", "1", "--M", "30"});
    CHECK(budget.code == 1);
    CHECK(budget.err.find("budget") != std::string::npos);

    const CliResult coarse = invoke({"statmech", "propagator", "--M", "32", "--a", "0.05"});
    CHECK(coarse.code == 2);
    CHECK(coarse.err.find("too coarse") != std::string::npos);

    CHECK(invoke({"--help"}).code == 0);
    CHECK(invoke({"grover", "--help"}).code == 0);
}

TEST_CASE("PATHSUM_THREADS env var is honored and overridden by the flag") {
    const std::string serial = invoke({"anneal", "gap", "--N", "32", "--points", "101"}).out;
    setenv("PATHSUM_THREADS", "4", 1);
    const std::string env_threaded = invoke({"anneal", "gap", "--N", "32", "--points", "101"}).out;
    const std::string flagged =
        invoke({"anneal", "gap", "--N", "32", "--points", "101", "--threads", "2"}).out;
    unsetenv("PATHSUM_THREADS");
    CHECK(env_threaded == serial);
    CHECK(flagged == serial);
}

TEST_CASE("deutsch verdict rows for all four functions") {
    CHECK(invoke({"deutsch", "--f", "const0"}).out.find("constant,0,1") != std::string::npos);
    CHECK(invoke({"deutsch", "--f", "const1"}).out.find("constant,0,1") != std::string::npos);
    CHECK(invoke({"deutsch", "--f", "id"}).out.find("balanced,1,1") != std::string::npos);
    CHECK(invoke({"deutsch", "--f", "not"}).out.find("balanced,1,1") != std::string::npos);
    const CliResult trace = invoke({"deutsch", "--f", "not", "--trace"});
    CHECK(std::count(trace.out.begin(), trace.out.end(), '\n') == 9);  // header + 8 paths
}
