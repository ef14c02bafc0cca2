#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fibrak/corpus.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

std::string cli_path() {
    const char* p = std::getenv("FIBRAK_CLI");
    REQUIRE(p != nullptr);
    return p;
}

std::string data_dir() {
    const char* p = std::getenv("FIBRAK_DATA");
    REQUIRE(p != nullptr);
    return p;
}

RunResult run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf{};
    size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("check accepts a well-formed fibration file") {
    const auto r = run("check " + data_dir() + "/interval_id.fib");
    CHECK(r.code == 0);
    CHECK(r.out.find("fibration: ok") != std::string::npos);
}

TEST_CASE("classify record output is byte-identical across runs") {
    for (const auto& name : fibrak::corpus_names()) {
        const std::string args = "classify --corpus " + name + " --format records";
        const auto first = run(args);
        const auto second = run(args);
        CAPTURE(name);
        CHECK(first.code == 0);
        CHECK(first.out == second.out);
        CHECK(first.out.find("is_goedel\t") != std::string::npos);
    }
}

TEST_CASE("classify exits 0 even when every verdict is negative") {
    const auto r = run("classify --corpus finset-identity-allmaps --format records");
    CHECK(r.code == 0);
    CHECK(r.out.find("is_hilbert_epsilon\tfalse") != std::string::npos);
    // the counterexample must name the offending base arrow
    CHECK(r.out.find("c2_1_00") != std::string::npos);
}

TEST_CASE("malformed input exits 2 with a line-numbered diagnostic") {
    const auto bad_compose = run("check " + data_dir() + "/malformed.fcat");
    CHECK(bad_compose.code == 2);
    const auto bad_section = run("check " + data_dir() + "/malformed.fib");
    CHECK(bad_section.code == 2);
    CHECK(bad_section.out.find("line") != std::string::npos);
}

TEST_CASE("a failing property exits 1") {
    const auto r = run("check --corpus finset-identity-allmaps");
    CHECK(r.code == 1);
}

TEST_CASE("an exhausted budget exits 3") {
    const auto r = run("classify --corpus pointed-completion --budget 5");
    CHECK(r.code == 3);
    CHECK(r.out.find("budget") != std::string::npos);
}

TEST_CASE("FIBRAK_BUDGET environment variable sets the default budget") {
    const std::string cmd = "env FIBRAK_BUDGET=5 " + cli_path() + " classify --corpus pointed-completion >/dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 3);
}

TEST_CASE("complete output re-parses and passes check") {
    namespace fs = std::filesystem;
    const fs::path tmp = fs::temp_directory_path() / "fibrak_cli_test";
    fs::create_directories(tmp);
    for (const std::string mode : {"--sigma", "--pi", "--dialectica"}) {
        const fs::path out = tmp / ("interval" + mode.substr(2) + ".fib");
        const auto done = run("complete " + mode + " " + data_dir() + "/interval_id.fib -o " + out.string());
        CAPTURE(mode);
        CHECK(done.code == 0);
        const auto back = run("check " + out.string());
        CHECK(back.code == 0);
    }
}

TEST_CASE("skolem, prenex and roundtrip succeed on corpus instances") {
    const auto sk = run("skolem --corpus interval-codomain --g f --f id_a --beta id_a");
    CHECK(sk.code == 0);
    CHECK(sk.out.find("skolemize: ok") != std::string::npos);
    CHECK(sk.out.find("bijection") != std::string::npos);

    const auto px = run("prenex --corpus dial-of-identity --alpha \"(f,(id_a,a))\"");
    CHECK(px.code == 0);
    CHECK(px.out.find("prenex: ok") != std::string::npos);

    const auto rt = run("roundtrip --corpus indiscrete-identity");
    CHECK(rt.code == 0);
}

TEST_CASE("export --dot emits a graphviz digraph") {
    const auto r = run("export --dot --corpus terminal-identity");
    CHECK(r.code == 0);
    CHECK(r.out.find("digraph") != std::string::npos);
    CHECK(r.out.find("cluster") != std::string::npos);
}
