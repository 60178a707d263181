#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "simcoal/lts.hpp"
#include "simcoal/report.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

const fs::path& work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "simcoal_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run(const std::string& args) {
    fs::path out = work_dir() / "stdout.txt";
    fs::path err = work_dir() / "stderr.txt";
    std::string cmd = std::string(SIMCOAL_BIN) + " " + args + " > " + out.string() + " 2> " +
                      err.string();
    int rc = std::system(cmd.c_str());
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    return RunResult{WEXITSTATUS(rc), slurp(out), slurp(err)};
}

std::string data(const char* name) { return std::string(SIMCOAL_DATA_DIR) + "/" + name; }

} // namespace

TEST_CASE("check decides the conformance example pair") {
    RunResult yes = run("check --semantics conformance --lhs " + data("a.aut") + " --rhs " +
                        data("aplusb.aut"));
    CHECK(yes.exit_code == 0);
    CHECK(yes.out.find("root ⊑ root: true") != std::string::npos);

    RunResult no = run("check --semantics conformance --lhs " + data("aplusb.aut") + " --rhs " +
                       data("a.aut"));
    CHECK(no.exit_code == 1);
    CHECK(no.out.find("root ⊑ root: false") != std::string::npos);
}

TEST_CASE("check accepts term files, explicit states and order expressions") {
    RunResult by_state = run("check --semantics plain --lhs " + data("a.term") + " --rhs " +
                             data("aplusb.term") + " --lhs-state 1 --rhs-state 0");
    CHECK(by_state.exit_code == 0); // deadlock below the root

    RunResult by_name = run("check --semantics plain --lhs " + data("a.term") + " --rhs " +
                            data("a.term") + " --state P");
    CHECK(by_name.exit_code == 0);

    RunResult order = run("check --order 'op(reverse)' --lhs " + data("a.aut") + " --rhs " +
                          data("aplusb.aut") + " --mode generic");
    CHECK(order.exit_code == 0);
}

TEST_CASE("strict alphabet mode refuses to unify") {
    RunResult r = run("check --semantics plain --lhs " + data("a.aut") + " --rhs " +
                      data("aplusb.aut") + " --strict-alphabet");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("alphabets differ") != std::string::npos);
}

TEST_CASE("exit codes track the verdict, not the output format") {
    std::string base = "check --semantics conformance --lhs " + data("aplusb.aut") + " --rhs " +
                       data("a.aut");
    CHECK(run(base).exit_code == 1);
    CHECK(run(base + " --format structured").exit_code == 1);
    fs::path out = work_dir() / "check.json";
    CHECK(run(base + " --format structured --out " + out.string()).exit_code == 1);
    std::ifstream in(out);
    nlohmann::json doc = nlohmann::json::parse(in);
    CHECK(doc["holds"] == false);
}

TEST_CASE("preorder prints the relation as pairs or a matrix") {
    RunResult pairs = run("preorder --semantics plain --lhs " + data("a.term") + " --rhs " +
                          data("a.term"));
    CHECK(pairs.exit_code == 0);
    CHECK(pairs.out.find("0 ⊑ 0") != std::string::npos);
    CHECK(pairs.out.find("1 ⊑ 0") != std::string::npos);

    RunResult matrix = run("preorder --semantics plain --lhs " + data("a.term") + " --rhs " +
                           data("a.term") + " --matrix");
    CHECK(matrix.out == "10\n11\n");
}

TEST_CASE("stability reproduces the reverse-inclusion counterexample") {
    RunResult r = run("stability --law right-stable --order reverse --sizes 1,2 --alphabet 1");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("verdict: fail") != std::string::npos);
    CHECK(r.out.find("u: {a0 -> {0}}") != std::string::npos);
    CHECK(r.out.find("v: {a0 -> {0,1}}") != std::string::npos);
}

TEST_CASE("stability structured reports round-trip") {
    fs::path out = work_dir() / "report.json";
    RunResult r = run("stability --law right-stable --order reverse --sizes 1,2 --alphabet 1 "
                      "--format structured --out " +
                      out.string());
    CHECK(r.exit_code == 1);
    std::ifstream in(out);
    nlohmann::json doc = nlohmann::json::parse(in);
    simcoal::CheckReport report = simcoal::CheckReport::from_json(doc);
    CHECK(report.verdict == simcoal::Verdict::Fail);
    REQUIRE(report.witness);
    CHECK(report.to_json() == doc);
}

TEST_CASE("stability runs the remaining laws from the command line") {
    CHECK(run("stability --law stable --order conformance --sizes 2,2,2,2 --alphabet 1")
              .exit_code == 0);
    CHECK(run("stability --law preorder --order conformance --sizes 3 --alphabet 1").exit_code ==
          0);
    CHECK(run("stability --law functorial --order conformance --sizes 2,2 --alphabet 1")
              .exit_code == 0);
    CHECK(run("stability --law commute --order conf_empty --order conf_nonempty --sizes 4 "
              "--alphabet 1")
              .exit_code == 0);
    CHECK(run("stability --law composition --order inclusion --order inclusion --sizes 2,2 "
              "--alphabet 1")
              .exit_code == 0);
    CHECK(run("stability --law factored-lift --order conformance --sizes 2,2 --alphabet 1")
              .exit_code == 0);
    CHECK(run("stability --law op-duality --order inclusion --sizes 2,2,2,2 --alphabet 1")
              .exit_code == 0);
    CHECK(run("stability --law interchange --order reverse --sizes 1,2 --alphabet 1").exit_code ==
          1);
    CHECK(run("stability --law cc-stable --order inclusion --sizes 2,2 --alphabet 1").exit_code ==
          2);
}

TEST_CASE("stability accepts cc partition files in order expressions") {
    RunResult r = run("stability --law stable --order 'cc(" + data("part_ab.json") +
                      ")' --sizes 2,2,2,2 --alphabet 2");
    CHECK(r.exit_code == 0);
}

TEST_CASE("oracle agrees on the canonical example pairs") {
    RunResult conf = run("oracle --semantics conformance --lhs " + data("apaq.term") + " --rhs " +
                         data("ap.term"));
    CHECK(conf.exit_code == 0);
    CHECK(conf.out.find("AGREE") != std::string::npos);

    RunResult cc = run("oracle --semantics cc --partition " + data("part_ab.json") + " --lhs " +
                       data("a.term") + " --rhs " + data("aplusb.term"));
    CHECK(cc.exit_code == 0);
}

TEST_CASE("convert round-trips between the formats") {
    fs::path json_out = work_dir() / "a.json";
    fs::path aut_out = work_dir() / "back.aut";
    CHECK(run("convert " + data("a.term") + " --out " + json_out.string()).exit_code == 0);
    CHECK(run("convert " + json_out.string() + " --out " + aut_out.string()).exit_code == 0);

    simcoal::Lts original = simcoal::load_lts(data("a.term"));
    simcoal::Lts back = simcoal::load_lts(aut_out.string());
    CHECK(back.state_count() == original.state_count());
    CHECK(back.transitions() == original.transitions());

    CHECK(run("convert " + data("a.aut") + " --out /tmp/nope.term").exit_code == 2);
}

TEST_CASE("a partition naming foreign actions is rejected") {
    fs::path part = work_dir() / "foreign.json";
    {
        std::ofstream out(part);
        out << R"({"r": ["x"], "l": ["y"], "bi": []})";
    }
    RunResult r = run("check --order 'cc(" + part.string() + ")' --lhs " + data("a.aut") +
                      " --rhs " + data("aplusb.aut"));
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("differ from the system alphabet") != std::string::npos);
}

TEST_CASE("usage and input errors exit with 2") {
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("check --semantics plain --lhs /nonexistent.aut --rhs " + data("a.aut")).exit_code ==
          2);
    CHECK(run("check --semantics cc --lhs " + data("a.aut") + " --rhs " + data("a.aut"))
              .exit_code == 2); // cc without a partition
    CHECK(run("stability --law right-stable --order 'inclusio' --sizes 1,2 --alphabet 1")
              .exit_code == 2);
    CHECK(run("check --lhs " + data("a.aut") + " --rhs " + data("a.aut")).exit_code == 2);
}
