#include "tcert/cli.hpp"
#include "tcert/jsonio.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace tcert;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

ordered_json run_json(const std::vector<std::string>& args, int expect_code = 0) {
    auto res = run(args);
    REQUIRE(res.code == expect_code);
    return ordered_json::parse(res.out);
}

struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& content) : path(name) {
        std::ofstream(path) << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("help and usage errors") {
    auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("construct") != std::string::npos);

    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"construct"}).code == 2);
    CHECK(run({"construct", "f0", "--n", "2"}).code == 2);
}

TEST_CASE("construct emits the family schema") {
    ordered_json j = run_json({"construct", "f0", "--n", "2", "--m", "2", "--N", "3", "--json"});
    CHECK(j.at("family") == "F0");
    CHECK(j.at("vars").size() == 4);
    CHECK(j.at("designated") == "z");
    CHECK(j.at("multidegree") == ordered_json::array({4}));
    CHECK(j.at("claims_coprime") == true);
    CHECK(j.at("polys").size() == 1);
    CHECK(j.at("polys")[0].contains("text"));
    CHECK(j.at("polys")[0].contains("terms"));
    CHECK(j.at("recipe").at("family") == "F0");

    auto text = run({"construct", "fixed", "hpt-quartic"});
    CHECK(text.code == 0);
    CHECK(text.out.find("designated: z3") != std::string::npos);

    CHECK(run({"construct", "f0", "--n", "2", "--m", "2", "--N", "99"}).code == 2);
    CHECK(run({"construct", "fixed", "nonsense"}).code == 2);
}

TEST_CASE("construct covers every builder verb") {
    CHECK(run({"construct", "g", "--n", "2", "--m", "2"}).code == 0);
    CHECK(run({"construct", "base-n3", "--d", "4", "--m", "2"}).code == 0);
    CHECK(run({"construct", "double-cone", "--n", "3", "--m", "2"}).code == 0);
    CHECK(run({"construct", "double-cone", "--n", "3", "--m", "2", "--N", "4", "--j0", "1"})
              .code == 0);
    CHECK(run({"construct", "check-f", "--n", "2", "--m", "2", "--N", "3", "--d", "2",
               "--M", "2"})
              .code == 0);
    CHECK(run({"construct", "ci", "--n", "2", "--m", "2", "--N", "4", "--M", "2",
               "--degrees", "4,2"})
              .code == 0);
    CHECK(run({"construct", "ci-low", "--M", "2", "--degrees", "3,3"}).code == 0);
    CHECK(run({"construct", "product", "--n", "2", "--m", "2", "--Ms", "4,2", "--ds", "4,3"})
              .code == 0);
}

TEST_CASE("certify exit codes follow the verdict") {
    ordered_json yes = run_json(
        {"certify", "ci", "--dim", "3", "--degrees", "4", "--m", "2", "--json"});
    CHECK(yes.at("certified") == true);
    CHECK(yes.at("theorem") == "CI_2TORSION_CLOSED");
    CHECK(yes.at("witness_n").is_null());
    CHECK(yes.at("fano_index") == 1);
    CHECK(yes.at("upper_bound") == "24");
    CHECK(yes.at("caveats").is_array());

    auto no = run({"certify", "ci", "--dim", "5", "--degrees", "4", "--m", "2"});
    CHECK(no.code == 1);

    ordered_json grass = run_json({"certify", "grass", "--l", "2", "--n", "4", "--d", "4",
                                   "--m", "2", "--json"});
    CHECK(grass.at("certified") == true);
    CHECK(grass.at("witness_n") == 2);
    CHECK(grass.at("upper_bound").is_null());

    CHECK(run({"certify", "product", "--Ms", "4,2", "--ds", "4,3", "--m", "2"}).code == 0);
    CHECK(run({"certify", "product", "--Ms", "3,2", "--ds", "4,3", "--m", "2"}).code == 1);
    CHECK(run({"certify", "ci", "--dim", "0", "--degrees", "4", "--m", "2"}).code == 2);
}

TEST_CASE("verify groebner on fixed and file systems") {
    CHECK(run({"verify", "groebner", "--fixed", "ci-23"}).code == 0);
    CHECK(run({"verify", "groebner", "--fixed", "ci-33", "--parallel"}).code == 0);
    CHECK(run({"verify", "groebner", "--fixed", "nonsense"}).code == 2);
    CHECK(run({"verify", "groebner"}).code == 2);
    CHECK(run({"verify", "groebner", "--file", "does_not_exist.json"}).code == 2);

    TempFile good("cli_sys_good.json", R"({
        "vars": ["x", "y"],
        "polys": ["x^2 + 1", "y^2 + 1"]
    })");
    CHECK(run({"verify", "groebner", "--file", good.path}).code == 0);

    TempFile bad("cli_sys_bad.json", R"({
        "vars": ["x", "y"],
        "polys": ["y - x^2", "x*y - 1"]
    })");
    CHECK(run({"verify", "groebner", "--file", bad.path}).code == 1);

    TempFile malformed("cli_sys_malformed.json", "{nope");
    CHECK(run({"verify", "groebner", "--file", malformed.path}).code == 2);
}

TEST_CASE("family json feeds back into verification") {
    auto fam = run({"construct", "ci", "--n", "2", "--m", "2", "--N", "4", "--M", "2",
                    "--degrees", "4,2", "--json"});
    REQUIRE(fam.code == 0);
    TempFile f("cli_family_roundtrip.json", fam.out);
    CHECK(run({"verify", "groebner", "--file", f.path}).code == 0);
    CHECK(run({"verify", "closure", "--file", f.path, "--samples", "2"}).code == 0);
}

TEST_CASE("verify closure reports samples") {
    ordered_json j = run_json(
        {"verify", "closure", "--fixed", "ci-23", "--samples", "3", "--seed", "7", "--json"});
    CHECK(j.at("coprime") == true);
    CHECK(j.at("offending").is_null());
    CHECK(j.at("homogenized").size() == 2);
    CHECK(j.at("samples").size() == 3);
    for (const auto& s : j.at("samples")) CHECK(s.at("pass") == true);
}

TEST_CASE("verify witness fixed probes") {
    CHECK(run({"verify", "witness", "--fixed", "f0", "--n", "2", "--m", "2", "--N", "3"})
              .code == 0);
    CHECK(run({"verify", "witness", "--fixed", "hpt-quartic"}).code == 0);
    ordered_json j = run_json({"verify", "witness", "--fixed", "ci-23", "--json"});
    CHECK(j.at("ok") == true);
    CHECK(j.at("residual").is_string());
    CHECK(j.at("log").is_array());
    CHECK(run({"verify", "witness", "--fixed", "nonsense"}).code == 2);

    TempFile w("cli_witness.json", R"({
        "vars": ["x", "y"],
        "params": ["q"],
        "targets": ["x - 1", "y + q"],
        "bindings": [{"var": "x", "value": "1"}],
        "expect_var": "y"
    })");
    CHECK(run({"verify", "witness", "--file", w.path}).code == 0);

    TempFile wbad("cli_witness_bad.json", R"({
        "vars": ["x", "y"],
        "params": ["q"],
        "targets": ["x - 1", "y^2 + q"],
        "bindings": [{"var": "x", "value": "1"}],
        "expect_var": "y"
    })");
    CHECK(run({"verify", "witness", "--file", wbad.path}).code == 1);
}

TEST_CASE("verify iso chains") {
    ordered_json j = run_json({"verify", "iso-chain", "--fixed", "hpt", "--json"});
    CHECK(j.at("ok") == true);
    CHECK(j.at("steps").size() == 2);
    CHECK(run({"verify", "iso-chain", "--fixed", "chart"}).code == 0);
    CHECK(run({"verify", "iso-chain", "--fixed", "nonsense"}).code == 2);
}

TEST_CASE("resource limits map to exit 3") {
    CHECK(run({"verify", "groebner", "--fixed", "ci-33", "--max-terms", "1"}).code == 3);
}

TEST_CASE("tables print the pinned values") {
    auto t2 = run({"table", "ci-2torsion"});
    CHECK(t2.code == 0);
    CHECK(t2.out.find("698") != std::string::npos);

    auto tg = run({"table", "ci-general", "--json"});
    CHECK(tg.code == 0);
    ordered_json j = ordered_json::parse(tg.out);
    bool found = false;
    for (const auto& row : j.at("rows"))
        if (row.at("n") == "4" && row.at("m") == "2") {
            CHECK(row.at("bound") == "24");
            found = true;
        }
    CHECK(found);

    CHECK(run({"table", "grass"}).code == 0);
    CHECK(run({"table", "product"}).code == 0);
}

TEST_CASE("selftest passes") {
    auto res = run({"selftest"});
    CHECK(res.code == 0);
    CHECK(res.out.find("selftest: pass") != std::string::npos);
    CHECK(res.out.find("FAIL") == std::string::npos);
}

TEST_CASE("output is deterministic") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"construct", "ci", "--n", "2", "--m", "2", "--N", "4", "--M", "2",
              "--degrees", "4,2", "--json"},
             {"verify", "closure", "--fixed", "ci-23", "--samples", "3", "--json"},
             {"certify", "ci", "--dim", "28", "--degrees", "6", "--m", "2", "--json"},
             {"table", "grass", "--json"},
         }) {
        auto a = run(args);
        auto b = run(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}
