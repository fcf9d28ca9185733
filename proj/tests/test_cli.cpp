#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "agency/chain_io.hpp"
#include "agency/cli.hpp"

namespace fs = std::filesystem;
using agency::Json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "agency");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = agency::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

/// Scratch directory holding the fixture chain files.
struct Workdir {
    fs::path dir;
    Workdir() {
        dir = fs::temp_directory_path() / ("agency_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        for (const auto* name : {"copy", "pa", "ca2", "copy-paloop", "blind-paloop"})
            write(std::string{name} + ".json", run({"fixture", name}).out);
        write("all-stps.json", R"({"builtin": "all-stps", "max_domain_size": 4})");
        write("pa-loop.json", R"({"builtin": "pa-loop"})");
    }
    ~Workdir() { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(dir / name) << text;
        return path(name);
    }
};

const Workdir& work() {
    static const Workdir w;
    return w;
}

}  // namespace

TEST_CASE("validate") {
    const auto r = run({"validate", work().path("copy.json")});
    CHECK(r.code == agency::cli::kExitOk);
    const auto j = r.json();
    CHECK(j["schema_version"] == "1.0");
    CHECK(j["command"] == "validate");
    CHECK(j["result"]["valid"] == true);
    CHECK(j["result"]["violations"].empty());
    CHECK(j["canonical_order"]["variables"] == Json::array({"a@0", "a@1", "a@2"}));

    auto doc = Json::parse(agency::read_file(work().path("copy.json")));
    doc["mechanisms"]["a@0"][""] = Json::array({"1/2", "1/3"});
    const auto bad = run({"validate", work().write("unnormalized.json", doc.dump())});
    CHECK(bad.code == agency::cli::kExitOk);
    CHECK(bad.json()["result"]["valid"] == false);
    CHECK(bad.json()["result"]["violations"][0]["kind"] == "normalization");
}

TEST_CASE("fixtures round-trip and enumerate") {
    for (const auto* name : {"copy", "pa", "ca2", "copy-paloop", "blind-paloop"}) {
        const auto first = run({"fixture", name});
        CHECK(first.code == 0);
        const auto reparsed = agency::dump_chain(agency::parse_chain(first.out));
        CHECK(reparsed == first.out);
        CHECK(run({"fixture", name}).out == first.out);
        CHECK(run({"validate", work().path(std::string{name} + ".json")}).json()["result"]["valid"] == true);
    }
    CHECK(run({"enumerate", work().path("pa.json")}).json()["result"]["count"] == 16);
    const auto ca2 = run({"enumerate", work().path("ca2.json")}).json()["result"];
    CHECK(ca2["count"] == 8);
    CHECK(ca2["total_probability"] == "1/1");
    for (const auto& t : ca2["trajectories"]) CHECK(t["probability"] == "1/8");

    const auto unknown = run({"fixture", "nope"});
    CHECK(unknown.code == agency::cli::kExitDomain);
    CHECK(unknown.json()["error"]["kind"] == "UnknownFixture");
}

TEST_CASE("malformed input exits 1 with a position") {
    const auto file = work().write("bad.json", "{\n \"spatial\": [\"a\"],\n \"t_max\": 0,\n  x\n}");
    const auto r = run({"validate", file});
    CHECK(r.code == agency::cli::kExitMalformed);
    const auto j = r.json();
    CHECK(j["error"]["kind"] == "MalformedInput");
    CHECK(j["error"]["detail"]["where"] == "line 4, column 3");
    CHECK(r.err.find("line 4, column 3") != std::string::npos);

    CHECK(run({"validate", work().path("missing.json")}).code == agency::cli::kExitMalformed);
    CHECK(run({"validate"}).code == agency::cli::kExitMalformed);
    CHECK(run({"frobnicate"}).code == agency::cli::kExitMalformed);
    CHECK(run({"enumerate", work().path("pa.json"), "--support-cap", "0"}).code == agency::cli::kExitMalformed);

    const auto bad_set = work().write("bad-set.json", R"([{"id": "x", "assignment": {"q@0": "0"}}])");
    const auto s = run({"entityset-check", work().path("copy.json"), "--entity-set", bad_set});
    CHECK(s.code == agency::cli::kExitMalformed);
    CHECK(s.json()["error"]["detail"]["where"] == "[0].assignment.q@0");
}

TEST_CASE("interpenetrating set is a domain error with a witness") {
    const auto r = run({"perceptions", work().path("ca2.json"), "--entity-set", work().path("all-stps.json"),
                        "--entity", "e17", "--t", "0"});
    CHECK(r.code == agency::cli::kExitDomain);
    const auto j = r.json();
    CHECK(j["error"]["kind"] == "InterpenetratingEntitySet");
    CHECK(j["error"]["detail"].contains("witness"));
    CHECK_FALSE(j.contains("result"));

    const auto check =
        run({"entityset-check", work().path("ca2.json"), "--entity-set", work().path("all-stps.json")}).json();
    CHECK(check["result"]["non_interpenetrating"] == false);
    CHECK(check["result"]["entities"] == 80);
}

TEST_CASE("support cap from the environment") {
    ::setenv("AGENCY_SUPPORT_CAP", "4", 1);
    const auto capped = run({"enumerate", work().path("pa.json")});
    ::setenv("AGENCY_SUPPORT_CAP", "junk", 1);
    const auto junk = run({"enumerate", work().path("pa.json")});
    ::unsetenv("AGENCY_SUPPORT_CAP");
    CHECK(capped.code == agency::cli::kExitDomain);
    CHECK(capped.json()["error"]["kind"] == "SupportCapExceeded");
    CHECK(junk.code == agency::cli::kExitMalformed);
    CHECK(run({"enumerate", work().path("pa.json"), "--support-cap", "16"}).code == 0);
    CHECK(run({"enumerate", work().path("pa.json"), "--support-cap", "15"}).code == agency::cli::kExitDomain);
}

TEST_CASE("actions and perceptions") {
    const auto pa = work().path("pa.json");
    const auto set = work().path("pa-loop.json");
    const auto a = run({"actions", pa, "--entity-set", set, "--entity", "M:0,0,0", "--trajectory", "0", "--t", "1"});
    REQUIRE(a.code == 0);
    const auto co = a.json()["result"];
    CHECK(co["co_actions"].size() == 4);
    CHECK(co["classes"].size() == 2);

    const auto p = run({"perceptions", pa, "--entity-set", set, "--entity", "M:0,0,0", "--t", "1"});
    REQUIRE(p.code == 0);
    const auto res = p.json()["result"];
    CHECK(res["mutually_exclusive"] == true);
    CHECK(res["perceptions"] == Json::array({Json::array({"E@1=0"}), Json::array({"E@1=1"})}));
    CHECK(res["co_entities"] == Json::array({"M:0,0,0", "M:0,0,1"}));

    const auto missing = run({"perceptions", pa, "--entity-set", set, "--entity", "nobody", "--t", "1"});
    CHECK(missing.code == agency::cli::kExitDomain);
    CHECK(missing.json()["error"]["kind"] == "UnknownEntity");
}

TEST_CASE("paloop subcommands") {
    const auto pa = work().path("pa.json");
    const auto v = run({"paloop", "verify", pa});
    REQUIRE(v.code == 0);
    CHECK(v.json()["result"]["invariant_extension"] == true);

    const auto x = run({"paloop", "extract", pa, "--t", "0"}).json()["result"];
    CHECK(x.dump().find("sensor") != std::string::npos);

    const auto ext = run({"paloop", "extend", pa});
    REQUIRE(ext.code == 0);
    const auto chain = agency::parse_chain(ext.out);
    CHECK(chain.spatial() == std::vector<std::string>{"M", "A", "S", "E"});
    CHECK(run({"validate", work().write("ext.json", ext.out)}).json()["result"]["valid"] == true);

    const auto h = run({"paloop", "entropy", pa, "--t", "1"}).json()["result"];
    CHECK(h.dump().find("true") != std::string::npos);
    CHECK(run({"paloop", "equiv", pa}).code == 0);
    const auto sp = run({"paloop", "specialize", pa, "--anchor", "0,0,0", "--t", "1"});
    REQUIRE(sp.code == 0);
    CHECK(sp.json()["result"].dump().find("\"holds\":true") != std::string::npos);
    CHECK(run({"paloop", "specialize", pa, "--anchor", "M:0,0,0", "--t", "1"}).out == sp.out);

    const auto sweep = run({"paloop", "verify", "--seeds", "20"});
    CHECK(sweep.code == 0);
    CHECK(run({"paloop", "verify", pa, "--seeds", "3"}).code == agency::cli::kExitMalformed);
    CHECK(run({"paloop", "verify", work().path("ca2.json")}).json()["error"]["kind"] == "NotAPaLoop");
    CHECK(run({"paloop", "entropy", pa, "--t", "2"}).code == agency::cli::kExitDomain);
}

TEST_CASE("text format renders the same report") {
    const auto json = run({"validate", work().path("copy.json")});
    const auto text = run({"validate", work().path("copy.json"), "--format", "text"});
    CHECK(text.code == 0);
    CHECK(text.out.find("schema_version: 1.0") != std::string::npos);
    CHECK(text.out.find("valid: true") != std::string::npos);
    CHECK(text.out.find('{') == std::string::npos);
    CHECK(run({"validate", work().path("copy.json"), "--format", "yaml"}).code == agency::cli::kExitMalformed);
}

TEST_CASE("output file and determinism") {
    const auto target = work().path("report.json");
    const auto r = run({"enumerate", work().path("ca2.json"), "--output", target});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(agency::read_file(target) == run({"enumerate", work().path("ca2.json")}).out);
    CHECK_FALSE(fs::exists(target + ".tmp"));
    CHECK(run({"paloop", "equiv", "--seeds", "10"}).out == run({"paloop", "equiv", "--seeds", "10"}).out);
}
