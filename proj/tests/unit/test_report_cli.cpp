#include <filesystem>
#include <sstream>

#include "doctest.h"

#include "cdulab/cdiff.hpp"
#include "cdulab/cli.hpp"
#include "cdulab/expr.hpp"
#include "cdulab/field.hpp"
#include "cdulab/function.hpp"
#include "cdulab/report.hpp"
#include "cdulab/search.hpp"

using namespace cdulab;
using report::Json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

Run cli_run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    const auto p = std::filesystem::temp_directory_path() / ("cdulab_cli_" + name);
    std::filesystem::remove(p);
    return p.string();
}

}  // namespace

TEST_SUITE("report") {
    TEST_CASE("elements serialize as coefficient arrays") {
        const auto F = Field::build(3, 2);
        const Elt a = F->generator();
        CHECK(report::elt_json(*F, a) == Json::parse("[0,1]"));
        CHECK(report::elt_from_json(*F, Json::parse("[0,1]")) == a);
        CHECK(report::elt_from_json(*F, Json(-1)) == F->minus_one());
        CHECK(report::elt_from_json(*F, Json(4)) == F->one());
        CHECK_THROWS_AS(report::elt_from_json(*F, Json::parse("[3]")), report::ReportError);
        CHECK_THROWS_AS(report::elt_from_json(*F, Json::parse("[0,0,1]")), report::ReportError);
        CHECK_THROWS_AS(report::elt_from_json(*F, Json("a")), report::ReportError);
    }

    TEST_CASE("function specs round trip") {
        const auto field = Field::build(3, 3);
        const auto& F = *field;
        std::vector<SpecPtr> specs{
            FunctionSpec::monomial(5),
            FunctionSpec::dickson(7, F.one()),
            FunctionSpec::linearized({F.minus_one(), F.one()}),
            FunctionSpec::trace_perturbed(FunctionSpec::monomial(4), F.generator(), FunctionSpec::monomial(2)),
            FunctionSpec::affine({{0, 1, 0}, {1, 0, 0}, {0, 0, 2}}, F.one()),
            FunctionSpec::sum(FunctionSpec::monomial(2), FunctionSpec::monomial(11)),
            materialize(field, FunctionSpec::monomial(5)).spec(),
        };
        for (const auto& s : specs) {
            const auto j = report::spec_to_json(*s, F);
            const auto back = report::spec_from_json(Json::parse(j.dump()), F);
            CHECK(report::spec_to_json(*back, F) == j);
            CHECK(materialize(field, back) == materialize(field, s));
        }
        CHECK_THROWS_AS(report::spec_from_json(Json::parse(R"({"kind":"nope"})"), F), report::ReportError);
        CHECK_THROWS_AS(report::spec_from_json(Json::parse(R"({"d":3})"), F), report::ReportError);
        CHECK_THROWS_AS(report::spec_from_json(Json::parse(R"({"kind":"table","values":[99]})"), F),
                        report::ReportError);
    }

    TEST_CASE("result objects") {
        const auto field = Field::build(5, 2);
        const auto f = materialize(field, FunctionSpec::monomial(3));
        const auto r = cdu(f, field->minus_one());
        const auto j = report::to_json(r, *field, true);
        CHECK(j["uniformity"] == 3);
        CHECK(j["c"] == Json::parse("[4,0]"));
        CHECK(j["per_a_max"].size() == 25);
        CHECK_FALSE(report::to_json(r, *field, false).contains("per_a_max"));

        const auto s = report::to_json(c_spectrum(materialize(Field::build(2, 4), FunctionSpec::monomial(3))));
        CHECK(s["values"] == Json::parse("[1,2,3]"));
        CHECK(s["uniformities"] == Json::parse("[2,3]"));
    }

    TEST_CASE("envelopes and determinism") {
        const auto field = Field::build(3, 5);
        const auto a = pcn_monomial_search(field, field->minus_one());
        SearchOptions four;
        four.workers = 4;
        const auto b = pcn_monomial_search(field, field->minus_one(), four);
        const auto ea = report::envelope("cdu-lab/search-report", report::to_json(a), report::search_metadata(a));
        const auto eb = report::envelope("cdu-lab/search-report", report::to_json(b), report::search_metadata(b));
        CHECK(ea["schema_version"] == 1);
        CHECK(ea["tool_version"] == "1.0.0");
        CHECK(ea["metadata"].contains("generated_at"));
        CHECK(ea["metadata"]["worker_count"] == 1);
        CHECK(eb["metadata"]["worker_count"] == 4);
        CHECK(report::deterministic_part(ea).dump() == report::deterministic_part(eb).dump());
        CHECK_FALSE(report::deterministic_part(ea).contains("metadata"));
        CHECK(report::exponents_csv({1, 5}) == "d\n1\n5\n");
    }
}

TEST_SUITE("cli") {
    TEST_CASE("expressions") {
        const auto field = Field::build(3, 2);
        const auto& F = *field;
        CHECK(parse_element(F, "-1") == F.minus_one());
        CHECK(parse_element(F, "a") == F.generator());
        CHECK(parse_element(F, "a^3") == F.pow(F.generator(), 3));
        CHECK(parse_element(F, "[0,1]") == F.generator());
        CHECK_THROWS_AS(parse_element(F, "b"), ExprError);
        CHECK_THROWS_AS(parse_element(F, "[0,5]"), ExprError);
        const auto g = parse_function(field, "x^3 + a*Tr(x^2) - 2*x");
        for (auto x : F.enumerate()) {
            const Elt expect = F.sub(F.add(F.pow(x, 3), F.mul(F.generator(), Elt{F.trace(F.pow(x, 2))})),
                                     F.mul(Elt{2}, x));
            CHECK(g(x) == expect);
        }
        CHECK(parse_function(field, "(x+1)^2") == parse_function(field, "x^2 + 2*x + 1"));
        CHECK(parse_function(field, "-x") == parse_function(field, "2*x"));
        CHECK_THROWS_AS(parse_function(field, "x^"), ExprError);
        CHECK_THROWS_AS(parse_function(field, "y"), ExprError);
        CHECK_THROWS_AS(parse_function(field, "(x"), ExprError);
    }

    TEST_CASE("cdu report") {
        const auto r = cli_run({"cdu", "--p", "5", "--n", "2", "--function", "x^3", "--c", "-1"});
        CHECK(r.code == cli::kExitOk);
        const auto j = r.json();
        CHECK(j["schema"] == "cdu-lab/cdiff-result");
        CHECK(j["result"]["result"]["uniformity"] == 3);
    }

    TEST_CASE("audit and verify exit codes") {
        const auto audit = cli_run({"audit", "--p", "3", "--n", "5"});
        CHECK(audit.code == cli::kExitOk);
        CHECK(audit.json()["result"]["diff_empty"] == true);
        const auto ver = cli_run({"verify", "gcd-lemma"});
        CHECK(ver.code == cli::kExitOk);
        CHECK(ver.err.find("PASS gcd-lemma") != std::string::npos);
        CHECK(cli_run({"verify", "no-such-check"}).code == cli::kExitUsage);
    }

    TEST_CASE("usage and malformed input exit 2") {
        CHECK(cli_run({"bogus"}).code == cli::kExitUsage);
        CHECK(cli_run({"cdu", "--p", "4", "--n", "1", "--function", "x", "--c", "0"}).code == cli::kExitUsage);
        CHECK(cli_run({"cdu", "--p", "3", "--n", "2", "--function", "x^", "--c", "0"}).code == cli::kExitUsage);
        CHECK(cli_run({"cdu", "--p", "3", "--n", "12", "--function", "x", "--c", "0"}).code == cli::kExitUsage);
        CHECK(cli_run({"search", "--p", "3", "--n", "5", "--c", "-1", "--range", "5..1"}).code == cli::kExitUsage);
        CHECK(cli_run({"field", "--p", "3", "--n", "2", "--modulus", "1,0,1"}).code == cli::kExitUsage);
        CHECK(cli_run({"spectrum", "--p", "3", "--n", "5", "--function", "x^5", "--max-q", "100"}).code ==
              cli::kExitUsage);
        CHECK(cli_run({"cdu", "--p", "3", "--n", "2", "--function-spec", temp_path("missing.json"), "--c", "0"}).code ==
              cli::kExitUsage);
    }

    TEST_CASE("membership, dickson and field") {
        const auto m = cli_run({"membership", "--p", "3", "--n", "5", "--c", "-1", "--d", "7", "--cross-check"});
        CHECK(m.code == cli::kExitOk);
        CHECK(m.json()["result"]["pcn"] == false);
        const auto d = cli_run({"dickson", "--p", "3", "--n", "2", "--d", "5", "--a", "1"});
        CHECK(d.code == cli::kExitOk);
        const auto f = cli_run({"field", "--p", "2", "--n", "4"});
        CHECK(f.json()["result"]["modulus"] == Json::parse("[1,1,0,0,1]"));
    }

    TEST_CASE("search reports are deterministic apart from metadata") {
        const auto a = cli_run({"search", "--p", "3", "--n", "5", "--c", "-1", "--workers", "1"});
        const auto b = cli_run({"search", "--p", "3", "--n", "5", "--c", "-1", "--workers", "3"});
        REQUIRE(a.code == 0);
        REQUIRE(b.code == 0);
        CHECK(report::deterministic_part(a.json()).dump() == report::deterministic_part(b.json()).dump());
        const auto csv = cli_run({"search", "--p", "3", "--n", "5", "--c", "-1", "--format", "csv"});
        CHECK(csv.out.rfind("d\n1\n", 0) == 0);
        CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 26);
    }

    TEST_CASE("function files round trip through the CLI") {
        const auto table = temp_path("table.csv");
        const auto spec = temp_path("spec.json");
        REQUIRE(cli_run({"cdu", "--p", "3", "--n", "3", "--function", "x^5 + a*Tr(x)", "--c", "0", "--export-table",
                         table})
                    .code == 0);
        const auto via_csv = cli_run({"cdu", "--p", "3", "--n", "3", "--function-table", table, "--c", "0"});
        const auto direct = cli_run({"cdu", "--p", "3", "--n", "3", "--function", "x^5 + a*Tr(x)", "--c", "0"});
        CHECK(via_csv.json()["result"]["result"] == direct.json()["result"]["result"]);
        const auto field = Field::build(3, 3);
        report::write_text(spec, report::spec_to_json(*FunctionSpec::monomial(5), *field).dump());
        const auto via_spec = cli_run({"cdu", "--p", "3", "--n", "3", "--function-spec", spec, "--c", "-1"});
        const auto mono = cli_run({"cdu", "--p", "3", "--n", "3", "--function", "x^5", "--c", "-1"});
        CHECK(via_spec.json()["result"]["result"] == mono.json()["result"]["result"]);
        report::write_text(spec, "{broken");
        CHECK(cli_run({"cdu", "--p", "3", "--n", "3", "--function-spec", spec, "--c", "-1"}).code == cli::kExitUsage);
        std::filesystem::remove(table);
        std::filesystem::remove(spec);
    }

    TEST_CASE("perturbation subcommands") {
        const auto g1 = cli_run({"perturb", "g1-scan"});
        CHECK(g1.code == cli::kExitOk);
        CHECK(g1.json()["result"]["hits"].size() == 129);
        const auto g2 = cli_run({"perturb", "gold-g2", "--p", "3", "--n", "3", "--k", "1"});
        CHECK(g2.code == cli::kExitOk);
        const auto sw = cli_run({"perturb", "switching", "--p", "2", "--n", "3", "--d", "3", "--e", "3"});
        CHECK(sw.code == cli::kExitOk);
        CHECK(sw.json()["result"]["hits"].size() == 3);
        CHECK(cli_run({"perturb", "linearized", "--p", "3", "--n", "2", "--coeffs", "1", "--c", "1"}).code ==
              cli::kExitUsage);
    }
}
