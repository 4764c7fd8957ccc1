#include "cdulab/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "cdulab/cdiff.hpp"
#include "cdulab/expr.hpp"
#include "cdulab/field.hpp"
#include "cdulab/function.hpp"
#include "cdulab/oracles.hpp"
#include "cdulab/parallel.hpp"
#include "cdulab/perturb.hpp"
#include "cdulab/poly.hpp"
#include "cdulab/report.hpp"
#include "cdulab/search.hpp"
#include "cdulab/verify.hpp"

namespace cdulab::cli {

namespace {

using report::Json;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct FieldArgs {
    std::uint32_t p = 0;
    std::uint32_t n = 1;
    std::string modulus;

    void add(CLI::App* app) {
        app->add_option("--p", p, "Characteristic (prime)")->required();
        app->add_option("--n", n, "Extension degree")->capture_default_str();
        app->add_option("--modulus", modulus, "Primitive modulus, coefficients low degree first, e.g. 1,1,0,1");
    }

    FieldPtr build() const {
        std::optional<PolyFp> mod;
        if (!modulus.empty()) {
            std::vector<std::uint32_t> coeffs;
            std::stringstream ss(modulus);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                try {
                    coeffs.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
                } catch (const std::exception&) {
                    throw UsageError("malformed --modulus '" + modulus + "'");
                }
            }
            mod = PolyFp(p, coeffs);
        }
        if (!is_prime(p)) throw UsageError("--p must be prime");
        if (n < 1) throw UsageError("--n must be at least 1");
        return Field::build(p, n, mod);
    }
};

struct FunctionArgs {
    std::string expr;
    std::string spec_path;
    std::string table_path;
    std::string export_path;

    void add(CLI::App* app, const std::string& prefix = "function") {
        auto* group = app->add_option_group(prefix);
        group->add_option("--" + prefix, expr, "Function expression, e.g. 'x^3 + x^4'");
        group->add_option("--" + prefix + "-spec", spec_path, "FunctionSpec JSON file");
        group->add_option("--" + prefix + "-table", table_path, "S-box CSV file with index,value rows");
        group->require_option(1);
        if (prefix == "function") app->add_option("--export-table", export_path, "Write the value table as CSV");
    }

    std::pair<FuncTable, Json> build(const FieldPtr& field) const {
        if (!expr.empty()) return {parse_function(field, expr), Json{{"expression", expr}}};
        if (!spec_path.empty()) {
            Json j;
            try {
                j = Json::parse(report::read_text(spec_path));
            } catch (const Json::exception& e) {
                throw UsageError("malformed spec file: " + std::string(e.what()));
            }
            const auto spec = report::spec_from_json(j, *field);
            return {materialize(field, spec), Json{{"spec", report::spec_to_json(*spec, *field)}}};
        }
        return {table_from_csv(field, report::read_text(table_path)), Json{{"table_csv", table_path}}};
    }

    void maybe_export(const FuncTable& t) const {
        if (!export_path.empty()) report::write_text(export_path, table_to_csv(t));
    }
};

struct OutputArgs {
    std::string path;
    std::string format = "json";

    void add(CLI::App* app, bool csv) {
        app->add_option("--out", path, "Write the report here instead of stdout");
        if (csv) app->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    }

    void emit(const Json& j, std::ostream& out, const std::string& csv_text = {}) const {
        const std::string text = format == "csv" ? csv_text : j.dump(2) + "\n";
        if (path.empty()) {
            out << text;
        } else {
            report::write_text(path, text);
        }
    }
};

unsigned resolve_workers(int flag) {
    if (flag < 0) throw UsageError("--workers must be positive");
    if (flag > 0) return static_cast<unsigned>(flag);
    if (const char* env = std::getenv("CDU_LAB_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        throw UsageError("CDU_LAB_WORKERS must be a positive integer");
    }
    return default_workers();
}

std::vector<Elt> parse_element_list(const Field& F, const std::string& text) {
    // Elements are separated by ';' so that coefficient vectors can use ','.
    std::vector<Elt> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ';')) out.push_back(parse_element(F, tok));
    return out;
}

std::vector<std::uint64_t> parse_uint_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoull(tok));
        } catch (const std::exception&) {
            throw UsageError("malformed integer list '" + text + "'");
        }
    }
    return out;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw UsageError("--range must look like a..b");
    try {
        return {std::stoull(text.substr(0, dots)), std::stoull(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw UsageError("malformed --range '" + text + "'");
    }
}

/// A p-ary table given either as an expression with prime-field values or as a CSV file.
std::vector<std::uint32_t> pary_table(const FieldPtr& field, const std::string& expr, const std::string& csv) {
    const Field& F = *field;
    FuncTable t = !expr.empty() ? parse_function(field, expr) : table_from_csv(field, report::read_text(csv));
    std::vector<std::uint32_t> out;
    for (auto v : t.values()) {
        if (!F.in_prime_field(v)) throw UsageError("the p-ary function takes a value outside F_p");
        out.push_back(v.index);
    }
    return out;
}

int verdicts_exit(const std::vector<PerturbVerdict>& vs) {
    for (const auto& v : vs) {
        if (v.applicable && !v.agree) return kExitFalsified;
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact c-differential uniformity laboratory over GF(p^n)", "cdu-lab"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", report::kToolVersion);
    int workers_flag = 0;
    app.add_option("--workers", workers_flag, "Worker threads (default: $CDU_LAB_WORKERS or all cores)");

    // field
    FieldArgs field_args;
    OutputArgs field_out;
    bool field_elements = false;
    auto* field_cmd = app.add_subcommand("field", "Describe a field and its modulus");
    field_args.add(field_cmd);
    field_out.add(field_cmd, false);
    field_cmd->add_flag("--elements", field_elements, "List every element with its log and trace");

    // cdu
    FieldArgs cdu_field;
    FunctionArgs cdu_fn;
    OutputArgs cdu_out;
    std::string cdu_c;
    bool cdu_per_a = false;
    std::uint32_t cdu_max_q = 1U << 16;
    auto* cdu_cmd = app.add_subcommand("cdu", "c-differential uniformity of one function");
    cdu_field.add(cdu_cmd);
    cdu_fn.add(cdu_cmd);
    cdu_out.add(cdu_cmd, false);
    cdu_cmd->add_option("--c", cdu_c, "c as an integer or a coefficient vector [c0,c1,...]")->required();
    cdu_cmd->add_flag("--per-a", cdu_per_a, "Include max_b N(a, b) for every a");
    cdu_cmd->add_option("--max-q", cdu_max_q, "Largest field accepted")->capture_default_str();

    // spectrum
    FieldArgs spec_field;
    FunctionArgs spec_fn;
    OutputArgs spec_out;
    std::string spec_cs;
    std::uint32_t spec_max_q = kDefaultSpectrumCap;
    auto* spec_cmd = app.add_subcommand("spectrum", "c-differential spectrum over all (or listed) c");
    spec_field.add(spec_cmd);
    spec_fn.add(spec_cmd);
    spec_out.add(spec_cmd, false);
    spec_cmd->add_option("--c-list", spec_cs, "Restrict c to these elements, separated by ';'");
    spec_cmd->add_option("--max-q", spec_max_q, "Largest field accepted")->capture_default_str();

    // search
    FieldArgs search_field;
    OutputArgs search_out;
    std::string search_c, search_range, search_ckpt;
    bool search_paranoid = false;
    std::uint32_t search_every = 64, search_max_q = kDefaultGenericCap;
    auto* search_cmd = app.add_subcommand("search", "Exhaustive PcN monomial search");
    search_field.add(search_cmd);
    search_out.add(search_cmd, true);
    search_cmd->add_option("--c", search_c, "c as an integer or a coefficient vector")->required();
    search_cmd->add_option("--range", search_range, "Exponent range a..b within [1, q-2]");
    search_cmd->add_flag("--paranoid", search_paranoid, "Verify every orbit member independently");
    search_cmd->add_option("--checkpoint", search_ckpt, "Resumable state file");
    search_cmd->add_option("--checkpoint-every", search_every, "Work units between checkpoint writes")
        ->capture_default_str();
    search_cmd->add_option("--max-q", search_max_q, "Largest field for the generic (c != -1) path")
        ->capture_default_str();

    // membership
    FieldArgs mem_field;
    OutputArgs mem_out;
    std::string mem_c;
    std::uint64_t mem_d = 0;
    bool mem_cross = false;
    std::uint32_t mem_max_q = kDefaultGenericCap;
    auto* mem_cmd = app.add_subcommand("membership", "Is x^d perfect c-nonlinear?");
    mem_field.add(mem_cmd);
    mem_out.add(mem_cmd, false);
    mem_cmd->add_option("--c", mem_c, "c as an integer or a coefficient vector")->required();
    mem_cmd->add_option("--d", mem_d, "Exponent")->required();
    mem_cmd->add_flag("--cross-check", mem_cross, "Also run the generic check and compare");
    mem_cmd->add_option("--max-q", mem_max_q, "Largest field for the generic path")->capture_default_str();

    // dickson
    FieldArgs dk_field;
    OutputArgs dk_out;
    std::uint64_t dk_d = 0;
    std::string dk_a = "1";
    auto* dk_cmd = app.add_subcommand("dickson", "Dickson polynomial D_d(x, a): coefficients and permutation test");
    dk_field.add(dk_cmd);
    dk_out.add(dk_cmd, false);
    dk_cmd->add_option("--d", dk_d, "Index")->required();
    dk_cmd->add_option("--a", dk_a, "Parameter a")->capture_default_str();

    // verify
    OutputArgs ver_out;
    std::vector<std::string> ver_names;
    auto* ver_cmd = app.add_subcommand("verify", "Run closed-form versus brute-force check matrices");
    ver_cmd->add_option("names", ver_names, "Check names, or 'all'")->required();
    ver_out.add(ver_cmd, false);

    // perturb
    FieldArgs pt_field;
    OutputArgs pt_out;
    std::string pt_construction, pt_c = "0", pt_gamma = "0", pt_alpha = "0", pt_beta = "0", pt_a = "1", pt_coeffs,
                                 pt_H = "x", pt_f, pt_f_csv, pt_delta, pt_map, pt_c_star, pt_d = "3", pt_e = "3";
    std::uint32_t pt_i = 0, pt_j = 1, pt_k = 1, pt_kmax = 0;
    std::string pt_function, pt_function2;
    auto* pt_cmd = app.add_subcommand("perturb", "Perturbation constructions and scans");
    pt_cmd->add_option("construction", pt_construction, "Construction name")
        ->required()
        ->check(CLI::IsMember({"linearized", "binomial", "sum-pcn", "p-to-1", "ck", "trace-linearized", "gold-g1",
                               "gold-g2", "g1-scan", "switching", "ccz"}));
    pt_cmd->add_option("--p", pt_field.p, "Characteristic");
    pt_cmd->add_option("--n", pt_field.n, "Extension degree");
    pt_cmd->add_option("--modulus", pt_field.modulus, "Primitive modulus, low degree first");
    pt_out.add(pt_cmd, false);
    pt_cmd->add_option("--c", pt_c, "c");
    pt_cmd->add_option("--gamma", pt_gamma, "gamma");
    pt_cmd->add_option("--alpha", pt_alpha, "alpha (trace-linearized)");
    pt_cmd->add_option("--beta", pt_beta, "beta (ck)");
    pt_cmd->add_option("--a", pt_a, "a (binomial)");
    pt_cmd->add_option("--coeffs", pt_coeffs, "Linearized coefficients a_0;a_1;...");
    pt_cmd->add_option("--H", pt_H, "H for ck, as an expression");
    pt_cmd->add_option("--f", pt_f, "p-ary f as an expression with values in F_p");
    pt_cmd->add_option("--f-csv", pt_f_csv, "p-ary f as index,value CSV");
    pt_cmd->add_option("--delta", pt_delta, "Trace-1 lift element (sum-pcn)");
    pt_cmd->add_option("--i", pt_i, "i (binomial)");
    pt_cmd->add_option("--j", pt_j, "j (binomial)");
    pt_cmd->add_option("--k", pt_k, "k (gold-g1), or the first k (gold-g2)");
    pt_cmd->add_option("--k-max", pt_kmax, "Last k (gold-g2); defaults to n - 1");
    pt_cmd->add_option("--d", pt_d, "Base exponents for switching, comma separated");
    pt_cmd->add_option("--e", pt_e, "Inner exponents for switching, comma separated");
    pt_cmd->add_option("--function", pt_function, "F (sum-pcn, ccz)");
    pt_cmd->add_option("--function2", pt_function2, "F' (ccz)");
    pt_cmd->add_option("--map", pt_map, "JSON file {matrix, constant} for the 2n x 2n affine map (ccz)");
    pt_cmd->add_option("--c-star", pt_c_star, "c* (ccz); defaults to c");

    // audit
    FieldArgs au_field;
    OutputArgs au_out;
    bool au_paranoid = false;
    auto* au_cmd = app.add_subcommand("audit", "c = -1 search diffed against the predicted exponent list");
    au_cmd->add_option("--p", au_field.p, "Characteristic")->required();
    au_cmd->add_option("--n", au_field.n, "Extension degree")->required();
    au_cmd->add_flag("--paranoid", au_paranoid, "Verify every orbit member independently");
    au_out.add(au_cmd, true);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << report::kToolVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "cdu-lab: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        const unsigned workers = resolve_workers(workers_flag);

        if (*field_cmd) {
            const auto field = field_args.build();
            const Field& F = *field;
            Json res = report::field_json(F);
            res["generator"] = report::elt_json(F, F.generator());
            res["modulus_text"] = F.modulus().to_string();
            if (field_elements) {
                Json els = Json::array();
                for (std::uint32_t i = 0; i < F.q(); ++i) {
                    Json e{{"index", i}, {"coeffs", F.coeffs(Elt{i})}, {"trace", F.trace(Elt{i})}};
                    e["log"] = i == 0 ? Json(nullptr) : Json(F.log(Elt{i}));
                    els.push_back(e);
                }
                res["elements"] = els;
            }
            field_out.emit(report::envelope("cdu-lab/field", res), out);
            return kExitOk;
        }

        if (*cdu_cmd) {
            const auto field = cdu_field.build();
            if (field->q() > cdu_max_q) {
                throw BudgetExceeded("GF(" + std::to_string(field->q()) + ") exceeds --max-q " + std::to_string(cdu_max_q));
            }
            const auto [table, fn] = cdu_fn.build(field);
            cdu_fn.maybe_export(table);
            const auto r = cdu(table, parse_element(*field, cdu_c), workers);
            Json res{{"field", report::field_json(*field)}, {"function", fn}};
            res["result"] = report::to_json(r, *field, cdu_per_a);
            cdu_out.emit(report::envelope("cdu-lab/cdiff-result", res, {{"workers", workers}}), out);
            return kExitOk;
        }

        if (*spec_cmd) {
            const auto field = spec_field.build();
            const auto [table, fn] = spec_fn.build(field);
            spec_fn.maybe_export(table);
            std::optional<std::vector<Elt>> cs;
            if (!spec_cs.empty()) cs = parse_element_list(*field, spec_cs);
            const auto s = c_spectrum(table, cs, spec_max_q, workers);
            Json res{{"field", report::field_json(*field)}, {"function", fn}, {"spectrum", report::to_json(s)}};
            spec_out.emit(report::envelope("cdu-lab/spectrum", res, {{"workers", workers}}), out);
            return kExitOk;
        }

        if (*search_cmd) {
            const auto field = search_field.build();
            SearchOptions o;
            if (!search_range.empty()) o.d_range = parse_range(search_range);
            o.paranoid = search_paranoid;
            o.workers = workers;
            if (!search_ckpt.empty()) o.checkpoint_path = search_ckpt;
            o.checkpoint_every = search_every;
            o.generic_max_q = search_max_q;
            const auto r = pcn_monomial_search(field, parse_element(*field, search_c), o);
            search_out.emit(report::envelope("cdu-lab/search-report", report::to_json(r), report::search_metadata(r)),
                            out, report::exponents_csv(r.exponents_found));
            return r.orbit_inconsistencies.empty() ? kExitOk : kExitFalsified;
        }

        if (*mem_cmd) {
            const auto field = mem_field.build();
            const Elt c = parse_element(*field, mem_c);
            const auto r = pcn_membership(field, c, mem_d, mem_max_q);
            Json res{{"field", report::field_json(*field)}, {"c", report::elt_json(*field, c)}, {"d", mem_d},
                     {"pcn", r.pcn},
                     {"strategy", to_string(r.strategy)}};
            int code = kExitOk;
            if (mem_cross) {
                if (field->q() > mem_max_q) throw BudgetExceeded("cross-check exceeds --max-q");
                const bool generic =
                    is_pcn(materialize(field, FunctionSpec::monomial(static_cast<std::int64_t>(mem_d))), c, workers);
                res["generic_pcn"] = generic;
                if (generic != r.pcn) code = kExitFalsified;
            }
            mem_out.emit(report::envelope("cdu-lab/membership", res), out);
            return code;
        }

        if (*dk_cmd) {
            const auto field = dk_field.build();
            const Field& F = *field;
            const Elt a = parse_element(F, dk_a);
            const auto t = materialize(field, FunctionSpec::dickson(dk_d, a));
            Json res{{"field", report::field_json(F)}, {"d", dk_d}, {"a", report::elt_json(F, a)}};
            if (F.in_prime_field(a)) res["coefficients"] = dickson_coeffs(F.p(), dk_d, a.index).coeffs();
            std::vector<std::uint32_t> fiber(F.q(), 0);
            for (auto v : t.values()) ++fiber[v.index];
            const auto max_fiber = *std::max_element(fiber.begin(), fiber.end());
            const bool perm = is_permutation(t);
            res["is_permutation"] = perm;
            res["max_fiber"] = max_fiber;
            int code = kExitOk;
            if (a != F.zero()) {
                const bool crit = dickson_perm_criterion(F.p(), F.n(), dk_d);
                const auto bound = dickson_m_to_1(F.p(), F.n(), dk_d);
                res["criterion_permutation"] = crit;
                res["fiber_bound"] = bound.str();
                if (crit != perm || BigInt(max_fiber) > bound) code = kExitFalsified;
            }
            bool functional = true;
            for (std::uint32_t u = 1; u < F.q() && functional; ++u) {
                const Elt U{u};
                const Elt au = F.div(a, U);
                const auto d = static_cast<std::int64_t>(dk_d);
                functional = t(F.add(U, au)) == F.add(F.pow(U, d), F.pow(au, d));
            }
            res["functional_equation"] = functional;
            if (!functional) code = kExitFalsified;
            dk_out.emit(report::envelope("cdu-lab/dickson", res), out);
            return code;
        }

        if (*ver_cmd) {
            std::vector<std::string> names = ver_names;
            if (names.size() == 1 && names[0] == "all") names = verify_names();
            Json checks = Json::array();
            Json timing = Json::object();
            bool all = true;
            for (const auto& name : names) {
                const auto s = run_verify(name, workers);
                checks.push_back(report::to_json(s));
                timing[name] = s.seconds;
                all = all && s.passed();
                err << (s.passed() ? "PASS " : "FAIL ") << name << " (" << s.cases << " cases, " << s.failures
                    << " failures)\n";
            }
            Json res{{"all_passed", all}, {"checks", checks}};
            ver_out.emit(report::envelope("cdu-lab/verify-summary", res, {{"seconds", timing}}), out);
            return all ? kExitOk : kExitFalsified;
        }

        if (*pt_cmd) {
            Json res{{"construction", pt_construction}};
            auto need_field = [&]() {
                if (pt_field.p == 0) throw UsageError("perturb " + pt_construction + " needs --p");
                const auto field = pt_field.build();
                res["field"] = report::field_json(*field);
                return field;
            };
            std::vector<PerturbVerdict> verdicts;
            int code = kExitOk;
            auto finish = [&](const FieldPtr& field, const std::vector<ScanFinding>& findings) {
                if (!verdicts.empty()) {
                    Json vs = Json::array();
                    for (const auto& v : verdicts) vs.push_back(report::to_json(v));
                    res["verdicts"] = vs;
                    code = std::max(code, verdicts_exit(verdicts));
                }
                if (!findings.empty() || verdicts.empty()) {
                    Json fs = Json::array(), hs = Json::array();
                    for (const auto& f : findings) {
                        // g1-scan spans three fields; each finding carries its own n.
                        const auto F = field ? field : Field::build(2, f.n);
                        fs.push_back(report::to_json(f, *F));
                        if (f.pcn) hs.push_back(fs.back());
                    }
                    res["findings"] = fs;
                    res["hits"] = hs;
                }
                pt_out.emit(report::envelope("cdu-lab/perturb-findings", res), out);
                return code;
            };

            if (pt_construction == "g1-scan") return finish(nullptr, g1_small_field_scan());

            const auto field = need_field();
            const Field& F = *field;
            const Elt c = parse_element(F, pt_c);
            const Elt gamma = parse_element(F, pt_gamma);

            if (pt_construction == "linearized") {
                verdicts.push_back(linearized_pcn(field, parse_element_list(F, pt_coeffs), c));
            } else if (pt_construction == "binomial") {
                verdicts.push_back(binomial_pcn(field, pt_i, pt_j, parse_element(F, pt_a), c));
            } else if (pt_construction == "sum-pcn") {
                if (pt_function.empty()) throw UsageError("sum-pcn needs --function");
                const auto base = parse_function(field, pt_function);
                if (pt_f.empty() == pt_f_csv.empty()) throw UsageError("give exactly one of --f, --f-csv");
                const auto f = pary_table(field, pt_f, pt_f_csv);
                std::optional<Elt> delta;
                if (!pt_delta.empty()) delta = parse_element(F, pt_delta);
                verdicts.push_back(sum_pcn_criterion(base, f, gamma, c, delta));
            } else if (pt_construction == "p-to-1") {
                if (pt_f.empty() == pt_f_csv.empty()) throw UsageError("give exactly one of --f, --f-csv");
                const auto f = pary_table(field, pt_f, pt_f_csv);
                verdicts.push_back(p_to_1_perturb_check(field, parse_element_list(F, pt_coeffs), f, gamma, c));
            } else if (pt_construction == "ck") {
                const auto H = parse_function(field, pt_H).spec();
                verdicts.push_back(ck_permutation_check(field, parse_element(F, pt_beta), gamma, H));
            } else if (pt_construction == "trace-linearized") {
                verdicts.push_back(trace_linearized_pcn(field, gamma, parse_element(F, pt_alpha)));
            } else if (pt_construction == "gold-g1") {
                const auto d = static_cast<std::int64_t>(ipow(F.p(), pt_k) + 1);
                Json excluded = Json::array();
                for (auto g : gold_g1_gamma_exclusion(field, pt_k, c)) {
                    const auto G1 = materialize(
                        field, FunctionSpec::trace_perturbed(FunctionSpec::monomial(d), g, FunctionSpec::monomial(1)));
                    const bool pcn = is_pcn(G1, c, workers);
                    excluded.push_back({{"gamma", report::elt_json(F, g)}, {"pcn", pcn}});
                    if (pcn) code = kExitFalsified;
                }
                res["excluded_gamma"] = excluded;
                return finish(field, {});
            } else if (pt_construction == "gold-g2") {
                const std::uint32_t kmax = pt_kmax ? pt_kmax : F.n() - 1;
                verdicts = gold_g2_never_pcn_scan(field, pt_k, kmax);
            } else if (pt_construction == "switching") {
                std::vector<Elt> cs, gammas;
                for (std::uint32_t x = 0; x < F.q(); ++x) cs.push_back(Elt{x});
                for (std::uint32_t x = 1; x < F.q(); ++x) gammas.push_back(Elt{x});
                return finish(field, switching_scan(field, parse_uint_list(pt_d), parse_uint_list(pt_e), cs, gammas));
            } else if (pt_construction == "ccz") {
                if (pt_function.empty() || pt_function2.empty() || pt_map.empty()) {
                    throw UsageError("ccz needs --function, --function2 and --map");
                }
                Json m;
                try {
                    m = Json::parse(report::read_text(pt_map));
                } catch (const Json::exception& e) {
                    throw UsageError("malformed --map: " + std::string(e.what()));
                }
                BlockAffine A;
                try {
                    A.matrix = m.at("matrix").get<std::vector<std::vector<std::uint32_t>>>();
                    A.constant = m.value("constant", std::vector<std::uint32_t>(2 * F.n(), 0));
                } catch (const Json::exception& e) {
                    throw UsageError("malformed --map: " + std::string(e.what()));
                }
                const Elt c_star = pt_c_star.empty() ? c : parse_element(F, pt_c_star);
                verdicts.push_back(ccz_transfer_check(parse_function(field, pt_function),
                                                      parse_function(field, pt_function2), A, c, c_star));
            }
            return finish(field, {});
        }

        if (*au_cmd) {
            if (!is_prime(au_field.p)) throw UsageError("--p must be prime");
            SearchOptions o;
            o.workers = workers;
            o.paranoid = au_paranoid;
            const auto r = conjecture_audit(au_field.p, au_field.n, o);
            au_out.emit(report::envelope("cdu-lab/search-report", report::to_json(r), report::search_metadata(r)), out,
                        report::exponents_csv(r.exponents_found));
            if (!r.orbit_inconsistencies.empty()) return kExitFalsified;
            if (r.prediction_source == "conjecture" && !r.diff_empty()) return kExitFalsified;
            if (!r.diff_empty()) err << "cdu-lab: the found set differs from the pattern set (a finding, not a failure)\n";
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        // FieldError, SpecError, ExprError, PerturbError, ReportError and UsageError.
        err << "cdu-lab: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "cdu-lab: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SearchError& e) {
        err << "cdu-lab: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetExceeded& e) {
        err << "cdu-lab: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "cdu-lab: internal error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace cdulab::cli
