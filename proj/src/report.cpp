#include "cdulab/report.hpp"

#include <ctime>
#include <fstream>
#include <sstream>

namespace cdulab::report {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Json params_json(const std::map<std::string, std::string>& params) {
    Json out = Json::object();
    for (const auto& [k, v] : params) {
        // Parameters are stored in external text form; emit JSON where they parse.
        try {
            out[k] = Json::parse(v);
        } catch (const Json::exception&) {
            out[k] = v;
        }
    }
    return out;
}

}  // namespace

Json elt_json(const Field& F, Elt x) { return F.coeffs(x); }

Elt elt_from_json(const Field& F, const Json& j) {
    if (j.is_number_integer()) return F.from_int(j.get<std::int64_t>());
    if (j.is_array()) {
        std::vector<std::uint32_t> coeffs;
        for (const auto& c : j) {
            if (!c.is_number_integer()) throw ReportError("element coefficients must be integers");
            const auto v = c.get<std::int64_t>();
            if (v < 0 || v >= static_cast<std::int64_t>(F.p())) throw ReportError("element coefficient out of range");
            coeffs.push_back(static_cast<std::uint32_t>(v));
        }
        if (coeffs.size() > F.n()) throw ReportError("element has more than n coefficients");
        return F.from_coeffs(coeffs);
    }
    throw ReportError("an element is an integer or a coefficient array");
}

Json field_json(const Field& F) {
    return {{"p", F.p()}, {"n", F.n()}, {"q", F.q()}, {"modulus", F.modulus().coeffs()}};
}

Json spec_to_json(const FunctionSpec& spec, const Field& F) {
    return std::visit(
        overloaded{
            [](const spec::Monomial& m) { return Json{{"kind", "monomial"}, {"d", m.d}}; },
            [&](const spec::DicksonFirst& d) { return Json{{"kind", "dickson"}, {"d", d.d}, {"a", elt_json(F, d.a)}}; },
            [&](const spec::Linearized& l) {
                Json coeffs = Json::array();
                for (auto c : l.coeffs) coeffs.push_back(elt_json(F, c));
                return Json{{"kind", "linearized"}, {"coeffs", coeffs}};
            },
            [&](const spec::TracePerturbed& t) {
                return Json{{"kind", "trace_perturbed"},
                            {"base", spec_to_json(*t.base, F)},
                            {"gamma", elt_json(F, t.gamma)},
                            {"inner", spec_to_json(*t.inner, F)}};
            },
            [&](const spec::Affine& a) {
                return Json{{"kind", "affine"}, {"matrix", a.matrix}, {"constant", elt_json(F, a.constant)}};
            },
            [&](const spec::Sum& s) {
                return Json{{"kind", "sum"}, {"left", spec_to_json(*s.left, F)}, {"right", spec_to_json(*s.right, F)}};
            },
            [](const spec::Table& t) {
                Json values = Json::array();
                for (auto v : t.values) values.push_back(v.index);
                return Json{{"kind", "table"}, {"values", values}};
            },
        },
        spec.kind);
}

SpecPtr spec_from_json(const Json& j, const Field& F) {
    try {
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "monomial") return FunctionSpec::monomial(j.at("d").get<std::int64_t>());
        if (kind == "dickson") return FunctionSpec::dickson(j.at("d").get<std::uint64_t>(), elt_from_json(F, j.at("a")));
        if (kind == "linearized") {
            std::vector<Elt> coeffs;
            for (const auto& c : j.at("coeffs")) coeffs.push_back(elt_from_json(F, c));
            return FunctionSpec::linearized(std::move(coeffs));
        }
        if (kind == "trace_perturbed") {
            return FunctionSpec::trace_perturbed(spec_from_json(j.at("base"), F), elt_from_json(F, j.at("gamma")),
                                                 spec_from_json(j.at("inner"), F));
        }
        if (kind == "affine") {
            return FunctionSpec::affine(j.at("matrix").get<std::vector<std::vector<std::uint32_t>>>(),
                                        elt_from_json(F, j.value("constant", Json(0))));
        }
        if (kind == "sum") return FunctionSpec::sum(spec_from_json(j.at("left"), F), spec_from_json(j.at("right"), F));
        if (kind == "table") {
            std::vector<Elt> values;
            for (const auto& v : j.at("values")) {
                const auto i = v.get<std::uint64_t>();
                if (i >= F.q()) throw ReportError("table value index out of range");
                values.push_back(Elt{static_cast<std::uint32_t>(i)});
            }
            return FunctionSpec::table(std::move(values));
        }
        throw ReportError("unknown function kind '" + kind + "'");
    } catch (const Json::exception& e) {
        throw ReportError(std::string("malformed function spec: ") + e.what());
    }
}

Json to_json(const CDiffResult& r, const Field& F, bool with_per_a) {
    Json j{{"c", elt_json(F, r.c)},
           {"uniformity", r.uniformity},
           {"witness_a", elt_json(F, r.witness_a)},
           {"witness_b", elt_json(F, r.witness_b)}};
    if (with_per_a) j["per_a_max"] = r.per_a_max;
    return j;
}

Json to_json(const Spectrum& s) {
    Json mult = Json::array();
    for (const auto& [u, count] : s.multiplicity) mult.push_back({{"uniformity", u}, {"c_count", count}});
    return {{"values", s.values()}, {"uniformities", s.uniformities()}, {"multiplicity", mult}};
}

Json to_json(const SearchReport& r) {
    Json j{{"p", r.p},
           {"n", r.n},
           {"modulus", r.modulus},
           {"c", r.c},
           {"strategy", to_string(r.strategy)},
           {"d_range", {r.d_range.first, r.d_range.second}},
           {"d_convention", "1 <= d <= q - 2, exponents taken mod q - 1"},
           {"paranoid", r.paranoid},
           {"orbit_sharded", r.orbit_sharded},
           {"exponents_found", r.exponents_found},
           {"orbit_representatives", r.orbit_representatives},
           {"orbit_inconsistencies", r.orbit_inconsistencies},
           {"candidates_tested", r.candidates_tested}};
    if (r.predicted) {
        j["predicted"] = *r.predicted;
        j["prediction_source"] = r.prediction_source;
        j["missing"] = r.missing;
        j["unexpected"] = r.unexpected;
        j["diff_empty"] = r.diff_empty();
    }
    return j;
}

Json search_metadata(const SearchReport& r) { return {{"wall_time_s", r.wall_time_s}, {"worker_count", r.worker_count}}; }

Json to_json(const PerturbVerdict& v) {
    Json j{{"construction", v.construction},
           {"params", params_json(v.params)},
           {"criterion_value", v.criterion_value},
           {"brute_force_value", v.brute_force_value},
           {"agree", v.agree},
           {"applicable", v.applicable}};
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

Json to_json(const ScanFinding& f, const Field& F) {
    Json j{{"construction", f.construction}, {"params", params_json(f.params)}};
    if (f.d) j["d"] = f.d;
    if (f.e) j["e"] = f.e;
    if (f.k) j["k"] = f.k;
    j["n"] = f.n;
    j["c"] = elt_json(F, f.c);
    j["gamma"] = elt_json(F, f.gamma);
    j["pcn"] = f.pcn;
    return j;
}

Json to_json(const CheckSummary& s) {
    return {{"name", s.name},        {"passed", s.passed()}, {"cases", s.cases},
            {"failures", s.failures}, {"samples", s.samples}, {"notes", s.notes}};
}

Json envelope(const std::string& schema, Json result, Json metadata) {
    if (!metadata.contains("generated_at")) {
        const std::time_t now = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        metadata["generated_at"] = buf;
    }
    return {{"schema", schema},
            {"schema_version", kSchemaVersion},
            {"tool_version", kToolVersion},
            {"result", std::move(result)},
            {"metadata", std::move(metadata)}};
}

Json deterministic_part(const Json& envelope) {
    Json out = envelope;
    out.erase("metadata");
    return out;
}

std::string exponents_csv(const std::vector<std::uint64_t>& ds) {
    std::string out = "d\n";
    for (auto d : ds) out += std::to_string(d) + "\n";
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw ReportError("cannot write " + path);
    out << text;
    if (!out) throw ReportError("write to " + path + " failed");
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ReportError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace cdulab::report
