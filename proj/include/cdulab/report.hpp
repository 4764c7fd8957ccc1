#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "cdulab/cdiff.hpp"
#include "cdulab/field.hpp"
#include "cdulab/function.hpp"
#include "cdulab/perturb.hpp"
#include "cdulab/search.hpp"
#include "cdulab/verify.hpp"

namespace cdulab::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

class ReportError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Elements are written as coefficient arrays [c_0, ..., c_{n-1}].
Json elt_json(const Field& F, Elt x);
/// Accepts a coefficient array or an integer (embedded through F_p).
Elt elt_from_json(const Field& F, const Json& j);

Json field_json(const Field& F);

/// FunctionSpec with a "kind" discriminator. Table values are element indices.
Json spec_to_json(const FunctionSpec& spec, const Field& F);
SpecPtr spec_from_json(const Json& j, const Field& F);

Json to_json(const CDiffResult& r, const Field& F, bool with_per_a);
Json to_json(const Spectrum& s);
/// Deterministic part only; timing and worker count go to search_metadata.
Json to_json(const SearchReport& r);
Json search_metadata(const SearchReport& r);
Json to_json(const PerturbVerdict& v);
Json to_json(const ScanFinding& f, const Field& F);
/// Everything except the timing, which belongs in metadata.
Json to_json(const CheckSummary& s);

/// {"schema", "schema_version", "tool_version", "result", "metadata"}. Reruns with the same
/// inputs agree on everything outside "metadata".
Json envelope(const std::string& schema, Json result, Json metadata = Json::object());
/// The envelope without its "metadata" key, for determinism comparisons.
Json deterministic_part(const Json& envelope);

/// One exponent per row under a "d" header.
std::string exponents_csv(const std::vector<std::uint64_t>& ds);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace cdulab::report
