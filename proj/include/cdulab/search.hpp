#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cdulab/cdiff.hpp"
#include "cdulab/field.hpp"

namespace cdulab {

enum class Strategy { FastPathMinusOne, Generic };

std::string to_string(Strategy s);

/// O(q) test that (x+1)^d + (x-1)^d permutes the field, with reusable scratch.
/// Together with gcd(d, q-1) = 1 this decides perfect (-1)-nonlinearity of x^d
/// for odd p.
class ShiftedSumChecker {
public:
    explicit ShiftedSumChecker(const Field& field);
    bool is_permutation(std::uint64_t d);

private:
    const Field& field_;
    std::vector<std::uint32_t> log_plus_;
    std::vector<std::uint32_t> log_minus_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t generation_ = 0;
};

inline constexpr std::uint32_t kDefaultGenericCap = 8192;

struct SearchOptions {
    /// Inclusive exponent range; defaults to [1, q-2].
    std::optional<std::pair<std::uint64_t, std::uint64_t>> d_range;
    /// Test every orbit member instead of one representative per orbit.
    bool paranoid = false;
    unsigned workers = 1;
    std::optional<std::string> checkpoint_path;
    std::uint32_t checkpoint_every = 64;
    /// Largest q for which the O(q^2)-per-candidate generic path is allowed.
    std::uint32_t generic_max_q = kDefaultGenericCap;
};

struct SearchReport {
    static constexpr int kSchemaVersion = 1;

    std::uint32_t p = 0;
    std::uint32_t n = 0;
    std::vector<std::uint32_t> modulus;
    std::vector<std::uint32_t> c;
    Strategy strategy = Strategy::Generic;
    std::pair<std::uint64_t, std::uint64_t> d_range;
    bool paranoid = false;
    bool orbit_sharded = false;
    std::vector<std::uint64_t> exponents_found;
    std::vector<std::uint64_t> orbit_representatives;
    std::optional<std::vector<std::uint64_t>> predicted;
    /// "conjecture" for n = 5, 7; "half_gold_pattern" for other odd n, where
    /// a diff is a finding rather than a failure.
    std::string prediction_source;
    /// predicted \ found
    std::vector<std::uint64_t> missing;
    /// found \ predicted
    std::vector<std::uint64_t> unexpected;
    /// Orbits whose members disagreed under --paranoid (must stay empty).
    std::vector<std::uint64_t> orbit_inconsistencies;
    std::uint64_t candidates_tested = 0;
    double wall_time_s = 0.0;
    unsigned worker_count = 1;

    bool diff_empty() const { return missing.empty() && unexpected.empty(); }
};

class SearchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Strategy choose_strategy(const Field& field, Elt c);

/// All d in range with x^d perfect c-nonlinear.
SearchReport pcn_monomial_search(const FieldPtr& field, Elt c, const SearchOptions& opts = {});

struct MembershipResult {
    bool pcn = false;
    Strategy strategy = Strategy::Generic;
};
MembershipResult pcn_membership(const FieldPtr& field, Elt c, std::uint64_t d,
                                std::uint32_t generic_max_q = kDefaultGenericCap);

/// Full c-differential uniformity of x^d for each d; throws BudgetExceeded
/// when q^2 |d_list| exceeds `budget`.
std::vector<CDiffResult> uniformity_scan(const FieldPtr& field, Elt c, const std::vector<std::uint64_t>& d_list,
                                         std::uint64_t budget = 20'000'000'000ULL, unsigned workers = 1);

/// c = -1 search over GF(p^n) diffed against the conjectured list for
/// n = 5, 7, and against half_gold_pattern_set for any other odd n.
SearchReport conjecture_audit(std::uint32_t p, std::uint32_t n, const SearchOptions& opts = {});

}  // namespace cdulab
