#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "cdulab/cyclo.hpp"
#include "cdulab/function.hpp"

namespace cdulab {

struct CDiffResult {
    Elt c;
    std::uint32_t uniformity = 0;
    /// Smallest admissible a attaining the uniformity, and the smallest b for it.
    Elt witness_a;
    Elt witness_b;
    /// max_b #{x : F(x+a) - cF(x) = b} for every a; 0 at a = 0 when c = 1.
    std::vector<std::uint32_t> per_a_max;
};

/// x -> F(x + a) - c F(x)
FuncTable c_derivative(const FuncTable& f, Elt a, Elt c);

/// Solution counts N_c(a, b) for every b at one a.
std::vector<std::uint32_t> derivative_histogram(const FuncTable& f, Elt a, Elt c);

/// Exact c-differential uniformity; a = 0 is skipped only when c = 1.
CDiffResult cdu(const FuncTable& f, Elt c, unsigned workers = 1);

/// True iff every admissible c-derivative is a permutation. Stops at the
/// first repeated value.
bool is_pcn(const FuncTable& f, Elt c, unsigned workers = 1);

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kDefaultSpectrumCap = 4096;

struct Spectrum {
    /// uniformity -> number of c attaining it
    std::map<std::uint32_t, std::uint32_t> multiplicity;
    /// Distinct nonzero solution counts N_c(a, b) over every scanned c,
    /// admissible a and b.
    std::set<std::uint32_t> count_values;

    /// The spectrum as a set: count_values. This is the reading under which
    /// x^3 and x^3 + x^4 on GF(2^4) give [1,2,3] and [1,2,3,4].
    const std::set<std::uint32_t>& values() const { return count_values; }
    /// Distinct c-differential uniformities (keys of multiplicity).
    std::set<std::uint32_t> uniformities() const;
};

/// Spectrum of F as c ranges over `c_range` (all of the field when empty).
/// Throws BudgetExceeded when q exceeds `max_q`.
Spectrum c_spectrum(const FuncTable& f, const std::optional<std::vector<Elt>>& c_range = std::nullopt,
                    std::uint32_t max_q = kDefaultSpectrumCap, unsigned workers = 1);

/// W_F(a, b) = sum_x zeta^{Tr(b F(x)) - Tr(a x)} as an exact cyclotomic integer.
CycloInt walsh(const FuncTable& f, Elt a, Elt b);

}  // namespace cdulab
