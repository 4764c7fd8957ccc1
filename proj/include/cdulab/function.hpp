#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cdulab/field.hpp"

namespace cdulab {

struct FunctionSpec;
using SpecPtr = std::shared_ptr<const FunctionSpec>;

namespace spec {

/// x^d. The exponent is kept unreduced for reporting.
struct Monomial {
    std::int64_t d = 1;
};
/// First-kind Dickson polynomial D_d(x, a).
struct DicksonFirst {
    std::uint64_t d = 0;
    Elt a;
};
/// sum_i coeffs[i] x^{p^i}
struct Linearized {
    std::vector<Elt> coeffs;
};
/// base(x) + gamma * Tr(inner(x))
struct TracePerturbed {
    SpecPtr base;
    Elt gamma;
    SpecPtr inner;
};
/// Acts on coefficient vectors: x -> M x + constant, M an n x n matrix over F_p.
struct Affine {
    std::vector<std::vector<std::uint32_t>> matrix;
    Elt constant;
};
struct Sum {
    SpecPtr left;
    SpecPtr right;
};
/// Explicit value list indexed by element index.
struct Table {
    std::vector<Elt> values;
};

}  // namespace spec

struct FunctionSpec {
    std::variant<spec::Monomial, spec::DicksonFirst, spec::Linearized, spec::TracePerturbed, spec::Affine, spec::Sum,
                 spec::Table>
        kind;

    static SpecPtr monomial(std::int64_t d);
    static SpecPtr dickson(std::uint64_t d, Elt a);
    static SpecPtr linearized(std::vector<Elt> coeffs);
    static SpecPtr trace_perturbed(SpecPtr base, Elt gamma, SpecPtr inner);
    static SpecPtr affine(std::vector<std::vector<std::uint32_t>> matrix, Elt constant);
    static SpecPtr sum(SpecPtr left, SpecPtr right);
    static SpecPtr table(std::vector<Elt> values);

    std::string describe() const;
};

class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense value table of a function GF(p^n) -> GF(p^n).
class FuncTable {
public:
    FuncTable(FieldPtr field, std::vector<Elt> values, SpecPtr spec = nullptr);

    const Field& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }
    std::span<const Elt> values() const noexcept { return values_; }
    Elt operator()(Elt x) const noexcept { return values_[x.index]; }
    /// Originating spec; a Table spec over the values when none was given.
    SpecPtr spec() const;

    friend bool operator==(const FuncTable& a, const FuncTable& b) { return a.values_ == b.values_; }

private:
    FieldPtr field_;
    std::vector<Elt> values_;
    SpecPtr spec_;
};

FuncTable materialize(const FieldPtr& field, const SpecPtr& spec);

/// Bijectivity via an occupancy bitmap.
bool is_permutation(const FuncTable& t);
bool is_permutation(const Field& field, std::span<const Elt> values);

/// Pointwise compositional inverse; throws SpecError when t is not bijective.
FuncTable invert(const FuncTable& t);

/// All roots of sum_i coeffs[i] x^{p^i} in the field.
std::vector<Elt> linearized_kernel(const Field& field, std::span<const Elt> coeffs);

/// Value of D_d(x, a) by the field-level recurrence, O(d).
Elt dickson_eval(const Field& field, std::uint64_t d, Elt a, Elt x);

// Table combinators used by the perturbation constructions.
FuncTable table_sum(const FuncTable& f, const FuncTable& g);
FuncTable table_compose(const FuncTable& outer, const FuncTable& inner);
/// x -> gamma * Tr(f(x))
FuncTable table_trace_scaled(const FuncTable& f, Elt gamma);
/// Lift an F_p-valued table (entries in [0, p)) into the field.
FuncTable lift_pary(const FieldPtr& field, std::span<const std::uint32_t> values);

/// CSV with one "index,value" row per element; value is the element index.
std::string table_to_csv(const FuncTable& t);
FuncTable table_from_csv(const FieldPtr& field, const std::string& csv);

}  // namespace cdulab
