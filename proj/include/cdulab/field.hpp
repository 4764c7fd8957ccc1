#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdulab/poly.hpp"

namespace cdulab {

/// Handle to an element of GF(p^n).
///
/// The index packs the coefficient vector (c_0, ..., c_{n-1}) in the
/// polynomial basis as c_0 + c_1 p + ... + c_{n-1} p^{n-1}, so 0 is the zero
/// element, 1 is the unit and the prime subfield occupies indices [0, p).
struct Elt {
    std::uint32_t index = 0;

    constexpr Elt() = default;
    constexpr explicit Elt(std::uint32_t i) : index(i) {}
    friend constexpr auto operator<=>(Elt, Elt) = default;
};

class FieldError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};
class ReducibleModulus : public FieldError {
public:
    using FieldError::FieldError;
};
class NonPrimitiveModulus : public FieldError {
public:
    using FieldError::FieldError;
};
class FieldTooLarge : public FieldError {
public:
    using FieldError::FieldError;
};

inline constexpr std::uint64_t kDefaultTableLimit = std::uint64_t{1} << 21;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// GF(p^n) in table mode: exp/log/Zech tables over a primitive modulus whose
/// root alpha (the class of x) generates the multiplicative group.
///
/// Immutable after construction, so a FieldPtr can be shared freely between
/// threads.
class Field {
public:
    /// Builds the field. Without a modulus the default is x^2+x+1, x^3+x+1,
    /// x^4+x+1 for (2,2), (2,3), (2,4) and otherwise the lexicographically
    /// smallest (low degree first) monic primitive polynomial of degree n.
    static FieldPtr build(std::uint32_t p, std::uint32_t n, std::optional<PolyFp> modulus = std::nullopt,
                          std::uint64_t table_limit = kDefaultTableLimit);

    static PolyFp default_modulus(std::uint32_t p, std::uint32_t n);
    /// Primitive = irreducible and x has multiplicative order p^n - 1.
    static bool is_primitive(const PolyFp& f);

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t n() const noexcept { return n_; }
    std::uint32_t q() const noexcept { return q_; }
    /// q - 1, the order of the multiplicative group.
    std::uint32_t group_order() const noexcept { return q_ - 1; }
    const PolyFp& modulus() const noexcept { return modulus_; }

    Elt zero() const noexcept { return Elt{0}; }
    Elt one() const noexcept { return Elt{1}; }
    Elt generator() const noexcept { return exp_[1 % group_order()]; }
    Elt minus_one() const noexcept { return neg_[1]; }

    /// Canonical embedding of an integer into the prime subfield.
    Elt from_int(std::int64_t v) const noexcept;
    Elt from_coeffs(std::span<const std::uint32_t> coeffs) const;
    std::vector<std::uint32_t> coeffs(Elt x) const;
    bool in_prime_field(Elt x) const noexcept { return x.index < p_; }
    bool contains(Elt x) const noexcept { return x.index < q_; }

    Elt add(Elt x, Elt y) const noexcept {
        if (p_ == 2) return Elt{x.index ^ y.index};
        if (x.index == 0) return y;
        if (y.index == 0) return x;
        const auto lx = log_[x.index];
        auto k = log_[y.index] + group_order() - lx;
        if (k >= group_order()) k -= group_order();
        const auto z = zech_[k];
        if (z == kNoLog) return Elt{0};
        return exp_[lx + z];
    }
    Elt neg(Elt x) const noexcept { return neg_[x.index]; }
    Elt sub(Elt x, Elt y) const noexcept { return add(x, neg_[y.index]); }
    Elt mul(Elt x, Elt y) const noexcept {
        if (x.index == 0 || y.index == 0) return Elt{0};
        return exp_[log_[x.index] + log_[y.index]];
    }
    /// Throws std::domain_error for x = 0.
    Elt inv(Elt x) const;
    Elt div(Elt x, Elt y) const;
    /// x^d through log-table reduction; 0^0 = 1, 0^d = 0 for d > 0, and a
    /// negative d on 0 throws std::domain_error.
    Elt pow(Elt x, std::int64_t d) const;

    /// x^{p^j}, j taken mod n.
    Elt frobenius(Elt x, std::int64_t j) const;
    /// Absolute trace as an integer in [0, p).
    std::uint32_t trace(Elt x) const noexcept { return trace_[x.index]; }

    /// Discrete log base alpha; x must be nonzero.
    std::uint32_t log(Elt x) const;
    /// alpha^k for any k (reduced mod q - 1).
    Elt exp(std::uint64_t k) const noexcept { return exp_[k % group_order()]; }

    /// 0, alpha^0, alpha^1, ..., alpha^{q-2}.
    std::vector<Elt> enumerate() const;

    std::string elt_to_string(Elt x) const;

    // Raw table access for tight loops. log_table()[0] is a sentinel.
    std::span<const std::uint32_t> log_table() const noexcept { return log_; }
    /// Length 2(q-1) so exp_table()[i + j] needs no reduction for i, j < q - 1.
    std::span<const Elt> exp_table() const noexcept { return exp_; }

    static constexpr std::uint32_t kNoLog = 0xFFFFFFFFU;

private:
    Field(std::uint32_t p, std::uint32_t n, PolyFp modulus);
    void build_tables();

    std::uint32_t p_;
    std::uint32_t n_;
    std::uint32_t q_;
    PolyFp modulus_;
    std::vector<Elt> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> zech_;
    std::vector<Elt> neg_;
    std::vector<std::uint32_t> trace_;
};

}  // namespace cdulab
