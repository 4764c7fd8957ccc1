#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdulab/bigint.hpp"

namespace cdulab {

/// Closed-form prediction from one of the number-theoretic criteria.
struct CriterionVerdict {
    std::string predicate;
    std::uint32_t p = 0;
    std::uint64_t ell = 0;
    std::uint32_t n = 0;
    std::int64_t c = -1;
    bool predicted = false;
    /// Numbered condition that fired, 0 when none did.
    int matched_case = 0;
};

/// (p^ell + 1) / 2
std::uint64_t half_gold_exponent(std::uint32_t p, std::uint64_t ell);

/// gcd(p^ell + 1, p^n - 1) from its three-case closed form.
BigInt gcd_closed_form(std::uint32_t p, std::uint64_t ell, std::uint64_t n);
BigInt gcd_direct(std::uint32_t p, std::uint64_t ell, std::uint64_t n);

/// gcd(d, p^{2n} - 1) == 1: D_d(x, a), a != 0, permutes GF(p^n).
bool dickson_perm_criterion(std::uint32_t p, std::uint32_t n, std::uint64_t d);
/// gcd(d, p^{2n} - 1), the multiplicity bound for D_d(x, a) on GF(p^n).
BigInt dickson_m_to_1(std::uint32_t p, std::uint32_t n, std::uint64_t d);

/// Whether x^{(p^ell+1)/2} permutes GF(p^n), cases (1)-(4).
CriterionVerdict perm_criterion_l2(std::uint32_t p, std::uint64_t ell, std::uint32_t n);
/// Whether x^{(p^ell+1)/2} is perfect (-1)-nonlinear on GF(p^n), cases (1)-(3).
CriterionVerdict pcn_criterion_mainp(std::uint32_t p, std::uint64_t ell, std::uint32_t n);
/// ell, n odd and p = 1 mod 4: a permutation that is provably not P(-1)N.
bool l3_not_pcn(std::uint32_t p, std::uint64_t ell, std::uint32_t n);

/// (p+1)/2 when gcd(ell, 2n) = 1 and p = 1 mod 4 or p = 3 mod 8; no
/// prediction otherwise.
std::optional<std::uint32_t> uniformity_prediction(std::uint32_t p, std::uint64_t ell, std::uint32_t n);

class NotInvertible : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Least positive inverse of d modulo p^n - 1.
std::uint64_t exp_inverse(std::uint64_t d, std::uint32_t p, std::uint32_t n);
/// Sorted {d p^j mod (p^n - 1) : 0 <= j < n}; d must be nonzero mod p^n - 1.
std::vector<std::uint64_t> exponent_orbit(std::uint64_t d, std::uint32_t p, std::uint32_t n);
/// Sorted union of the orbits of `seeds`.
std::vector<std::uint64_t> orbit_closure(const std::vector<std::uint64_t>& seeds, std::uint32_t p, std::uint32_t n);
/// Orbit representatives (smallest member) of the invertible exponents in [1, p^n - 2].
std::vector<std::uint64_t> invertible_orbit_representatives(std::uint32_t p, std::uint32_t n);

/// Base exponents of the conjectured P(-1)N lists for n = 5 and n = 7.
std::vector<std::uint64_t> conjecture_base_set(std::uint32_t p, std::uint32_t n);
/// Orbit closure of conjecture_base_set.
std::vector<std::uint64_t> conjecture_set(std::uint32_t p, std::uint32_t n);
/// Orbit closure of {1, (p^2+1)/2, (p^4+1)/2, ..., (p^{n-1}+1)/2} and the
/// inverses of its members, for odd n.
std::vector<std::uint64_t> half_gold_pattern_set(std::uint32_t p, std::uint32_t n);

std::uint64_t ipow(std::uint64_t base, std::uint64_t e);

}  // namespace cdulab
