#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cdulab {

/// Dense polynomial over the prime field F_p, coefficient of x^i at index i.
///
/// Always kept canonical: trailing zeros are stripped and the zero polynomial
/// has an empty coefficient vector.
class PolyFp {
public:
    PolyFp() = default;
    PolyFp(std::uint32_t p, std::vector<std::uint32_t> coeffs);

    static PolyFp zero(std::uint32_t p) { return PolyFp(p, {}); }
    static PolyFp constant(std::uint32_t p, std::int64_t c);
    /// c * x^k
    static PolyFp monomial(std::uint32_t p, std::size_t k, std::int64_t c = 1);

    std::uint32_t characteristic() const noexcept { return p_; }
    const std::vector<std::uint32_t>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    std::uint32_t coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }
    std::uint32_t leading() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }
    bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == 1; }

    /// Evaluate at a prime-field point.
    std::uint32_t eval(std::uint32_t x) const;

    friend bool operator==(const PolyFp&, const PolyFp&) = default;

    std::string to_string() const;

private:
    void normalize();

    std::uint32_t p_ = 2;
    std::vector<std::uint32_t> coeffs_;
};

class CharacteristicMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

PolyFp operator+(const PolyFp& a, const PolyFp& b);
PolyFp operator-(const PolyFp& a, const PolyFp& b);
PolyFp operator-(const PolyFp& a);
PolyFp operator*(const PolyFp& a, const PolyFp& b);
PolyFp scalar_mul(std::int64_t s, const PolyFp& a);

/// Quotient and remainder; throws std::domain_error on division by zero.
std::pair<PolyFp, PolyFp> divmod(const PolyFp& a, const PolyFp& b);
PolyFp operator%(const PolyFp& a, const PolyFp& b);
/// Monic gcd (zero if both inputs are zero).
PolyFp gcd(const PolyFp& a, const PolyFp& b);
/// base^e mod m
PolyFp powmod(const PolyFp& base, std::uint64_t e, const PolyFp& m);

bool is_irreducible(const PolyFp& f);

/// (x + s)^d by repeated multiplication, s = +1 or -1.
PolyFp shifted_power(std::uint32_t p, int s, std::uint64_t d);
/// (x + s)^d from Lucas' theorem on the binomial coefficients.
PolyFp shifted_power_lucas(std::uint32_t p, int s, std::uint64_t d);

/// First-kind Dickson polynomial D_d(x, a) over F_p by the division-free
/// recurrence D_0 = 2, D_1 = x, D_d = x D_{d-1} - a D_{d-2}.
PolyFp dickson_coeffs(std::uint32_t p, std::uint64_t d, std::uint32_t a);
/// Same polynomial from the closed form sum_i d/(d-i) C(d-i,i) (-a)^i x^{d-2i},
/// evaluated in Z and reduced mod p.
PolyFp dickson_closed_form(std::uint32_t p, std::uint64_t d, std::uint32_t a);

struct MaintIdentityResult {
    bool holds = false;
    /// Every eps in F_p^* with (x+1)^d + (x-1)^d == 2 D_d(x, eps).
    std::vector<std::uint32_t> eps_witnesses;
    /// For eps = 1/4: first coefficient index where the identity fails, if any.
    std::optional<std::size_t> first_mismatch_quarter;
};

/// Coefficient-wise check of (x+1)^d + (x-1)^d = 2 D_d(x, eps) for every eps.
MaintIdentityResult maint_identity_check(std::uint32_t p, std::uint64_t d);

bool is_prime(std::uint64_t n);

}  // namespace cdulab
