#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace cdulab {

/// Element of Z[zeta_p] stored as multiplicities of zeta^0 .. zeta^{p-1}.
///
/// Since 1 + zeta + ... + zeta^{p-1} = 0 for prime p, a vector represents
/// zero exactly when all its coordinates are equal; canonical form shifts the
/// minimum coordinate to 0.
class CycloInt {
public:
    explicit CycloInt(std::uint32_t p) : counts_(p, 0) {}
    CycloInt(std::uint32_t p, std::vector<std::int64_t> counts);

    std::uint32_t order() const noexcept { return static_cast<std::uint32_t>(counts_.size()); }
    const std::vector<std::int64_t>& counts() const noexcept { return counts_; }
    void add_power(std::uint32_t j, std::int64_t mult = 1) { counts_[j % counts_.size()] += mult; }

    CycloInt canonical() const;
    bool is_zero() const noexcept;
    /// Numeric value with zeta = exp(2 pi i / p); for cross-checks only.
    std::complex<double> to_complex() const;

    friend bool operator==(const CycloInt& a, const CycloInt& b) {
        return a.canonical().counts_ == b.canonical().counts_;
    }

private:
    std::vector<std::int64_t> counts_;
};

}  // namespace cdulab
