#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace cdulab {

/// Arbitrary-width integer for exponent algebra (p^{2n} - 1 overflows 64 bits).
using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(std::uint64_t base, std::uint64_t e) {
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(e));
}

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
}

}  // namespace cdulab
