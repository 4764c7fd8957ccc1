#pragma once

// Reference implementations that share no code with the library: schoolbook
// polynomial arithmetic modulo the field's modulus, direct solution counting,
// and floating-point character sums.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

namespace naive {

/// GF(p^n) on coefficient vectors, reducing by a monic modulus given low degree first.
struct Field {
    std::uint32_t p;
    std::uint32_t n;
    std::vector<std::uint32_t> modulus;  // length n + 1, monic
    std::uint32_t q;

    Field(std::uint32_t p_, std::vector<std::uint32_t> mod)
        : p(p_), n(static_cast<std::uint32_t>(mod.size() - 1)), modulus(std::move(mod)), q(1) {
        for (std::uint32_t i = 0; i < n; ++i) q *= p;
    }

    std::vector<std::uint32_t> vec(std::uint32_t index) const {
        std::vector<std::uint32_t> v(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            v[i] = index % p;
            index /= p;
        }
        return v;
    }
    std::uint32_t index(const std::vector<std::uint32_t>& v) const {
        std::uint32_t out = 0;
        for (std::uint32_t i = n; i-- > 0;) out = out * p + v[i];
        return out;
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        auto x = vec(a), y = vec(b);
        for (std::uint32_t i = 0; i < n; ++i) x[i] = (x[i] + y[i]) % p;
        return index(x);
    }
    std::uint32_t neg(std::uint32_t a) const {
        auto x = vec(a);
        for (auto& c : x) c = (p - c) % p;
        return index(x);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        const auto x = vec(a), y = vec(b);
        std::vector<std::uint64_t> prod(2 * n, 0);
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = 0; j < n; ++j) prod[i + j] += std::uint64_t{x[i]} * y[j];
        }
        for (auto& c : prod) c %= p;
        // Reduce top-down using x^n = -(m_0 + ... + m_{n-1} x^{n-1}).
        for (std::size_t k = prod.size(); k-- > n;) {
            const std::uint64_t t = prod[k];
            if (t == 0) continue;
            prod[k] = 0;
            for (std::uint32_t i = 0; i < n; ++i) {
                prod[k - n + i] = (prod[k - n + i] + (p - modulus[i]) * t) % p;
            }
        }
        std::vector<std::uint32_t> out(n);
        for (std::uint32_t i = 0; i < n; ++i) out[i] = static_cast<std::uint32_t>(prod[i] % p);
        return index(out);
    }
    /// Square-and-multiply; 0^0 = 1.
    std::uint32_t pow(std::uint32_t a, std::uint64_t d) const {
        std::uint32_t result = 1;
        std::uint32_t base = a;
        while (d) {
            if (d & 1) result = mul(result, base);
            base = mul(base, base);
            d >>= 1;
        }
        return result;
    }
    std::uint32_t trace(std::uint32_t a) const {
        std::uint32_t acc = 0, cur = a;
        for (std::uint32_t i = 0; i < n; ++i) {
            acc = add(acc, cur);
            cur = pow(cur, p);
        }
        return acc;  // lies in the prime field, so the index is the integer value
    }
};

/// max over admissible a and all b of #{x : F(x+a) - c F(x) = b}, counted with a map.
inline std::uint32_t cdu(const Field& F, const std::vector<std::uint32_t>& f, std::uint32_t c) {
    std::uint32_t best = 0;
    for (std::uint32_t a = 0; a < F.q; ++a) {
        if (a == 0 && c == 1) continue;
        std::map<std::uint32_t, std::uint32_t> counts;
        for (std::uint32_t x = 0; x < F.q; ++x) ++counts[F.sub(f[F.add(x, a)], F.mul(c, f[x]))];
        for (const auto& [b, k] : counts) best = std::max(best, k);
    }
    return best;
}

/// sum_x exp(2 pi i (Tr(b F(x)) - Tr(a x)) / p) in floating point.
inline std::complex<double> walsh(const Field& F, const std::vector<std::uint32_t>& f, std::uint32_t a,
                                  std::uint32_t b) {
    std::complex<double> acc = 0;
    for (std::uint32_t x = 0; x < F.q; ++x) {
        const int e = static_cast<int>(F.trace(F.mul(b, f[x]))) - static_cast<int>(F.trace(F.mul(a, x)));
        acc += std::polar(1.0, 2 * std::numbers::pi * e / static_cast<double>(F.p));
    }
    return acc;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

}  // namespace naive
