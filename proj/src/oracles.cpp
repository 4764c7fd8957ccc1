#include "cdulab/oracles.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <utility>

namespace cdulab {

namespace {

unsigned two_adic(std::uint64_t v) {
    unsigned t = 0;
    while (v % 2 == 0) {
        v /= 2;
        ++t;
    }
    return t;
}

std::uint64_t group_order(std::uint32_t p, std::uint32_t n) { return ipow(p, n) - 1; }

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace

std::uint64_t ipow(std::uint64_t base, std::uint64_t e) {
    const BigInt r = big_pow(base, e);
    if (r > BigInt(std::numeric_limits<std::uint64_t>::max())) throw std::overflow_error("power exceeds 64 bits");
    return static_cast<std::uint64_t>(r);
}

std::uint64_t half_gold_exponent(std::uint32_t p, std::uint64_t ell) {
    if (p % 2 == 0) throw std::domain_error("(p^l+1)/2 needs odd p");
    return static_cast<std::uint64_t>((big_pow(p, ell) + 1) / 2);
}

BigInt gcd_closed_form(std::uint32_t p, std::uint64_t ell, std::uint64_t n) {
    if (ell == 0 || n == 0) throw std::domain_error("gcd lemma needs l, n >= 1");
    const auto g = std::gcd(ell, n);
    if (p == 2) {
        const auto g2 = std::gcd(n, 2 * ell);
        return (big_pow(2, g2) - 1) / (big_pow(2, g) - 1);
    }
    if ((n / g) % 2 == 1) return 2;
    return big_pow(p, g) + 1;
}

BigInt gcd_direct(std::uint32_t p, std::uint64_t ell, std::uint64_t n) {
    return big_gcd(big_pow(p, ell) + 1, big_pow(p, n) - 1);
}

BigInt dickson_m_to_1(std::uint32_t p, std::uint32_t n, std::uint64_t d) {
    return big_gcd(BigInt(d), big_pow(p, 2 * std::uint64_t{n}) - 1);
}

bool dickson_perm_criterion(std::uint32_t p, std::uint32_t n, std::uint64_t d) { return dickson_m_to_1(p, n, d) == 1; }

CriterionVerdict perm_criterion_l2(std::uint32_t p, std::uint64_t ell, std::uint32_t n) {
    CriterionVerdict v{"perm_l2", p, ell, n, -1, false, 0};
    const bool ell_even = ell % 2 == 0;
    const bool n_even = n % 2 == 0;
    if (ell == 0) {
        v.matched_case = 1;
    } else if (ell_even && !n_even) {
        v.matched_case = 2;
    } else if (ell_even && n_even && two_adic(ell) >= two_adic(n)) {
        v.matched_case = 3;
    } else if (!ell_even && !n_even && p % 4 == 1) {
        v.matched_case = 4;
    }
    v.predicted = v.matched_case != 0;
    return v;
}

CriterionVerdict pcn_criterion_mainp(std::uint32_t p, std::uint64_t ell, std::uint32_t n) {
    CriterionVerdict v{"pcn_mainp", p, ell, n, -1, false, 0};
    const bool ell_even = ell % 2 == 0;
    const bool n_even = n % 2 == 0;
    if (ell == 0) {
        v.matched_case = 1;
    } else if (ell_even && !n_even) {
        v.matched_case = 2;
    } else if (ell_even && n_even && two_adic(ell) >= two_adic(n) + 1) {
        v.matched_case = 3;
    }
    v.predicted = v.matched_case != 0;
    return v;
}

bool l3_not_pcn(std::uint32_t p, std::uint64_t ell, std::uint32_t n) {
    return ell % 2 == 1 && n % 2 == 1 && p % 4 == 1;
}

std::optional<std::uint32_t> uniformity_prediction(std::uint32_t p, std::uint64_t ell, std::uint32_t n) {
    if (p % 2 == 0) return std::nullopt;
    if (std::gcd(ell, 2 * std::uint64_t{n}) != 1) return std::nullopt;
    if (p % 4 == 1 || p % 8 == 3) return (p + 1) / 2;
    return std::nullopt;
}

std::uint64_t exp_inverse(std::uint64_t d, std::uint32_t p, std::uint32_t n) {
    const BigInt m = big_pow(p, n) - 1;
    BigInt t = 0, new_t = 1, r = m, new_r = BigInt(d) % m;
    while (new_r != 0) {
        const BigInt quot = r / new_r;
        t = std::exchange(new_t, t - quot * new_t);
        r = std::exchange(new_r, r - quot * new_r);
    }
    if (r != 1) throw NotInvertible(std::to_string(d) + " is not invertible mod " + m.str());
    if (t < 0) t += m;
    if (m == 1) t = 1;
    return static_cast<std::uint64_t>(t);
}

std::vector<std::uint64_t> exponent_orbit(std::uint64_t d, std::uint32_t p, std::uint32_t n) {
    const auto m = group_order(p, n);
    if (m == 0 || d % m == 0) throw std::domain_error("exponent orbit needs d != 0 mod p^n - 1");
    std::set<std::uint64_t> out;
    std::uint64_t cur = d % m;
    for (std::uint32_t j = 0; j < n; ++j) {
        out.insert(cur);
        cur = mulmod(cur, p, m);
    }
    return {out.begin(), out.end()};
}

std::vector<std::uint64_t> orbit_closure(const std::vector<std::uint64_t>& seeds, std::uint32_t p, std::uint32_t n) {
    std::set<std::uint64_t> out;
    for (auto s : seeds) {
        const auto orb = exponent_orbit(s, p, n);
        out.insert(orb.begin(), orb.end());
    }
    return {out.begin(), out.end()};
}

std::vector<std::uint64_t> invertible_orbit_representatives(std::uint32_t p, std::uint32_t n) {
    const auto m = group_order(p, n);
    std::vector<std::uint64_t> reps;
    for (std::uint64_t d = 1; d < m; ++d) {
        if (std::gcd(d, m) != 1) continue;
        std::uint64_t cur = d;
        bool minimal = true;
        for (std::uint32_t j = 1; j < n && minimal; ++j) {
            cur = mulmod(cur, p, m);
            minimal = cur >= d;
        }
        if (minimal) reps.push_back(d);
    }
    return reps;
}

std::vector<std::uint64_t> conjecture_base_set(std::uint32_t p, std::uint32_t n) {
    if (p % 2 == 0) throw std::domain_error("conjectured lists are for odd p");
    const std::uint64_t P = p;
    auto pw = [&](unsigned e) { return ipow(P, e); };
    if (n == 5) {
        return {1, (pw(2) + 1) / 2, pw(4) + (P - 2) * pw(2) + (P - 1) * P + 1, (pw(4) + 1) / 2, (pw(5) + 1) / (P + 1)};
    }
    if (n == 7) {
        return {1,
                (pw(2) + 1) / 2,
                (P - 1) * pw(6) + pw(5) + (P - 2) * pw(3) + (P - 1) * pw(2) + P,
                (pw(4) + 1) / 2,
                (pw(6) + 1) / 2,
                (P - 2) * pw(6) + (P - 2) * pw(5) + (P - 1) * pw(4) + pw(3) + pw(2) + P,
                (pw(7) + 1) / (P + 1)};
    }
    throw std::domain_error("conjectured lists exist for n = 5 and n = 7 only");
}

std::vector<std::uint64_t> conjecture_set(std::uint32_t p, std::uint32_t n) {
    return orbit_closure(conjecture_base_set(p, n), p, n);
}

std::vector<std::uint64_t> half_gold_pattern_set(std::uint32_t p, std::uint32_t n) {
    if (p % 2 == 0 || n % 2 == 0) throw std::domain_error("pattern set is stated for odd p and odd n");
    std::vector<std::uint64_t> seeds{1};
    for (std::uint32_t e = 2; e < n; e += 2) seeds.push_back(half_gold_exponent(p, e));
    const auto m = group_order(p, n);
    std::vector<std::uint64_t> with_inverses = seeds;
    for (auto s : seeds) {
        if (std::gcd(s, m) == 1) with_inverses.push_back(exp_inverse(s, p, n));
    }
    return orbit_closure(with_inverses, p, n);
}

}  // namespace cdulab
