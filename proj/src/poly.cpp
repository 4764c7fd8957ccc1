#include "cdulab/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "cdulab/bigint.hpp"

namespace cdulab {

namespace {

std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
    auto r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // p prime, a != 0
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        auto q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    return reduce(t, p);
}

void check_same(const PolyFp& a, const PolyFp& b) {
    if (a.characteristic() != b.characteristic()) {
        throw CharacteristicMismatch("polynomials over F_" + std::to_string(a.characteristic()) +
                                     " and F_" + std::to_string(b.characteristic()));
    }
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

PolyFp::PolyFp(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
    if (p < 2) throw std::invalid_argument("characteristic must be at least 2");
    for (auto& c : coeffs_) c %= p_;
    normalize();
}

PolyFp PolyFp::constant(std::uint32_t p, std::int64_t c) { return PolyFp(p, {reduce(c, p)}); }

PolyFp PolyFp::monomial(std::uint32_t p, std::size_t k, std::int64_t c) {
    std::vector<std::uint32_t> v(k + 1, 0);
    v[k] = reduce(c, p);
    return PolyFp(p, std::move(v));
}

void PolyFp::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::uint32_t PolyFp::eval(std::uint32_t x) const {
    std::uint64_t acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = (acc * x + *it) % p_;
    }
    return static_cast<std::uint32_t>(acc);
}

std::string PolyFp::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        auto c = coeffs_[i];
        if (c == 0) continue;
        if (!first) out << " + ";
        first = false;
        if (i == 0) {
            out << c;
            continue;
        }
        if (c != 1) out << c << "*";
        out << "x";
        if (i > 1) out << "^" << i;
    }
    return out.str();
}

PolyFp operator+(const PolyFp& a, const PolyFp& b) {
    check_same(a, b);
    const auto p = a.characteristic();
    std::vector<std::uint32_t> r(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (a.coeff(i) + b.coeff(i)) % p;
    return PolyFp(p, std::move(r));
}

PolyFp operator-(const PolyFp& a) {
    const auto p = a.characteristic();
    std::vector<std::uint32_t> r(a.coeffs().size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (p - a.coeff(i)) % p;
    return PolyFp(p, std::move(r));
}

PolyFp operator-(const PolyFp& a, const PolyFp& b) { return a + (-b); }

PolyFp operator*(const PolyFp& a, const PolyFp& b) {
    check_same(a, b);
    const auto p = a.characteristic();
    if (a.is_zero() || b.is_zero()) return PolyFp::zero(p);
    std::vector<std::uint64_t> acc(a.coeffs().size() + b.coeffs().size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
            acc[i + j] = (acc[i + j] + std::uint64_t{a.coeffs()[i]} * b.coeffs()[j]) % p;
        }
    }
    return PolyFp(p, std::vector<std::uint32_t>(acc.begin(), acc.end()));
}

PolyFp scalar_mul(std::int64_t s, const PolyFp& a) {
    const auto p = a.characteristic();
    const auto k = reduce(s, p);
    std::vector<std::uint32_t> r(a.coeffs().size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<std::uint32_t>(std::uint64_t{k} * a.coeff(i) % p);
    return PolyFp(p, std::move(r));
}

std::pair<PolyFp, PolyFp> divmod(const PolyFp& a, const PolyFp& b) {
    check_same(a, b);
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const auto p = a.characteristic();
    if (a.degree() < b.degree()) return {PolyFp::zero(p), a};
    std::vector<std::uint32_t> rem = a.coeffs();
    const auto db = static_cast<std::size_t>(b.degree());
    std::vector<std::uint32_t> quot(rem.size() - db, 0);
    const std::uint64_t lead_inv = inv_mod(b.leading(), p);
    for (std::size_t k = quot.size(); k-- > 0;) {
        const auto top = rem[k + db];
        if (top == 0) continue;
        const auto f = static_cast<std::uint32_t>(top * lead_inv % p);
        quot[k] = f;
        for (std::size_t j = 0; j <= db; ++j) {
            const auto sub = static_cast<std::uint32_t>(std::uint64_t{f} * b.coeff(j) % p);
            rem[k + j] = (rem[k + j] + p - sub) % p;
        }
    }
    return {PolyFp(p, std::move(quot)), PolyFp(p, std::move(rem))};
}

PolyFp operator%(const PolyFp& a, const PolyFp& b) { return divmod(a, b).second; }

PolyFp gcd(const PolyFp& a, const PolyFp& b) {
    check_same(a, b);
    PolyFp x = a, y = b;
    while (!y.is_zero()) {
        x = std::exchange(y, x % y);
    }
    if (x.is_zero()) return x;
    return scalar_mul(inv_mod(x.leading(), x.characteristic()), x);
}

PolyFp powmod(const PolyFp& base, std::uint64_t e, const PolyFp& m) {
    const auto p = base.characteristic();
    PolyFp result = PolyFp::constant(p, 1) % m;
    PolyFp b = base % m;
    while (e > 0) {
        if (e & 1U) result = (result * b) % m;
        b = (b * b) % m;
        e >>= 1U;
    }
    return result;
}

bool is_irreducible(const PolyFp& f) {
    // Ben-Or: f of degree n is irreducible iff gcd(x^{p^i} - x, f) = 1 for i <= n/2.
    const auto n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    const auto p = f.characteristic();
    const PolyFp x = PolyFp::monomial(p, 1);
    PolyFp xpi = x;
    for (long i = 1; i <= n / 2; ++i) {
        xpi = powmod(xpi, p, f);
        if (gcd(xpi - x, f).degree() != 0) return false;
    }
    return true;
}

PolyFp shifted_power(std::uint32_t p, int s, std::uint64_t d) {
    const PolyFp lin(p, {reduce(s, p), 1});
    PolyFp r = PolyFp::constant(p, 1);
    for (std::uint64_t i = 0; i < d; ++i) r = r * lin;
    return r;
}

PolyFp shifted_power_lucas(std::uint32_t p, int s, std::uint64_t d) {
    // Small binomial table C(a, b) mod p for digits a, b < p.
    std::vector<std::vector<std::uint32_t>> pascal(p, std::vector<std::uint32_t>(p, 0));
    for (std::uint32_t a = 0; a < p; ++a) {
        pascal[a][0] = 1;
        for (std::uint32_t b = 1; b <= a; ++b) pascal[a][b] = (pascal[a - 1][b - 1] + (b < a ? pascal[a - 1][b] : 0)) % p;
    }
    const auto sr = reduce(s, p);
    std::vector<std::uint32_t> coeffs(d + 1, 0);
    for (std::uint64_t k = 0; k <= d; ++k) {
        std::uint64_t c = 1;
        for (std::uint64_t dd = d, kk = k; (dd > 0 || kk > 0) && c != 0; dd /= p, kk /= p) {
            const auto di = dd % p, ki = kk % p;
            c = ki > di ? 0 : c * pascal[di][ki] % p;
        }
        if (c == 0) continue;
        // times s^{d-k}
        std::uint64_t sp = 1;
        for (std::uint64_t e = d - k, base = sr; e > 0; e >>= 1U, base = base * base % p) {
            if (e & 1U) sp = sp * base % p;
        }
        coeffs[k] = static_cast<std::uint32_t>(c * sp % p);
    }
    return PolyFp(p, std::move(coeffs));
}

PolyFp dickson_coeffs(std::uint32_t p, std::uint64_t d, std::uint32_t a) {
    PolyFp prev = PolyFp::constant(p, 2);
    if (d == 0) return prev;
    PolyFp cur = PolyFp::monomial(p, 1);
    const PolyFp x = cur;
    const auto neg_a = static_cast<std::int64_t>(p - a % p);
    for (std::uint64_t k = 2; k <= d; ++k) {
        prev = std::exchange(cur, x * cur + scalar_mul(neg_a, prev));
    }
    return cur;
}

PolyFp dickson_closed_form(std::uint32_t p, std::uint64_t d, std::uint32_t a) {
    if (d == 0) return PolyFp::constant(p, 2);
    std::vector<std::uint32_t> coeffs(d + 1, 0);
    const BigInt big_p = p;
    for (std::uint64_t i = 0; i <= d / 2; ++i) {
        // d/(d-i) * C(d-i, i) is an integer; compute exactly before reducing.
        BigInt binom = 1;
        for (std::uint64_t j = 0; j < i; ++j) {
            binom *= (d - i - j);
            binom /= (j + 1);
        }
        BigInt term = binom * d / (d - i);
        BigInt neg_a_pow = 1;
        for (std::uint64_t j = 0; j < i; ++j) neg_a_pow *= -static_cast<std::int64_t>(a);
        term *= neg_a_pow;
        BigInt r = term % big_p;
        if (r < 0) r += big_p;
        coeffs[d - 2 * i] = static_cast<std::uint32_t>(r);
    }
    return PolyFp(p, std::move(coeffs));
}

MaintIdentityResult maint_identity_check(std::uint32_t p, std::uint64_t d) {
    if (p == 2) throw std::invalid_argument("maint identity check needs odd characteristic");
    const PolyFp lhs = shifted_power_lucas(p, 1, d) + shifted_power_lucas(p, -1, d);
    MaintIdentityResult res;
    for (std::uint32_t eps = 1; eps < p; ++eps) {
        if (lhs == scalar_mul(2, dickson_coeffs(p, d, eps))) res.eps_witnesses.push_back(eps);
    }
    res.holds = !res.eps_witnesses.empty();
    const PolyFp quarter = scalar_mul(2, dickson_coeffs(p, d, inv_mod(4 % p, p)));
    for (std::size_t i = 0; i <= d; ++i) {
        if (lhs.coeff(i) != quarter.coeff(i)) {
            res.first_mismatch_quarter = i;
            break;
        }
    }
    return res;
}

}  // namespace cdulab
