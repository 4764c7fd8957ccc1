#include "cdulab/field.hpp"

#include <sstream>
#include <stdexcept>

namespace cdulab {

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::optional<std::uint64_t> checked_power(std::uint64_t p, std::uint32_t n, std::uint64_t limit) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (q > limit / p) return std::nullopt;
        q *= p;
    }
    return q;
}

}  // namespace

bool Field::is_primitive(const PolyFp& f) {
    if (!f.is_monic() || !is_irreducible(f)) return false;
    const auto p = f.characteristic();
    const auto n = static_cast<std::uint32_t>(f.degree());
    const auto q = checked_power(p, n, std::uint64_t{1} << 62);
    if (!q) return false;
    const auto order = *q - 1;
    const PolyFp x = PolyFp::monomial(p, 1);
    const PolyFp one = PolyFp::constant(p, 1);
    if (powmod(x, order, f) != one) return false;
    for (auto r : prime_factors(order)) {
        if (powmod(x, order / r, f) == one) return false;
    }
    return true;
}

PolyFp Field::default_modulus(std::uint32_t p, std::uint32_t n) {
    if (p == 2 && n == 2) return PolyFp(2, {1, 1, 1});
    if (p == 2 && n == 3) return PolyFp(2, {1, 1, 0, 1});
    if (p == 2 && n == 4) return PolyFp(2, {1, 1, 0, 0, 1});
    // c_0 is the most significant position in the lexicographic order.
    std::vector<std::uint32_t> digits(n, 0);
    while (true) {
        std::vector<std::uint32_t> coeffs(digits);
        coeffs.push_back(1);
        PolyFp f(p, std::move(coeffs));
        if (is_primitive(f)) return f;
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++digits[i] < p) break;
            digits[i] = 0;
            if (i == 0) throw FieldError("no primitive polynomial found");
        }
    }
}

FieldPtr Field::build(std::uint32_t p, std::uint32_t n, std::optional<PolyFp> modulus, std::uint64_t table_limit) {
    if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
    if (n == 0) throw FieldError("extension degree must be at least 1");
    const auto q = checked_power(p, n, table_limit);
    if (!q) {
        throw FieldTooLarge("GF(" + std::to_string(p) + "^" + std::to_string(n) + ") exceeds the table limit of " +
                            std::to_string(table_limit) + " elements");
    }
    PolyFp f;
    if (modulus) {
        f = *modulus;
        if (f.characteristic() != p) throw FieldError("modulus characteristic does not match p");
        if (f.degree() != static_cast<long>(n) || !f.is_monic()) {
            throw FieldError("modulus must be monic of degree " + std::to_string(n));
        }
        if (!is_irreducible(f)) throw ReducibleModulus("modulus " + f.to_string() + " is reducible");
        if (!is_primitive(f)) throw NonPrimitiveModulus("modulus " + f.to_string() + " is not primitive");
    } else {
        f = default_modulus(p, n);
    }
    return FieldPtr(new Field(p, n, std::move(f)));
}

Field::Field(std::uint32_t p, std::uint32_t n, PolyFp modulus)
    : p_(p), n_(n), q_(1), modulus_(std::move(modulus)) {
    for (std::uint32_t i = 0; i < n_; ++i) q_ *= p_;
    build_tables();
}

void Field::build_tables() {
    const auto order = group_order();
    exp_.assign(2 * std::size_t{order}, Elt{0});
    log_.assign(q_, kNoLog);

    std::vector<std::uint32_t> cur(n_, 0);
    cur[0] = 1;
    for (std::uint32_t k = 0; k < order; ++k) {
        std::uint32_t idx = 0;
        for (std::uint32_t i = n_; i-- > 0;) idx = idx * p_ + cur[i];
        if (idx == 0 || log_[idx] != kNoLog) throw NonPrimitiveModulus("modulus root is not a generator");
        exp_[k] = Elt{idx};
        exp_[k + order] = Elt{idx};
        log_[idx] = k;
        // multiply by x and reduce with x^n = -sum m_i x^i
        const auto top = cur[n_ - 1];
        for (std::uint32_t i = n_ - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        for (std::uint32_t i = 0; i < n_; ++i) {
            const auto t = static_cast<std::uint32_t>(std::uint64_t{top} * modulus_.coeff(i) % p_);
            cur[i] = (cur[i] + p_ - t) % p_;
        }
    }
    if (cur[0] != 1 || [&] {
            for (std::uint32_t i = 1; i < n_; ++i)
                if (cur[i] != 0) return true;
            return false;
        }()) {
        throw NonPrimitiveModulus("alpha^(q-1) != 1");
    }

    zech_.assign(order, kNoLog);
    for (std::uint32_t k = 0; k < order; ++k) {
        const auto v = exp_[k].index;
        const auto c0 = v % p_;
        const auto w = v - c0 + (c0 + 1) % p_;
        zech_[k] = log_[w];  // kNoLog when 1 + alpha^k = 0
    }

    neg_.assign(q_, Elt{0});
    for (std::uint32_t v = 0; v < q_; ++v) {
        std::uint32_t out = 0, scale = 1;
        for (std::uint32_t rest = v, i = 0; i < n_; ++i, rest /= p_, scale *= p_) {
            out += ((p_ - rest % p_) % p_) * scale;
        }
        neg_[v] = Elt{out};
    }

    trace_.assign(q_, 0);
    for (std::uint32_t v = 1; v < q_; ++v) {
        Elt acc{0};
        for (std::uint32_t j = 0; j < n_; ++j) acc = add(acc, frobenius(Elt{v}, j));
        if (acc.index >= p_) throw FieldError("trace left the prime field");
        trace_[v] = acc.index;
    }
}

Elt Field::from_int(std::int64_t v) const noexcept {
    auto r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return Elt{static_cast<std::uint32_t>(r)};
}

Elt Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() > n_) throw FieldError("coefficient vector longer than n");
    std::uint32_t idx = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] >= p_) throw FieldError("coefficient out of range [0, p)");
        idx = idx * p_ + coeffs[i];
    }
    return Elt{idx};
}

std::vector<std::uint32_t> Field::coeffs(Elt x) const {
    std::vector<std::uint32_t> out(n_);
    auto v = x.index;
    for (std::uint32_t i = 0; i < n_; ++i, v /= p_) out[i] = v % p_;
    return out;
}

Elt Field::inv(Elt x) const {
    if (x.index == 0) throw std::domain_error("inverse of zero");
    const auto l = log_[x.index];
    return exp_[l == 0 ? 0 : group_order() - l];
}

Elt Field::div(Elt x, Elt y) const { return mul(x, inv(y)); }

Elt Field::pow(Elt x, std::int64_t d) const {
    if (x.index == 0) {
        if (d < 0) throw std::domain_error("negative power of zero");
        return d == 0 ? one() : zero();
    }
    const auto order = static_cast<std::int64_t>(group_order());
    auto e = d % order;
    if (e < 0) e += order;
    const auto k = std::uint64_t{log_[x.index]} * static_cast<std::uint64_t>(e) % group_order();
    return exp_[k];
}

Elt Field::frobenius(Elt x, std::int64_t j) const {
    if (x.index == 0) return x;
    auto jj = j % static_cast<std::int64_t>(n_);
    if (jj < 0) jj += n_;
    std::uint64_t k = log_[x.index];
    for (std::int64_t i = 0; i < jj; ++i) k = k * p_ % group_order();
    return exp_[k];
}

std::uint32_t Field::log(Elt x) const {
    if (x.index == 0 || x.index >= q_) throw std::domain_error("log of zero");
    return log_[x.index];
}

std::vector<Elt> Field::enumerate() const {
    std::vector<Elt> out;
    out.reserve(q_);
    out.push_back(zero());
    for (std::uint32_t k = 0; k < group_order(); ++k) out.push_back(exp_[k]);
    return out;
}

std::string Field::elt_to_string(Elt x) const {
    if (n_ == 1) return std::to_string(x.index);
    std::ostringstream out;
    out << "[";
    const auto c = coeffs(x);
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
    out << "]";
    return out.str();
}

}  // namespace cdulab
