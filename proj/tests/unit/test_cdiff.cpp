#include <numeric>
#include <random>

#include "doctest.h"

#include "cdulab/cdiff.hpp"
#include "cdulab/cyclo.hpp"
#include "cdulab/field.hpp"
#include "cdulab/function.hpp"
#include "naive.hpp"
#include "properties.hpp"

using namespace cdulab;

namespace {

std::vector<std::uint32_t> raw(const FuncTable& f) {
    std::vector<std::uint32_t> out;
    for (auto v : f.values()) out.push_back(v.index);
    return out;
}

std::uint32_t mono_cdu(const FieldPtr& field, std::int64_t d, Elt c) {
    return cdu(materialize(field, FunctionSpec::monomial(d)), c).uniformity;
}

// First primitive modulus of degree n that differs from the default.
PolyFp other_modulus(std::uint32_t p, std::uint32_t n) {
    const auto def = Field::default_modulus(p, n);
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < n; ++i) total *= p;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<std::uint32_t> c(n + 1, 0);
        auto v = code;
        for (std::uint32_t i = 0; i < n; ++i) {
            c[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        c[n] = 1;
        const PolyFp f(p, c);
        if (f != def && is_irreducible(f) && Field::is_primitive(f)) return f;
    }
    throw std::logic_error("no alternative modulus");
}

}  // namespace

TEST_SUITE("cdiff") {
    TEST_CASE("c-derivative examples") {
        const auto field = Field::build(3, 2);
        const auto& F = *field;
        const auto sq = materialize(field, FunctionSpec::monomial(2));
        for (auto x : F.enumerate()) CHECK(c_derivative(sq, F.zero(), F.one())(x) == F.zero());
        const Elt c = F.generator();
        const auto d0 = c_derivative(sq, F.zero(), c);
        for (auto x : F.enumerate()) CHECK(d0(x) == F.mul(F.sub(F.one(), c), sq(x)));
        const auto d1 = c_derivative(sq, F.one(), F.minus_one());
        for (auto x : F.enumerate()) {
            const Elt expect = F.add(F.add(F.mul(Elt{2}, F.mul(x, x)), F.mul(Elt{2}, x)), F.one());
            CHECK(d1(x) == expect);
        }
    }

    TEST_CASE("uniformity examples") {
        for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {3, 2}, {5, 2}, {7, 2}}) {
            const auto field = Field::build(p, n);
            for (auto c : field->enumerate()) {
                if (c == field->one()) continue;
                CHECK(mono_cdu(field, 1, c) == 1);
                CHECK(is_pcn(materialize(field, FunctionSpec::monomial(1)), c));
            }
        }
        const auto F9 = Field::build(3, 2);
        CHECK(mono_cdu(F9, 2, F9->minus_one()) == 2);
        const auto F25 = Field::build(5, 2);
        CHECK(mono_cdu(F25, 3, F25->minus_one()) == 3);
        const auto F1331 = Field::build(11, 3);
        CHECK(mono_cdu(F1331, 6, F1331->minus_one()) == 6);
        const auto F243 = Field::build(3, 5);
        CHECK(is_pcn(materialize(F243, FunctionSpec::monomial(5)), F243->minus_one()));
        const auto F125 = Field::build(5, 3);
        CHECK_FALSE(is_pcn(materialize(F125, FunctionSpec::monomial(3)), F125->minus_one()));
    }

    TEST_CASE("witnesses attain the uniformity") {
        const auto field = Field::build(5, 2);
        const auto f = materialize(field, FunctionSpec::monomial(3));
        const auto r = cdu(f, field->minus_one());
        const auto h = derivative_histogram(f, r.witness_a, field->minus_one());
        CHECK(h[r.witness_b.index] == r.uniformity);
        CHECK(r.per_a_max.size() == field->q());
        CHECK(*std::max_element(r.per_a_max.begin(), r.per_a_max.end()) == r.uniformity);
        const auto r1 = cdu(f, field->one());
        CHECK(r1.per_a_max[0] == 0);
        CHECK(r1.witness_a != field->zero());
    }

    TEST_CASE("uniformity agrees with map-based counting") {
        std::mt19937_64 rng(101);
        for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}}) {
            const auto field = Field::build(p, n);
            const auto N = props::naive_of(*field);
            for (int trial = 0; trial < 6; ++trial) {
                std::vector<Elt> vals(field->q());
                for (auto& v : vals) v = Elt{static_cast<std::uint32_t>(rng() % field->q())};
                const FuncTable f(field, vals);
                for (auto c : field->enumerate()) {
                    REQUIRE(cdu(f, c).uniformity == naive::cdu(N, raw(f), c.index));
                    REQUIRE(props::mass_conservation(f, c) == 0);
                }
            }
            for (std::int64_t d = 1; d < field->q(); ++d) {
                const auto f = materialize(field, FunctionSpec::monomial(d));
                for (auto c : field->enumerate()) {
                    const auto u = cdu(f, c).uniformity;
                    REQUIRE(u == naive::cdu(N, raw(f), c.index));
                    REQUIRE(is_pcn(f, c) == (u == 1));
                }
            }
        }
    }

    TEST_CASE("worker count does not change the result") {
        const auto field = Field::build(3, 5);
        const auto f = materialize(field, FunctionSpec::monomial(7));
        const auto a = cdu(f, field->minus_one(), 1), b = cdu(f, field->minus_one(), 4);
        CHECK(a.uniformity == b.uniformity);
        CHECK(a.witness_a == b.witness_a);
        CHECK(a.witness_b == b.witness_b);
        CHECK(a.per_a_max == b.per_a_max);
    }

    TEST_CASE("planar squares at c = 1") {
        for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {3, 2}, {3, 3}, {5, 2}, {7, 2}}) {
            const auto field = Field::build(p, n);
            CHECK(mono_cdu(field, 2, field->one()) == 1);
        }
    }

    TEST_CASE("uniformity is invariant under cyclotomic shifts and inversion of exponents") {
        for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 4}, {5, 3}}) {
            const auto field = Field::build(p, n);
            const std::uint64_t m = field->q() - 1;
            for (std::uint32_t ci = 1; ci < p; ++ci) {
                const Elt c{ci};
                std::vector<std::uint32_t> u(m);
                for (std::uint64_t d = 1; d < m; ++d) u[d] = mono_cdu(field, static_cast<std::int64_t>(d), c);
                for (std::uint64_t d = 1; d < m; ++d) {
                    REQUIRE(u[(d * p) % m] == u[d]);
                    if ((ci == 1 || ci == p - 1) && naive::gcd(d, m) == 1) {
                        std::uint64_t inv = 1;
                        while ((inv * d) % m != 1) ++inv;
                        REQUIRE(u[inv] == u[d]);
                    }
                }
            }
        }
    }

    TEST_CASE("uniformity does not depend on the modulus") {
        for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 4}, {5, 3}}) {
            const auto A = Field::build(p, n);
            const auto B = Field::build(p, n, other_modulus(p, n));
            REQUIRE(A->modulus() != B->modulus());
            for (std::uint32_t ci = 0; ci < p; ++ci) {
                for (std::int64_t d = 1; d < A->q(); d += 3) {
                    REQUIRE(mono_cdu(A, d, Elt{ci}) == mono_cdu(B, d, Elt{ci}));
                }
            }
        }
    }

    TEST_CASE("spectra") {
        const auto field = Field::build(2, 4);
        const auto x3 = materialize(field, FunctionSpec::monomial(3));
        const auto s3 = c_spectrum(x3);
        CHECK(s3.values() == std::set<std::uint32_t>{1, 2, 3});
        const auto x34 = materialize(field, FunctionSpec::sum(FunctionSpec::monomial(3), FunctionSpec::monomial(4)));
        const auto s34 = c_spectrum(x34);
        CHECK(s34.values() == std::set<std::uint32_t>{1, 2, 3, 4});
        // The per-c uniformities are kept separately.
        CHECK(s3.uniformities() == std::set<std::uint32_t>{2, 3});
        CHECK(s34.uniformities() == std::set<std::uint32_t>{2, 4});
        std::uint32_t total = 0;
        for (const auto& [u, k] : s3.multiplicity) total += k;
        CHECK(total == 16);

        for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {3, 2}, {5, 2}}) {
            const auto f = Field::build(p, n);
            const auto id = materialize(f, FunctionSpec::monomial(1));
            std::vector<Elt> not_one;
            for (auto c : f->enumerate()) {
                if (c != f->one()) not_one.push_back(c);
            }
            CHECK(c_spectrum(id, not_one).values() == std::set<std::uint32_t>{1});
            CHECK(c_spectrum(id, not_one).uniformities() == std::set<std::uint32_t>{1});
            // At c = 1 the derivative of x is the constant a, hit q times.
            CHECK(c_spectrum(id).uniformities() == std::set<std::uint32_t>{1, f->q()});
        }
    }

    TEST_CASE("spectrum over a restricted c list and budget") {
        const auto field = Field::build(3, 3);
        const auto f = materialize(field, FunctionSpec::monomial(5));
        const auto s = c_spectrum(f, std::vector<Elt>{field->minus_one()});
        CHECK(s.multiplicity.size() == 1);
        CHECK(s.uniformities() == std::set<std::uint32_t>{cdu(f, field->minus_one()).uniformity});
        CHECK_THROWS_AS(c_spectrum(f, std::nullopt, 16), BudgetExceeded);
        CHECK(c_spectrum(f, std::nullopt, kDefaultSpectrumCap, 1).values() ==
              c_spectrum(f, std::nullopt, kDefaultSpectrumCap, 3).values());
    }

    TEST_CASE("cyclotomic integers") {
        CycloInt z(3, {2, 2, 2});
        CHECK(z.is_zero());
        CHECK(z.canonical().counts() == std::vector<std::int64_t>{0, 0, 0});
        CycloInt w(3, {3, 1, 2});
        CHECK_FALSE(w.is_zero());
        CHECK(w.canonical().counts() == std::vector<std::int64_t>{2, 0, 1});
        CHECK(w == CycloInt(3, {5, 3, 4}));
    }

    TEST_CASE("Walsh examples") {
        for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {3, 2}, {5, 2}}) {
            const auto field = Field::build(p, n);
            const auto id = materialize(field, FunctionSpec::monomial(1));
            const auto w00 = walsh(id, field->zero(), field->zero());
            std::vector<std::int64_t> expect(p, 0);
            expect[0] = field->q();
            CHECK(w00.counts() == expect);
            for (auto a : field->enumerate()) {
                for (auto b : field->enumerate()) {
                    const auto w = walsh(id, a, b);
                    if (a == b) {
                        CHECK(w.counts() == expect);
                    } else {
                        CHECK(w.is_zero());
                    }
                }
            }
        }
        const auto F9 = Field::build(3, 2);
        const auto w = walsh(materialize(F9, FunctionSpec::monomial(2)), F9->zero(), F9->one());
        CHECK(std::accumulate(w.counts().begin(), w.counts().end(), std::int64_t{0}) == 9);
    }

    TEST_CASE("exact Walsh zero test agrees with floating point") {
        std::mt19937_64 rng(2024);
        const auto s = props::walsh_vs_float(1000, rng);
        CHECK(s.bad == 0);
        CHECK(s.zeros > 0);
    }
}
