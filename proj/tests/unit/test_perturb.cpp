#include <algorithm>
#include <optional>
#include <random>
#include <set>

#include "doctest.h"

#include "cdulab/cdiff.hpp"
#include "cdulab/field.hpp"
#include "cdulab/function.hpp"
#include "cdulab/perturb.hpp"
#include "naive.hpp"
#include "properties.hpp"

using namespace cdulab;

namespace {

bool naive_pcn(const FuncTable& f, Elt c) {
    const auto N = props::naive_of(f.field());
    std::vector<std::uint32_t> raw;
    for (auto v : f.values()) raw.push_back(v.index);
    return naive::cdu(N, raw, c.index) == 1;
}

std::vector<Elt> all_but_one(const Field& F) {
    std::vector<Elt> out;
    for (auto c : F.enumerate()) {
        if (c != F.one()) out.push_back(c);
    }
    return out;
}

using Hit = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>;  // (k or d, c, gamma) indices

}  // namespace

TEST_SUITE("perturb") {
    TEST_CASE("linearized PcN examples") {
        for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 2}, {3, 2}, {5, 2}}) {
            const auto field = Field::build(p, n);
            const std::vector<Elt> ident{field->one()};
            const std::vector<Elt> fermat{field->minus_one(), field->one()};
            for (auto c : all_but_one(*field)) {
                const auto v = linearized_pcn(field, ident, c);
                CHECK(v.criterion_value);
                CHECK(v.agree);
                const auto w = linearized_pcn(field, fermat, c);
                CHECK_FALSE(w.criterion_value);
                CHECK_FALSE(w.brute_force_value);
                CHECK(w.agree);
            }
        }
        const auto F9 = Field::build(3, 2);
        const std::vector<Elt> ident{F9->one()};
        CHECK_THROWS_AS(linearized_pcn(F9, ident, F9->one()), PerturbError);
    }

    TEST_CASE("binomial criterion agrees with brute force") {
        for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {2, 3}, {3, 3}}) {
            const auto field = Field::build(p, n);
            for (std::uint32_t j = 1; j < n; ++j) {
                for (std::uint32_t a = 1; a < field->q(); ++a) {
                    const auto v = binomial_pcn(field, 0, j, Elt{a}, field->zero());
                    CHECK(v.agree);
                }
            }
        }
    }

    TEST_CASE("sum criterion degenerate cases") {
        const auto field = Field::build(3, 3);
        const auto F = materialize(field, FunctionSpec::monomial(1));
        const std::vector<std::uint32_t> zero(field->q(), 0);
        std::vector<std::uint32_t> random(field->q());
        std::mt19937_64 rng(9);
        for (auto& v : random) v = static_cast<std::uint32_t>(rng() % 3);
        for (auto c : {field->zero(), field->minus_one()}) {
            auto v = sum_pcn_criterion(F, zero, field->generator(), c);
            CHECK(v.criterion_value);
            CHECK(v.agree);
            v = sum_pcn_criterion(F, random, field->zero(), c);
            CHECK(v.criterion_value);
            CHECK(v.agree);
            v = sum_pcn_criterion(F, random, field->generator(), c);
            CHECK(v.agree);
            std::vector<Elt> g(field->q());
            for (std::uint32_t x = 0; x < field->q(); ++x) g[x] = field->mul(field->generator(), Elt{random[x]});
            CHECK(v.brute_force_value == naive_pcn(table_sum(F, FuncTable(field, g)), c));
        }
        CHECK_THROWS_AS(sum_pcn_criterion(F, zero, field->one(), field->one()), PerturbError);
        CHECK_THROWS_AS(sum_pcn_criterion(F, zero, field->one(), field->generator()), PerturbError);
    }

    TEST_CASE("p-to-1 perturbation examples") {
        const auto field = Field::build(3, 2);
        const auto& F = *field;
        const std::vector<Elt> L{F.minus_one(), F.one()};  // x^3 - x, kernel F_3
        const auto Lt = materialize(field, FunctionSpec::linearized(L));
        std::set<Elt> image(Lt.values().begin(), Lt.values().end());
        std::vector<std::uint32_t> f(F.q());
        for (std::uint32_t x = 0; x < F.q(); ++x) f[x] = F.trace(F.mul(Elt{x}, Elt{x}));
        for (auto gamma : F.enumerate()) {
            for (auto c : {F.zero(), Elt{2}}) {
                std::optional<PerturbVerdict> maybe;
                try {
                    maybe = p_to_1_perturb_check(field, L, f, gamma, c);
                } catch (const PerturbError&) {
                    continue;  // L + gamma f is not a permutation
                }
                const auto& v = *maybe;
                if (image.count(gamma)) {
                    CHECK_FALSE(v.criterion_value);
                    CHECK_FALSE(v.brute_force_value);
                }
                if (v.applicable) CHECK(v.agree);
            }
        }
        // A constant f leaves L + gamma f p-to-1, outside the permutation hypothesis.
        const std::vector<std::uint32_t> constant(F.q(), 1);
        CHECK_THROWS_AS(p_to_1_perturb_check(field, L, constant, F.generator(), F.zero()), PerturbError);
        std::vector<Elt> shifted(F.q());
        for (std::uint32_t x = 0; x < F.q(); ++x) shifted[x] = F.add(Lt(Elt{x}), F.generator());
        for (auto c : {F.zero(), Elt{2}}) CHECK_FALSE(naive_pcn(FuncTable(field, shifted), c));
    }

    TEST_CASE("permutation criterion with a trace term") {
        const auto field = Field::build(3, 2);
        const auto& F = *field;
        const auto H = FunctionSpec::monomial(2);
        const auto v0 = ck_permutation_check(field, F.generator(), F.zero(), H);
        CHECK(v0.criterion_value);
        CHECK(v0.brute_force_value);
        bool saw_collision = false;
        for (auto beta : F.enumerate()) {
            for (auto gamma : F.enumerate()) {
                const auto v = ck_permutation_check(field, beta, gamma, H);
                CHECK(v.agree);
                if (F.trace(F.mul(beta, gamma)) == 2) {
                    CHECK_FALSE(v.brute_force_value);
                    saw_collision = true;
                }
            }
        }
        CHECK(saw_collision);
    }

    TEST_CASE("x + gamma Tr(x^p - alpha x)") {
        for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {5, 2}, {3, 3}}) {
            const auto field = Field::build(p, n);
            for (auto gamma : field->enumerate()) {
                const auto v = trace_linearized_pcn(field, gamma, field->one());
                CHECK(v.criterion_value);
                CHECK(v.brute_force_value);
                for (auto alpha : {field->generator(), field->zero()}) CHECK(trace_linearized_pcn(field, gamma, alpha).agree);
            }
        }
    }

    TEST_CASE("excluded gamma values never give PcN functions") {
        for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {3, 3}, {5, 2}}) {
            const auto field = Field::build(p, n);
            for (std::uint32_t k = 1; k < n; ++k) {
                std::int64_t e = 1;
                for (std::uint32_t i = 0; i < k; ++i) e *= p;
                for (auto c : all_but_one(*field)) {
                    for (auto gamma : gold_g1_gamma_exclusion(field, k, c)) {
                        const auto g = materialize(field, FunctionSpec::trace_perturbed(FunctionSpec::monomial(e + 1), gamma,
                                                                                        FunctionSpec::monomial(1)));
                        REQUIRE_FALSE(naive_pcn(g, c));
                    }
                }
            }
        }
    }

    TEST_CASE("x^{p^k+1} + gamma x^{p^k} is never PcN") {
        for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {3, 3}, {5, 2}, {5, 3}}) {
            const auto field = Field::build(p, n);
            for (const auto& v : gold_g2_never_pcn_scan(field, 1, n - 1)) {
                REQUIRE_FALSE(v.brute_force_value);
                REQUIRE(v.agree);
            }
            for (std::uint32_t k = 1; k < n; ++k) {
                for (auto c : all_but_one(*field)) {
                    for (std::uint32_t gi = 1; gi < field->q(); ++gi) {
                        const auto w = gold_g2_witness(field, k, Elt{gi}, c);
                        REQUIRE(w.has_value());
                        REQUIRE(*w != field->zero());
                    }
                }
            }
        }
    }

    TEST_CASE("binary G1 scan") {
        const auto findings = g1_small_field_scan();
        std::set<Hit> h22, h33;
        for (const auto& f : hits(findings)) {
            REQUIRE(f.pcn);
            CHECK(f.k >= f.n);  // no hits for k < n
            if (f.k == 2 && f.n == 2) h22.insert({f.k, f.c.index, f.gamma.index});
            if (f.k == 3 && f.n == 3) h33.insert({f.k, f.c.index, f.gamma.index});
        }
        // GF(4): (c, gamma) in {(0, 1), (alpha, 1), (alpha^2, 1)}.
        CHECK(h22 == std::set<Hit>{{2, 0, 1}, {2, 2, 1}, {2, 3, 1}});
        // GF(8): every c != 1 with gamma in {alpha, alpha^2, alpha^4}.
        const auto F8 = Field::build(2, 3);
        std::set<Hit> expect33;
        for (auto c : all_but_one(*F8)) {
            for (auto g : {F8->exp(1), F8->exp(2), F8->exp(4)}) expect33.insert({3, c.index, g.index});
        }
        CHECK(h33 == expect33);
        // Every finding agrees with the map-based counter.
        for (const auto& f : findings) {
            const auto field = Field::build(2, f.n);
            const auto g = materialize(field, FunctionSpec::trace_perturbed(FunctionSpec::monomial((1 << f.k) + 1), f.gamma,
                                                                            FunctionSpec::monomial(1)));
            REQUIRE(naive_pcn(g, f.c) == f.pcn);
        }
    }

    TEST_CASE("switching x^d + gamma Tr(x^3) on GF(8)") {
        const auto field = Field::build(2, 3);
        const auto& F = *field;
        const auto gammas = F.enumerate();
        const auto findings = switching_scan(field, {3, 9}, {3}, F.enumerate(), gammas);
        std::set<Hit> found;
        for (const auto& f : findings) {
            const auto g = materialize(field, FunctionSpec::trace_perturbed(FunctionSpec::monomial(f.d), f.gamma,
                                                                            FunctionSpec::monomial(f.e)));
            REQUIRE(naive_pcn(g, f.c) == f.pcn);
            if (f.pcn && f.gamma != F.zero()) found.insert({static_cast<std::uint32_t>(f.d), f.c.index, f.gamma.index});
        }
        std::set<Hit> d3;
        for (auto g : {F.exp(1), F.exp(2), F.exp(4)}) d3.insert({3, 0, g.index});
        std::set<Hit> got3, got9;
        for (const auto& h : found) (std::get<0>(h) == 3 ? got3 : got9).insert(h);
        CHECK(got3 == d3);
        // x^9 = x^2 on GF(8), and x^2 + gamma Tr(x^3) is PcN for no gamma != 0 and no c.
        CHECK(got9.empty());
    }

    TEST_CASE("graph-map transfer") {
        const auto field = Field::build(3, 2);
        const auto f = materialize(field, FunctionSpec::monomial(2));
        BlockAffine id;
        id.matrix.assign(4, std::vector<std::uint32_t>(4, 0));
        for (int i = 0; i < 4; ++i) id.matrix[i][i] = 1;
        id.constant.assign(4, 0);
        const auto v = ccz_transfer_check(f, f, id, field->one(), field->one());
        CHECK(v.applicable);
        CHECK(v.agree);
        // A map that does not carry the graph of x^2 onto the graph of x^3 is reported as not applicable.
        const auto g = materialize(field, FunctionSpec::monomial(5));
        const auto w = ccz_transfer_check(f, g, id, field->one(), field->one());
        CHECK_FALSE(w.applicable);
        CHECK_FALSE(w.agree);
    }

    TEST_CASE("plain EA equivalence does not preserve the spectrum") {
        const auto field = Field::build(2, 4);
        const auto a = c_spectrum(materialize(field, FunctionSpec::monomial(3)));
        const auto b =
            c_spectrum(materialize(field, FunctionSpec::sum(FunctionSpec::monomial(3), FunctionSpec::monomial(4))));
        CHECK(a.values() != b.values());
    }

    TEST_CASE("rank over F_p") {
        CHECK(rank_mod_p({{1, 0}, {0, 1}}, 3) == 2);
        CHECK(rank_mod_p({{1, 2}, {2, 1}}, 3) == 1);  // second row is twice the first mod 3
        CHECK(rank_mod_p({{1, 2}, {2, 1}}, 5) == 2);
        CHECK(rank_mod_p({{0, 0}, {0, 0}}, 2) == 0);
        CHECK(rank_mod_p({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}, 2) == 2);
    }
}
