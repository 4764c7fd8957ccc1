#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "cdulab/cdiff.hpp"
#include "cdulab/field.hpp"
#include "cdulab/function.hpp"
#include "cdulab/oracles.hpp"
#include "cdulab/perturb.hpp"
#include "cdulab/verify.hpp"
#include "verify_util.hpp"

namespace cdulab {

namespace {

using detail::cat;
using detail::Timer;
using FieldList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

const FieldList kSmallOdd{{3, 2}, {3, 3}, {5, 2}};
const FieldList kSmallMixed{{3, 2}, {3, 3}, {5, 2}, {2, 3}, {2, 4}};

std::string field_name(const Field& F) { return cat("GF(", F.p(), "^", F.n(), ")"); }

void record(CheckSummary& s, const PerturbVerdict& v, const std::string& where) {
    ++s.cases;
    if (v.agree) return;
    std::string what = where + " " + v.construction;
    for (const auto& [k, val] : v.params) what += " " + k + "=" + val;
    what += cat(" criterion=", v.criterion_value, " brute=", v.brute_force_value);
    if (!v.note.empty()) what += " (" + v.note + ")";
    s.fail(what);
}

Elt nth_trace_one(const Field& F, std::size_t nth) {
    for (auto x : F.enumerate()) {
        if (F.trace(x) == 1 && nth-- == 0) return x;
    }
    throw std::logic_error("not enough trace-1 elements");
}

std::vector<std::vector<std::uint32_t>> random_invertible(std::uint32_t dim, std::uint32_t p, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> dist(0, p - 1);
    for (;;) {
        std::vector<std::vector<std::uint32_t>> M(dim, std::vector<std::uint32_t>(dim));
        for (auto& row : M) {
            for (auto& v : row) v = dist(rng);
        }
        if (rank_mod_p(M, p) == dim) return M;
    }
}

FuncTable monomial(const FieldPtr& F, std::int64_t d) { return materialize(F, FunctionSpec::monomial(d)); }

}  // namespace

CheckSummary check_sum_pcn(std::uint32_t draws, std::uint64_t seed) {
    CheckSummary s{"sum-pcn"};
    Timer timer(s);
    std::mt19937_64 rng(seed);
    for (auto [p, n] : kSmallOdd) {
        const auto field = Field::build(p, n);
        const Field& F = *field;
        const std::uint32_t q = F.q();
        std::uniform_int_distribution<std::uint32_t> elt(0, q - 1), digit(0, p - 1);
        std::vector<Elt> cs;
        for (std::uint32_t c = 0; c < p; ++c) {
            if (c != 1) cs.push_back(Elt{c});
        }
        std::vector<std::pair<FuncTable, std::vector<Elt>>> bases{{monomial(field, 1), cs}};
        // A nonlinear PcN base where one exists for c = -1.
        for (std::int64_t d : {5, 7}) {
            auto t = monomial(field, d);
            if (std::gcd<std::uint64_t, std::uint64_t>(d, F.group_order()) == 1 && is_pcn(t, F.minus_one())) {
                bases.push_back({std::move(t), {F.minus_one()}});
                break;
            }
        }
        const Elt delta2 = nth_trace_one(F, 1);
        std::uint32_t positives = 0;
        for (std::uint32_t i = 0; i < draws; ++i) {
            const auto& [base, base_cs] = bases[i % bases.size()];
            const Elt c = base_cs[rng() % base_cs.size()];
            const Elt gamma{elt(rng)};
            const Elt beta{elt(rng)};
            const std::uint32_t shift = digit(rng);
            std::vector<std::uint32_t> f(q);
            for (std::uint32_t x = 0; x < q; ++x) {
                switch (i % 4) {
                    case 0: f[x] = digit(rng); break;
                    case 1: f[x] = (F.trace(F.mul(beta, Elt{x})) + shift) % p; break;
                    case 2: f[x] = F.trace(F.mul(beta, F.mul(Elt{x}, Elt{x}))); break;
                    default: f[x] = i % 8 == 3 ? 0 : shift; break;
                }
            }
            const auto v = sum_pcn_criterion(base, f, gamma, c);
            record(s, v, cat(field_name(F), " draw ", i));
            positives += v.brute_force_value ? 1 : 0;
            const auto w = sum_pcn_criterion(base, f, gamma, c, delta2);
            ++s.cases;
            if (w.criterion_value != v.criterion_value) {
                s.fail(cat(field_name(F), " draw ", i, ": verdict changes with delta"));
            }
        }
        s.notes.push_back(cat(field_name(F), ": ", draws, " draws, ", positives, " PcN"));
    }
    return s;
}

CheckSummary check_p_to_1() {
    CheckSummary s{"p-to-1"};
    Timer timer(s);
    const auto field = Field::build(3, 2);
    const Field& F = *field;
    const std::uint32_t q = F.q(), p = F.p();
    const std::vector<Elt> L{F.minus_one(), F.one()};
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < q; ++i) total *= p;
    std::uint64_t skipped = 0, positives = 0;
    std::vector<std::uint32_t> f(q);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t v = code;
        for (std::uint32_t x = 0; x < q; ++x) {
            f[x] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        for (std::uint32_t g = 0; g < q; ++g) {
            for (std::uint32_t c : {0U, 2U}) {
                try {
                    const auto verdict = p_to_1_perturb_check(field, L, f, Elt{g}, Elt{c});
                    record(s, verdict, "GF(3^2)");
                    positives += verdict.brute_force_value ? 1 : 0;
                } catch (const PerturbError&) {
                    ++skipped;
                }
            }
        }
    }
    s.notes.push_back(cat(s.cases, " permutation instances (", positives, " PcN), ", skipped,
                          " skipped because L + gamma f is not a permutation"));
    return s;
}

CheckSummary check_ck_permutation() {
    CheckSummary s{"ck-permutation"};
    Timer timer(s);
    for (auto [p, n] : kSmallMixed) {
        const auto field = Field::build(p, n);
        const Field& F = *field;
        for (std::int64_t k = 0; k <= 5; ++k) {
            const auto H = FunctionSpec::monomial(k);
            for (std::uint32_t b = 0; b < F.q(); ++b) {
                for (std::uint32_t g = 0; g < F.q(); ++g) {
                    record(s, ck_permutation_check(field, Elt{b}, Elt{g}, H), field_name(F));
                }
            }
        }
    }
    return s;
}

CheckSummary check_trace_linearized() {
    CheckSummary s{"trace-linearized"};
    Timer timer(s);
    for (auto [p, n] : kSmallMixed) {
        const auto field = Field::build(p, n);
        const Field& F = *field;
        for (std::uint32_t g = 0; g < F.q(); ++g) {
            for (std::uint32_t a = 0; a < F.q(); ++a) {
                record(s, trace_linearized_pcn(field, Elt{g}, Elt{a}), field_name(F));
            }
        }
    }
    return s;
}

CheckSummary check_gold_g2() {
    CheckSummary s{"gold-g2"};
    Timer timer(s);
    for (std::uint32_t p : {3U, 5U}) {
        for (std::uint32_t n : {2U, 3U}) {
            const auto field = Field::build(p, n);
            const Field& F = *field;
            for (const auto& v : gold_g2_never_pcn_scan(field, 1, n - 1)) record(s, v, field_name(F));
            for (std::uint32_t k = 1; k < n; ++k) {
                for (std::uint32_t g = 1; g < F.q(); ++g) {
                    for (std::uint32_t c = 0; c < F.q(); ++c) {
                        if (Elt{c} == F.one()) continue;
                        ++s.cases;
                        if (!gold_g2_witness(field, k, Elt{g}, Elt{c})) {
                            s.fail(cat(field_name(F), " k=", k, " gamma=#", g, " c=#", c, ": no witness collision"));
                        }
                    }
                }
            }
        }
    }
    return s;
}

CheckSummary check_gold_g1_exclusion() {
    CheckSummary s{"gold-g1-exclusion"};
    Timer timer(s);
    for (auto [p, n] : kSmallOdd) {
        const auto field = Field::build(p, n);
        const Field& F = *field;
        std::uint64_t excluded = 0;
        for (std::uint32_t k = 1; k < n; ++k) {
            const auto d = static_cast<std::int64_t>(ipow(p, k) + 1);
            for (std::uint32_t c = 0; c < F.q(); ++c) {
                if (Elt{c} == F.one()) continue;
                for (auto gamma : gold_g1_gamma_exclusion(field, k, Elt{c})) {
                    ++s.cases;
                    ++excluded;
                    const auto G1 = materialize(
                        field, FunctionSpec::trace_perturbed(FunctionSpec::monomial(d), gamma, FunctionSpec::monomial(1)));
                    if (is_pcn(G1, Elt{c})) {
                        s.fail(cat(field_name(F), " k=", k, " c=#", c, " gamma=#", gamma.index, " is PcN"));
                    }
                }
            }
        }
        s.notes.push_back(cat(field_name(F), ": ", excluded, " excluded (k, c, gamma) confirmed"));
    }
    return s;
}

CheckSummary check_linearized() {
    CheckSummary s{"linearized"};
    Timer timer(s);
    for (auto [p, n] : kSmallMixed) {
        const auto field = Field::build(p, n);
        const Field& F = *field;
        const std::vector<Elt> cs{F.zero(), F.minus_one() == F.one() ? F.generator() : F.minus_one()};
        // Every coefficient vector of length 2 and a deterministic sample of full length.
        for (std::uint32_t a0 = 0; a0 < F.q(); ++a0) {
            for (std::uint32_t a1 = 0; a1 < F.q(); ++a1) {
                const std::vector<Elt> coeffs{Elt{a0}, Elt{a1}};
                for (auto c : cs) record(s, linearized_pcn(field, coeffs, c), field_name(F));
            }
        }
        std::mt19937_64 rng(p * 100 + n);
        for (int i = 0; i < 100; ++i) {
            std::vector<Elt> coeffs(n);
            for (auto& e : coeffs) e = Elt{static_cast<std::uint32_t>(rng() % F.q())};
            record(s, linearized_pcn(field, coeffs, cs[i % 2]), field_name(F));
        }
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = i + 1; j < n; ++j) {
                for (std::uint32_t a = 1; a < F.q(); ++a) {
                    for (auto c : cs) record(s, binomial_pcn(field, i, j, Elt{a}, c), field_name(F));
                }
            }
        }
    }
    return s;
}

CheckSummary check_a_equivalence(std::uint64_t seed) {
    CheckSummary s{"a-equivalence"};
    Timer timer(s);
    std::mt19937_64 rng(seed);
    for (auto [p, n] : FieldList{{2, 4}, {3, 3}}) {
        const auto field = Field::build(p, n);
        const Field& F = *field;
        std::vector<FuncTable> fs{monomial(field, 3), materialize(field, FunctionSpec::sum(FunctionSpec::monomial(3),
                                                                                           FunctionSpec::monomial(4)))};
        std::vector<Elt> random_vals(F.q());
        for (auto& v : random_vals) v = Elt{static_cast<std::uint32_t>(rng() % F.q())};
        fs.emplace_back(field, random_vals);
        for (const auto& f : fs) {
            const auto spec0 = c_spectrum(f);
            std::vector<std::uint32_t> u0;
            for (std::uint32_t c = 0; c < F.q(); ++c) u0.push_back(cdu(f, Elt{c}).uniformity);
            for (int trial = 0; trial < 4; ++trial) {
                const auto A = materialize(field, FunctionSpec::affine(random_invertible(n, p, rng),
                                                                       Elt{static_cast<std::uint32_t>(rng() % F.q())}));
                const auto g = table_compose(f, A);
                ++s.cases;
                const auto spec1 = c_spectrum(g);
                if (spec1.count_values != spec0.count_values || spec1.multiplicity != spec0.multiplicity) {
                    s.fail(cat(field_name(F), " ", f.spec()->describe(), ": spectrum changed under input-affine map"));
                }
                for (std::uint32_t c = 0; c < F.q(); ++c) {
                    ++s.cases;
                    if (cdu(g, Elt{c}).uniformity != u0[c]) {
                        s.fail(cat(field_name(F), " ", f.spec()->describe(), " c=#", c, ": cdu changed"));
                    }
                }
            }
        }
    }
    return s;
}

CheckSummary check_ccz_transfer(std::uint64_t seed) {
    CheckSummary s{"ccz-transfer"};
    Timer timer(s);
    std::mt19937_64 rng(seed);
    const auto field = Field::build(3, 2);
    const Field& F = *field;
    const std::uint32_t n = F.n(), p = F.p();
    auto identity = [&](std::uint32_t dim) {
        std::vector<std::vector<std::uint32_t>> I(dim, std::vector<std::uint32_t>(dim, 0));
        for (std::uint32_t i = 0; i < dim; ++i) I[i][i] = 1;
        return I;
    };
    // A = identity, F' = F, c* = c.
    for (std::int64_t d : {2, 3, 5}) {
        const auto f = monomial(field, d);
        for (std::uint32_t c = 1; c < F.q(); ++c) {
            const auto v = ccz_transfer_check(f, f, BlockAffine{identity(2 * n), std::vector<std::uint32_t>(2 * n, 0)},
                                              Elt{c}, Elt{c});
            // With c = 1 the scaled map is A itself, so the hypotheses must hold.
            if (v.applicable) {
                record(s, v, cat("GF(3^2) identity x^", d));
            } else if (c == 1) {
                ++s.cases;
                s.fail(cat("GF(3^2) identity x^", d, " c=1: hypotheses rejected: ", v.note));
            }
        }
    }
    // Input-affine: F' = F o L, A = diag(L^{-1}, I). The scaled condition
    // needs F(x / c) = F(x) + const, which x^2 satisfies for c = -1.
    std::uint32_t applicable = 0, inapplicable = 0;
    for (int trial = 0; trial < 8; ++trial) {
        const auto Lm = random_invertible(n, p, rng);
        const auto L = materialize(field, FunctionSpec::affine(Lm, F.zero()));
        const auto Linv = invert(L);
        std::vector<std::vector<std::uint32_t>> Linv_m(n, std::vector<std::uint32_t>(n));
        for (std::uint32_t j = 0; j < n; ++j) {
            std::vector<std::uint32_t> e(n, 0);
            e[j] = 1;
            const auto col = F.coeffs(Linv(F.from_coeffs(e)));
            for (std::uint32_t i = 0; i < n; ++i) Linv_m[i][j] = col[i];
        }
        BlockAffine A{identity(2 * n), std::vector<std::uint32_t>(2 * n, 0)};
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = 0; j < n; ++j) A.matrix[i][j] = Linv_m[i][j];
        }
        for (std::int64_t d : {2, 3}) {
            const auto f = monomial(field, d);
            const auto f2 = table_compose(f, L);
            for (Elt c : {F.one(), F.minus_one()}) {
                const auto v = ccz_transfer_check(f, f2, A, c, c);
                if (v.applicable) {
                    ++applicable;
                    record(s, v, cat("GF(3^2) x^", d, " trial ", trial));
                } else {
                    ++inapplicable;
                    ++s.cases;
                    // x^2 with c = +-1 always meets the hypotheses.
                    if (d == 2) s.fail(cat("GF(3^2) x^2 trial ", trial, ": hypotheses rejected: ", v.note));
                }
            }
        }
    }
    s.notes.push_back(cat(applicable, " input-affine instances applicable, ", inapplicable, " not applicable"));
    return s;
}

CheckSummary check_pinned_scans() {
    CheckSummary s{"pinned-scans"};
    Timer timer(s);
    using HitSet = std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>;  // (k or d, c, gamma)

    {
        const auto field = Field::build(2, 4);
        const auto x3 = monomial(field, 3);
        const auto x3x4 = materialize(field, FunctionSpec::sum(FunctionSpec::monomial(3), FunctionSpec::monomial(4)));
        const std::set<std::uint32_t> want3{1, 2, 3}, want34{1, 2, 3, 4};
        s.cases += 2;
        const auto s3 = c_spectrum(x3), s34 = c_spectrum(x3x4);
        if (s3.values() != want3) s.fail("GF(2^4): spectrum of x^3 is not {1,2,3}");
        if (s34.values() != want34) s.fail("GF(2^4): spectrum of x^3 + x^4 is not {1,2,3,4}");
        auto show = [](const std::set<std::uint32_t>& xs) {
            std::string out;
            for (auto x : xs) out += (out.empty() ? "" : ",") + std::to_string(x);
            return "{" + out + "}";
        };
        s.notes.push_back("GF(2^4) uniformities over c: x^3 " + show(s3.uniformities()) + ", x^3 + x^4 " +
                          show(s34.uniformities()));
    }

    {
        std::map<std::pair<std::uint32_t, std::uint32_t>, HitSet> got;  // (k, n) -> hits
        for (const auto& h : hits(g1_small_field_scan())) got[{h.k, h.n}].insert({h.k, h.c.index, h.gamma.index});
        const auto F2 = Field::build(2, 2);
        const Elt a2 = F2->generator();
        HitSet want22{{2, 0, 1}, {2, a2.index, 1}, {2, F2->pow(a2, 2).index, 1}};
        ++s.cases;
        if (got[{2, 2}] != want22) s.fail("G1 (k,n)=(2,2): hits differ from {(0,1),(a,1),(a^2,1)}");
        const auto F3 = Field::build(2, 3);
        HitSet want33;
        for (std::uint32_t c = 0; c < F3->q(); ++c) {
            if (Elt{c} == F3->one()) continue;
            for (int e : {1, 2, 4}) want33.insert({3, c, F3->exp(e).index});
        }
        ++s.cases;
        if (got[{3, 3}] != want33) s.fail("G1 (k,n)=(3,3): hits differ from {(c,a),(c,a^2),(c,a^4)}, c != 1");
        for (std::uint32_t n = 2; n <= 4; ++n) {
            for (std::uint32_t k = 2; k < n; ++k) {
                ++s.cases;
                if (!got[{k, n}].empty()) s.fail(cat("G1 (k,n)=(", k, ",", n, "): unexpected hits"));
            }
        }
        s.notes.push_back(cat("G1 (k,n)=(4,4): ", got[{4, 4}].size(), " hits, not pinned"));
    }

    {
        const auto field = Field::build(2, 3);
        const Field& F = *field;
        std::vector<Elt> cs, gammas;
        for (std::uint32_t x = 0; x < F.q(); ++x) cs.push_back(Elt{x});
        for (std::uint32_t x = 1; x < F.q(); ++x) gammas.push_back(Elt{x});
        HitSet want;
        for (int e : {1, 2, 4}) want.insert({0, 0, F.exp(e).index});
        for (std::uint64_t d : {3, 9}) {
            HitSet got;
            for (const auto& h : hits(switching_scan(field, {d}, {3}, cs, gammas))) got.insert({0, h.c.index, h.gamma.index});
            ++s.cases;
            if (got != want) {
                s.fail(cat("switching x^", d, " + gamma Tr(x^3) on GF(2^3): ", got.size(),
                           " hits with gamma != 0, expected c = 0 and gamma in {a, a^2, a^4}"));
            }
        }
    }
    return s;
}

}  // namespace cdulab
