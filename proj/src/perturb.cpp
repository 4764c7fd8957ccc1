#include "cdulab/perturb.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cdulab/oracles.hpp"

namespace cdulab {

namespace {

std::string ext(const Field& F, Elt x) { return F.elt_to_string(x); }

std::string ext_list(const Field& F, std::span<const Elt> xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + ext(F, xs[i]);
    return out + "]";
}

void require_prime_field_c(const Field& F, Elt c) {
    if (!F.in_prime_field(c)) throw PerturbError("c must lie in the prime field");
    if (c == F.one()) throw PerturbError("c = 1 is excluded");
}

void require_pary(const Field& F, std::span<const std::uint32_t> f) {
    if (f.size() != F.q()) throw PerturbError("p-ary table length differs from field size");
    for (auto v : f) {
        if (v >= F.p()) throw PerturbError("p-ary value out of range [0, p)");
    }
}

/// g(x) = f(x + a) - c f(x) over F_p.
std::vector<std::uint32_t> pary_derivative(const Field& F, std::span<const std::uint32_t> f, Elt a, Elt c) {
    const std::uint32_t p = F.p();
    const std::uint32_t neg_c = (p - c.index) % p;
    std::vector<std::uint32_t> g(F.q());
    for (std::uint32_t x = 0; x < F.q(); ++x) g[x] = (f[F.add(Elt{x}, a).index] + neg_c * f[x]) % p;
    return g;
}

bool verdict_agree(PerturbVerdict& v) {
    v.agree = v.applicable && v.criterion_value == v.brute_force_value;
    return v.agree;
}

std::uint64_t gold_exponent(const Field& F, std::uint32_t k) { return ipow(F.p(), k) + 1; }

std::vector<std::uint32_t> mat_vec(const std::vector<std::vector<std::uint32_t>>& M, const std::vector<std::uint32_t>& u,
                                   std::uint32_t p) {
    std::vector<std::uint32_t> out(M.size(), 0);
    for (std::size_t r = 0; r < M.size(); ++r) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < u.size(); ++j) acc += std::uint64_t{M[r][j]} * u[j];
        out[r] = static_cast<std::uint32_t>(acc % p);
    }
    return out;
}

}  // namespace

PerturbVerdict linearized_pcn(const FieldPtr& field, std::span<const Elt> coeffs, Elt c) {
    const Field& F = *field;
    if (c == F.one()) throw PerturbError("c = 1 is excluded");
    PerturbVerdict v{"linearized_pcn"};
    v.params = {{"coeffs", ext_list(F, coeffs)}, {"c", ext(F, c)}};
    v.criterion_value = linearized_kernel(F, coeffs).size() == 1;
    const auto L = materialize(field, FunctionSpec::linearized({coeffs.begin(), coeffs.end()}));
    v.brute_force_value = is_pcn(L, c);
    verdict_agree(v);
    return v;
}

PerturbVerdict binomial_pcn(const FieldPtr& field, std::uint32_t i, std::uint32_t j, Elt a, Elt c) {
    const Field& F = *field;
    if (!(i < j) || j >= F.n()) throw PerturbError("binomial needs 0 <= i < j < n");
    if (a == F.zero()) throw PerturbError("binomial needs a != 0");
    if (c == F.one()) throw PerturbError("c = 1 is excluded");
    PerturbVerdict v{"binomial_pcn"};
    v.params = {{"i", std::to_string(i)}, {"j", std::to_string(j)}, {"a", ext(F, a)}, {"c", ext(F, c)}};
    // a is a k-th power in the cyclic group iff a^{(q-1)/gcd(k, q-1)} = 1.
    const std::uint64_t m = F.group_order();
    const std::uint64_t k = ipow(F.p(), j - i) - 1;
    const auto g = std::gcd(k, m);
    v.criterion_value = F.pow(a, static_cast<std::int64_t>(m / g)) != F.one();
    std::vector<Elt> coeffs(j + 1, F.zero());
    coeffs[i] = F.neg(a);
    coeffs[j] = F.one();
    v.brute_force_value = is_pcn(materialize(field, FunctionSpec::linearized(coeffs)), c);
    verdict_agree(v);
    return v;
}

Elt first_trace_one(const Field& field) {
    for (auto x : field.enumerate()) {
        if (field.trace(x) == 1) return x;
    }
    throw std::logic_error("trace is not surjective");
}

PerturbVerdict sum_pcn_criterion(const FuncTable& Ft, std::span<const std::uint32_t> f, Elt gamma, Elt c,
                                 std::optional<Elt> delta) {
    const Field& F = Ft.field();
    if (F.p() == 2) throw PerturbError("the Walsh-sum criterion is stated for odd p");
    require_prime_field_c(F, c);
    require_pary(F, f);
    if (!F.contains(gamma)) throw PerturbError("gamma is not a field element");
    if (!is_pcn(Ft, c)) throw PerturbError("F is not perfect c-nonlinear for this c");
    const Elt d = delta.value_or(first_trace_one(F));
    if (F.trace(d) != 1) throw PerturbError("delta must have trace 1");

    PerturbVerdict v{"sum_pcn"};
    v.params = {{"gamma", ext(F, gamma)}, {"c", ext(F, c)}, {"delta", ext(F, d)}, {"F", Ft.spec()->describe()}};

    const std::uint32_t q = F.q();
    std::vector<Elt> lambdas;
    for (std::uint32_t l = 0; l < q; ++l) {
        if (F.trace(F.mul(gamma, Elt{l})) != 0) lambdas.push_back(Elt{l});
    }
    bool all_zero = true;
    for (std::uint32_t ai = 0; ai < q && all_zero; ++ai) {
        const Elt a{ai};
        const auto Ginv = invert(c_derivative(Ft, a, c));
        const auto g = pary_derivative(F, f, a, c);
        std::vector<Elt> R(q);
        for (std::uint32_t y = 0; y < q; ++y) R[y] = F.mul(d, Elt{g[Ginv(Elt{y}).index]});
        const FuncTable Rt(Ft.field_ptr(), std::move(R));
        for (auto lambda : lambdas) {
            const Elt beta{F.trace(F.mul(gamma, lambda))};
            if (!walsh(Rt, F.neg(lambda), beta).is_zero()) {
                all_zero = false;
                break;
            }
        }
    }
    v.criterion_value = all_zero;
    const auto lifted = lift_pary(Ft.field_ptr(), f);
    std::vector<Elt> sum(q);
    for (std::uint32_t x = 0; x < q; ++x) sum[x] = F.add(Ft.values()[x], F.mul(gamma, lifted.values()[x]));
    v.brute_force_value = is_pcn(FuncTable(Ft.field_ptr(), std::move(sum)), c);
    verdict_agree(v);
    return v;
}

PerturbVerdict p_to_1_perturb_check(const FieldPtr& field, std::span<const Elt> L_coeffs,
                                    std::span<const std::uint32_t> f, Elt gamma, Elt c) {
    const Field& F = *field;
    require_prime_field_c(F, c);
    require_pary(F, f);
    const auto kernel = linearized_kernel(F, L_coeffs);
    if (kernel.size() != F.p()) throw PerturbError("L is not p-to-1");
    const auto L = materialize(field, FunctionSpec::linearized({L_coeffs.begin(), L_coeffs.end()}));
    const std::uint32_t q = F.q();
    std::vector<Elt> vals(q);
    for (std::uint32_t x = 0; x < q; ++x) vals[x] = F.add(L.values()[x], F.mul(gamma, Elt{f[x]}));
    const FuncTable Ft(field, std::move(vals));
    if (!is_permutation(Ft)) throw PerturbError("L + gamma f is not a permutation");

    PerturbVerdict v{"p_to_1_perturb"};
    v.params = {{"L", ext_list(F, L_coeffs)}, {"gamma", ext(F, gamma)}, {"c", ext(F, c)}};
    const auto image = L.values();
    const bool gamma_outside = std::find(image.begin(), image.end(), gamma) == image.end();
    bool separated = true;
    for (std::uint32_t ai = 1; ai < q && separated; ++ai) {
        const auto g = pary_derivative(F, f, Elt{ai}, c);
        for (std::uint32_t x = 0; x < q && separated; ++x) {
            for (auto eps : kernel) {
                if (eps == F.zero()) continue;
                if (g[F.add(Elt{x}, eps).index] == g[x]) {
                    separated = false;
                    break;
                }
            }
        }
    }
    v.criterion_value = gamma_outside && separated;
    if (!gamma_outside) v.note = "gamma in Im(L)";
    v.brute_force_value = is_pcn(Ft, c);
    verdict_agree(v);
    return v;
}

PerturbVerdict ck_permutation_check(const FieldPtr& field, Elt beta, Elt gamma, const SpecPtr& H) {
    const Field& F = *field;
    const auto Ht = materialize(field, H);
    const Elt g_pow = F.pow(gamma, F.p() - 1);
    std::vector<Elt> vals(F.q());
    for (std::uint32_t xi = 0; xi < F.q(); ++xi) {
        const Elt x{xi};
        const Elt arg = F.sub(F.frobenius(x, 1), F.mul(g_pow, x));
        const Elt inner = F.add(Ht(arg), F.mul(beta, x));
        vals[xi] = F.add(x, F.mul(gamma, Elt{F.trace(inner)}));
    }
    PerturbVerdict v{"ck_permutation"};
    v.params = {{"beta", ext(F, beta)}, {"gamma", ext(F, gamma)}, {"H", H->describe()}};
    // -1 is p - 1 in [0, p); for p = 2 this is the condition Tr(beta gamma) = 0.
    v.criterion_value = F.trace(F.mul(beta, gamma)) != F.p() - 1;
    v.brute_force_value = is_permutation(F, vals);
    verdict_agree(v);
    return v;
}

PerturbVerdict trace_linearized_pcn(const FieldPtr& field, Elt gamma, Elt alpha) {
    const Field& F = *field;
    std::vector<Elt> vals(F.q());
    for (std::uint32_t xi = 0; xi < F.q(); ++xi) {
        const Elt x{xi};
        vals[xi] = F.add(x, F.mul(gamma, Elt{F.trace(F.sub(F.frobenius(x, 1), F.mul(alpha, x)))}));
    }
    const FuncTable Ft(field, std::move(vals));
    PerturbVerdict v{"trace_linearized_pcn"};
    v.params = {{"gamma", ext(F, gamma)}, {"alpha", ext(F, alpha)}};
    v.criterion_value = F.trace(F.mul(gamma, F.sub(F.one(), alpha))) != F.p() - 1;
    std::optional<bool> common;
    bool uniform = true;
    for (std::uint32_t ci = 0; ci < F.q(); ++ci) {
        if (Elt{ci} == F.one()) continue;
        const bool r = is_pcn(Ft, Elt{ci});
        if (common && *common != r) uniform = false;
        if (!common) common = r;
    }
    v.brute_force_value = common.value_or(false);
    verdict_agree(v);
    if (!uniform) {
        v.agree = false;
        v.note = "PcN status depends on c";
    }
    return v;
}

std::vector<Elt> gold_g1_gamma_exclusion(const FieldPtr& field, std::uint32_t k, Elt c) {
    const Field& F = *field;
    if (F.p() == 2) throw PerturbError("gamma exclusion is stated for odd p");
    if (k < 1 || k >= F.n()) throw PerturbError("need 1 <= k < n");
    if (c == F.one()) throw PerturbError("c = 1 is excluded");
    const Elt one_minus_c = F.sub(F.one(), c);
    const Elt denom_sq = F.mul(one_minus_c, one_minus_c);
    const auto d = static_cast<std::int64_t>(gold_exponent(F, k));
    std::set<Elt> out;
    for (std::uint32_t ai = 1; ai < F.q(); ++ai) {
        const Elt a{ai};
        const auto t = F.trace(F.div(a, one_minus_c));
        if (t == 0) continue;
        out.insert(F.neg(F.div(F.pow(a, d), F.mul(Elt{t}, denom_sq))));
    }
    return {out.begin(), out.end()};
}

std::optional<Elt> gold_g2_witness(const FieldPtr& field, std::uint32_t k, Elt gamma, Elt c) {
    const Field& F = *field;
    if (gamma == F.zero() || c == F.one()) throw PerturbError("need gamma != 0 and c != 1");
    const auto pk = static_cast<std::int64_t>(ipow(F.p(), k));
    auto G2 = [&](Elt x) { return F.add(F.pow(x, pk + 1), F.mul(gamma, F.pow(x, pk))); };
    const Elt c_minus_1 = F.sub(c, F.one());
    const Elt a = F.mul(gamma, c_minus_1);
    const Elt x = F.frobenius(F.div(F.pow(a, pk), c_minus_1), -static_cast<std::int64_t>(k));
    if (x == F.zero()) return std::nullopt;
    auto D = [&](Elt y) { return F.sub(G2(F.add(y, a)), F.mul(c, G2(y))); };
    if (D(x) != D(F.zero())) return std::nullopt;
    return x;
}

std::vector<PerturbVerdict> gold_g2_never_pcn_scan(const FieldPtr& field, std::uint32_t k_min, std::uint32_t k_max) {
    const Field& F = *field;
    std::vector<PerturbVerdict> out;
    for (std::uint32_t k = k_min; k <= k_max; ++k) {
        const auto pk = static_cast<std::int64_t>(ipow(F.p(), k));
        const auto gold = materialize(field, FunctionSpec::monomial(pk + 1));
        const auto frob = materialize(field, FunctionSpec::monomial(pk));
        for (std::uint32_t gi = 1; gi < F.q(); ++gi) {
            std::vector<Elt> vals(F.q());
            for (std::uint32_t x = 0; x < F.q(); ++x) vals[x] = F.add(gold.values()[x], F.mul(Elt{gi}, frob.values()[x]));
            const FuncTable G2(field, std::move(vals));
            for (std::uint32_t ci = 0; ci < F.q(); ++ci) {
                if (Elt{ci} == F.one()) continue;
                PerturbVerdict v{"gold_g2"};
                v.params = {{"k", std::to_string(k)}, {"gamma", ext(F, Elt{gi})}, {"c", ext(F, Elt{ci})}};
                v.criterion_value = false;
                v.brute_force_value = is_pcn(G2, Elt{ci});
                verdict_agree(v);
                out.push_back(std::move(v));
            }
        }
    }
    return out;
}

namespace {

FuncTable trace_perturbed_monomial(const FieldPtr& field, std::uint64_t d, Elt gamma, std::uint64_t e) {
    return materialize(field, FunctionSpec::trace_perturbed(FunctionSpec::monomial(static_cast<std::int64_t>(d)), gamma,
                                                            FunctionSpec::monomial(static_cast<std::int64_t>(e))));
}

}  // namespace

std::vector<ScanFinding> g1_small_field_scan() {
    std::vector<ScanFinding> out;
    for (std::uint32_t n = 2; n <= 4; ++n) {
        const auto field = Field::build(2, n);
        const Field& F = *field;
        for (std::uint32_t k = 2; k <= n; ++k) {
            const std::uint64_t d = (std::uint64_t{1} << k) + 1;
            for (std::uint32_t gi = 1; gi < F.q(); ++gi) {
                const auto G1 = trace_perturbed_monomial(field, d, Elt{gi}, 1);
                for (std::uint32_t ci = 0; ci < F.q(); ++ci) {
                    ScanFinding s;
                    s.construction = "g1";
                    s.d = d;
                    s.e = 1;
                    s.k = k;
                    s.n = n;
                    s.c = Elt{ci};
                    s.gamma = Elt{gi};
                    s.params = {{"p", "2"}, {"n", std::to_string(n)}, {"k", std::to_string(k)},
                                {"c", ext(F, s.c)}, {"gamma", ext(F, s.gamma)}};
                    s.pcn = is_pcn(G1, s.c);
                    out.push_back(std::move(s));
                }
            }
        }
    }
    return out;
}

std::vector<ScanFinding> switching_scan(const FieldPtr& field, const std::vector<std::uint64_t>& base_exponents,
                                        const std::vector<std::uint64_t>& inner_exponents,
                                        const std::vector<Elt>& c_range, const std::vector<Elt>& gamma_range) {
    const Field& F = *field;
    std::vector<ScanFinding> out;
    for (auto d : base_exponents) {
        for (auto e : inner_exponents) {
            for (auto gamma : gamma_range) {
                const auto T = trace_perturbed_monomial(field, d, gamma, e);
                for (auto c : c_range) {
                    ScanFinding s;
                    s.construction = "switching";
                    s.d = d;
                    s.e = e;
                    s.n = F.n();
                    s.c = c;
                    s.gamma = gamma;
                    s.params = {{"d", std::to_string(d)}, {"e", std::to_string(e)}, {"c", ext(F, c)},
                                {"gamma", ext(F, gamma)}};
                    s.pcn = is_pcn(T, c);
                    out.push_back(std::move(s));
                }
            }
        }
    }
    return out;
}

PerturbVerdict ccz_transfer_check(const FuncTable& Ft, const FuncTable& F2, const BlockAffine& A, Elt c, Elt c_star) {
    const Field& F = Ft.field();
    const std::uint32_t n = F.n(), p = F.p(), q = F.q();
    PerturbVerdict v{"ccz_transfer"};
    v.params = {{"c", ext(F, c)}, {"c_star", ext(F, c_star)}};
    if (A.matrix.size() != 2 * n || A.constant.size() != 2 * n) throw PerturbError("A must be 2n x 2n with a 2n constant");
    for (const auto& row : A.matrix) {
        if (row.size() != 2 * n) throw PerturbError("A must be 2n x 2n");
    }
    if (c_star == F.zero()) throw PerturbError("c* must be nonzero");

    auto join = [&](Elt x, Elt y) {
        auto u = F.coeffs(x);
        auto w = F.coeffs(y);
        u.insert(u.end(), w.begin(), w.end());
        return u;
    };
    auto split = [&](const std::vector<std::uint32_t>& u) {
        return std::pair{F.from_coeffs(std::span(u).subspan(0, n)), F.from_coeffs(std::span(u).subspan(n, n))};
    };

    auto fail = [&](std::string why) {
        v.applicable = false;
        v.note = std::move(why);
        v.agree = false;
        return v;
    };
    if (rank_mod_p(A.matrix, p) != 2 * n) return fail("A is not invertible");
    for (std::uint32_t x = 0; x < q; ++x) {
        auto u = mat_vec(A.matrix, join(Elt{x}, Ft(Elt{x})), p);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = (u[i] + A.constant[i]) % p;
        const auto [x2, y2] = split(u);
        if (F2(x2) != y2) return fail("A does not map the graph of F onto the graph of F'");
    }

    const Elt inv_cs = F.inv(c_star);
    std::vector<std::pair<Elt, Elt>> scaled(q);
    for (std::uint32_t x = 0; x < q; ++x) {
        const auto [X, Y] = split(mat_vec(A.matrix, join(Elt{x}, F.mul(c, Ft(Elt{x}))), p));
        scaled[x] = {F.mul(inv_cs, X), F.mul(inv_cs, Y)};
    }
    bool found = false;
    for (std::uint32_t x0 = 0; x0 < q && !found; ++x0) {
        const Elt tx = F.sub(Elt{x0}, scaled[0].first);
        const Elt ty = F.sub(F2(Elt{x0}), scaled[0].second);
        bool ok = true;
        for (std::uint32_t x = 0; x < q && ok; ++x) {
            ok = F2(F.add(scaled[x].first, tx)) == F.add(scaled[x].second, ty);
        }
        found = ok;
    }
    if (!found) return fail("the scaled map does not carry the graph of F onto the graph of F'");

    const auto u1 = cdu(Ft, c).uniformity;
    const auto u2 = cdu(F2, c_star).uniformity;
    v.params["cdu_F"] = std::to_string(u1);
    v.params["cdu_F2"] = std::to_string(u2);
    v.criterion_value = true;
    v.brute_force_value = u1 == u2;
    verdict_agree(v);
    return v;
}

std::size_t rank_mod_p(std::vector<std::vector<std::uint32_t>> M, std::uint32_t p) {
    const std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && M[piv][col] % p == 0) ++piv;
        if (piv == rows) continue;
        std::swap(M[piv], M[rank]);
        std::uint32_t inv = 1;
        while ((std::uint64_t{inv} * M[rank][col]) % p != 1) ++inv;
        for (auto& v : M[rank]) v = static_cast<std::uint32_t>(std::uint64_t{v} * inv % p);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || M[r][col] == 0) continue;
            const std::uint64_t f = M[r][col];
            for (std::size_t j = 0; j < cols; ++j) M[r][j] = static_cast<std::uint32_t>((M[r][j] + (p - f) * M[rank][j]) % p);
        }
        ++rank;
    }
    return rank;
}

std::vector<ScanFinding> hits(const std::vector<ScanFinding>& all) {
    std::vector<ScanFinding> out;
    std::copy_if(all.begin(), all.end(), std::back_inserter(out), [](const ScanFinding& s) { return s.pcn; });
    return out;
}

}  // namespace cdulab
