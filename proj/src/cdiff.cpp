#include "cdulab/cdiff.hpp"

#include <algorithm>
#include <atomic>

#include "cdulab/parallel.hpp"

namespace cdulab {

namespace {

std::vector<Elt> scaled_negation(const FuncTable& f, Elt c) {
    const Field& F = f.field();
    std::vector<Elt> out(F.q());
    const Elt neg_c = F.neg(c);
    for (std::uint32_t x = 0; x < F.q(); ++x) out[x] = F.mul(neg_c, f.values()[x]);
    return out;
}

}  // namespace

FuncTable c_derivative(const FuncTable& f, Elt a, Elt c) {
    const Field& F = f.field();
    const auto neg_cf = scaled_negation(f, c);
    std::vector<Elt> out(F.q());
    for (std::uint32_t x = 0; x < F.q(); ++x) out[x] = F.add(f(F.add(Elt{x}, a)), neg_cf[x]);
    return FuncTable(f.field_ptr(), std::move(out));
}

std::vector<std::uint32_t> derivative_histogram(const FuncTable& f, Elt a, Elt c) {
    const Field& F = f.field();
    const auto neg_cf = scaled_negation(f, c);
    std::vector<std::uint32_t> counts(F.q(), 0);
    for (std::uint32_t x = 0; x < F.q(); ++x) ++counts[F.add(f(F.add(Elt{x}, a)), neg_cf[x]).index];
    return counts;
}

CDiffResult cdu(const FuncTable& f, Elt c, unsigned workers) {
    const Field& F = f.field();
    const auto q = F.q();
    const auto neg_cf = scaled_negation(f, c);
    const auto vals = f.values();
    const bool skip_zero = c == F.one();

    CDiffResult res;
    res.c = c;
    res.per_a_max.assign(q, 0);
    std::vector<Elt> best_b(q, Elt{0});
    workers = std::max(1U, workers);
    std::vector<std::vector<std::uint32_t>> scratch(workers, std::vector<std::uint32_t>(q, 0));

    parallel_for(q, workers, [&](std::size_t ai, unsigned w) {
        if (skip_zero && ai == 0) return;
        const Elt a{static_cast<std::uint32_t>(ai)};
        auto& counts = scratch[w];
        std::fill(counts.begin(), counts.end(), 0U);
        std::uint32_t best = 0;
        Elt arg{0};
        for (std::uint32_t x = 0; x < q; ++x) {
            const auto b = F.add(vals[F.add(Elt{x}, a).index], neg_cf[x]);
            const auto n = ++counts[b.index];
            if (n > best || (n == best && b < arg)) {
                best = n;
                arg = b;
            }
        }
        res.per_a_max[ai] = best;
        best_b[ai] = arg;
    });

    for (std::uint32_t a = 0; a < q; ++a) {
        if (res.per_a_max[a] > res.uniformity) {
            res.uniformity = res.per_a_max[a];
            res.witness_a = Elt{a};
            res.witness_b = best_b[a];
        }
    }
    return res;
}

bool is_pcn(const FuncTable& f, Elt c, unsigned workers) {
    const Field& F = f.field();
    const auto q = F.q();
    const auto neg_cf = scaled_negation(f, c);
    const auto vals = f.values();
    const bool skip_zero = c == F.one();
    workers = std::max(1U, workers);
    std::vector<std::vector<std::uint32_t>> stamps(workers, std::vector<std::uint32_t>(q, 0));
    std::vector<std::uint32_t> generation(workers, 0);
    std::atomic<bool> failed{false};

    parallel_for(q, workers, [&](std::size_t ai, unsigned w) {
        if (failed.load(std::memory_order_relaxed)) return;
        if (skip_zero && ai == 0) return;
        const Elt a{static_cast<std::uint32_t>(ai)};
        auto& seen = stamps[w];
        const auto gen = ++generation[w];
        for (std::uint32_t x = 0; x < q; ++x) {
            const auto b = F.add(vals[F.add(Elt{x}, a).index], neg_cf[x]);
            if (seen[b.index] == gen) {
                failed = true;
                return;
            }
            seen[b.index] = gen;
        }
    });
    return !failed;
}

std::set<std::uint32_t> Spectrum::uniformities() const {
    std::set<std::uint32_t> out;
    for (const auto& [u, mult] : multiplicity) out.insert(u);
    return out;
}

Spectrum c_spectrum(const FuncTable& f, const std::optional<std::vector<Elt>>& c_range, std::uint32_t max_q,
                    unsigned workers) {
    const Field& F = f.field();
    const auto q = F.q();
    if (q > max_q) {
        throw BudgetExceeded("c-spectrum over GF(" + std::to_string(q) + ") exceeds the cap of " +
                             std::to_string(max_q) + " elements");
    }
    std::vector<Elt> cs;
    if (c_range) {
        cs = *c_range;
    } else {
        for (std::uint32_t c = 0; c < q; ++c) cs.push_back(Elt{c});
    }
    workers = std::max(1U, workers);
    std::vector<std::uint32_t> uniformity(cs.size(), 0);
    // present[i][v] marks that some N_c(a, b) = v for c = cs[i].
    std::vector<std::vector<char>> present(cs.size(), std::vector<char>(q + 1, 0));
    std::vector<std::vector<std::uint32_t>> scratch(workers, std::vector<std::uint32_t>(q, 0));
    const auto vals = f.values();
    parallel_for(cs.size(), workers, [&](std::size_t i, unsigned w) {
        const Elt c = cs[i];
        const auto neg_cf = scaled_negation(f, c);
        auto& counts = scratch[w];
        for (std::uint32_t a = 0; a < q; ++a) {
            if (a == 0 && c == F.one()) continue;
            std::fill(counts.begin(), counts.end(), 0U);
            for (std::uint32_t x = 0; x < q; ++x) ++counts[F.add(vals[F.add(Elt{x}, Elt{a}).index], neg_cf[x]).index];
            for (auto n : counts) {
                present[i][n] = 1;
                uniformity[i] = std::max(uniformity[i], n);
            }
        }
    });
    Spectrum out;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        ++out.multiplicity[uniformity[i]];
        for (std::uint32_t v = 1; v <= q; ++v) {
            if (present[i][v]) out.count_values.insert(v);
        }
    }
    return out;
}

CycloInt walsh(const FuncTable& f, Elt a, Elt b) {
    const Field& F = f.field();
    const auto p = F.p();
    CycloInt out(p);
    for (std::uint32_t x = 0; x < F.q(); ++x) {
        const auto tb = F.trace(F.mul(b, f.values()[x]));
        const auto ta = F.trace(F.mul(a, Elt{x}));
        out.add_power((tb + p - ta) % p);
    }
    return out;
}

}  // namespace cdulab
