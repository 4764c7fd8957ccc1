#include "cdulab/function.hpp"

#include <algorithm>
#include <sstream>

namespace cdulab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

SpecPtr make(auto&& v) {
    auto s = std::make_shared<FunctionSpec>();
    s->kind = std::forward<decltype(v)>(v);
    return s;
}

void require_elt(const Field& field, Elt e, const char* what) {
    if (!field.contains(e)) throw SpecError(std::string(what) + " is not an element of the field");
}

void require_spec(const SpecPtr& s) {
    if (!s) throw SpecError("missing sub-spec");
}

std::vector<Elt> eval_values(const FieldPtr& fp, const FunctionSpec& s) {
    const Field& f = *fp;
    const auto q = f.q();
    std::vector<Elt> out(q);
    std::visit(
        overloaded{
            [&](const spec::Monomial& m) {
                if (m.d < 0) throw SpecError("monomial exponent must be non-negative");
                const auto order = f.group_order();
                const auto e = static_cast<std::uint64_t>(m.d) % order;
                const auto logs = f.log_table();
                const auto exps = f.exp_table();
                out[0] = f.pow(f.zero(), m.d);
                for (std::uint32_t x = 1; x < q; ++x) out[x] = exps[std::uint64_t{logs[x]} * e % order];
            },
            [&](const spec::DicksonFirst& dk) {
                require_elt(f, dk.a, "Dickson parameter");
                for (std::uint32_t x = 0; x < q; ++x) out[x] = dickson_eval(f, dk.d, dk.a, Elt{x});
            },
            [&](const spec::Linearized& l) {
                if (l.coeffs.size() > f.n()) throw SpecError("linearized polynomial has more than n coefficients");
                for (auto c : l.coeffs) require_elt(f, c, "linearized coefficient");
                for (std::uint32_t x = 0; x < q; ++x) {
                    Elt acc = f.zero();
                    for (std::size_t i = 0; i < l.coeffs.size(); ++i) {
                        acc = f.add(acc, f.mul(l.coeffs[i], f.frobenius(Elt{x}, static_cast<std::int64_t>(i))));
                    }
                    out[x] = acc;
                }
            },
            [&](const spec::TracePerturbed& t) {
                require_spec(t.base);
                require_spec(t.inner);
                require_elt(f, t.gamma, "gamma");
                const auto base = eval_values(fp, *t.base);
                const auto inner = eval_values(fp, *t.inner);
                for (std::uint32_t x = 0; x < q; ++x) {
                    out[x] = f.add(base[x], f.mul(t.gamma, Elt{f.trace(inner[x])}));
                }
            },
            [&](const spec::Affine& a) {
                const auto n = f.n();
                if (a.matrix.size() != n) throw SpecError("affine matrix must be n x n");
                for (const auto& row : a.matrix) {
                    if (row.size() != n) throw SpecError("affine matrix must be n x n");
                    for (auto v : row)
                        if (v >= f.p()) throw SpecError("affine matrix entry out of range");
                }
                require_elt(f, a.constant, "affine constant");
                std::vector<std::uint32_t> y(n);
                for (std::uint32_t x = 0; x < q; ++x) {
                    const auto cx = f.coeffs(Elt{x});
                    for (std::uint32_t i = 0; i < n; ++i) {
                        std::uint64_t acc = 0;
                        for (std::uint32_t j = 0; j < n; ++j) acc += std::uint64_t{a.matrix[i][j]} * cx[j];
                        y[i] = static_cast<std::uint32_t>(acc % f.p());
                    }
                    out[x] = f.add(f.from_coeffs(y), a.constant);
                }
            },
            [&](const spec::Sum& s2) {
                require_spec(s2.left);
                require_spec(s2.right);
                const auto l = eval_values(fp, *s2.left);
                const auto r = eval_values(fp, *s2.right);
                for (std::uint32_t x = 0; x < q; ++x) out[x] = f.add(l[x], r[x]);
            },
            [&](const spec::Table& t) {
                if (t.values.size() != q) {
                    throw SpecError("table has " + std::to_string(t.values.size()) + " entries, expected " +
                                    std::to_string(q));
                }
                for (auto v : t.values) require_elt(f, v, "table entry");
                out = t.values;
            },
        },
        s.kind);
    return out;
}

}  // namespace

SpecPtr FunctionSpec::monomial(std::int64_t d) { return make(spec::Monomial{d}); }
SpecPtr FunctionSpec::dickson(std::uint64_t d, Elt a) { return make(spec::DicksonFirst{d, a}); }
SpecPtr FunctionSpec::linearized(std::vector<Elt> coeffs) { return make(spec::Linearized{std::move(coeffs)}); }
SpecPtr FunctionSpec::trace_perturbed(SpecPtr base, Elt gamma, SpecPtr inner) {
    return make(spec::TracePerturbed{std::move(base), gamma, std::move(inner)});
}
SpecPtr FunctionSpec::affine(std::vector<std::vector<std::uint32_t>> matrix, Elt constant) {
    return make(spec::Affine{std::move(matrix), constant});
}
SpecPtr FunctionSpec::sum(SpecPtr left, SpecPtr right) { return make(spec::Sum{std::move(left), std::move(right)}); }
SpecPtr FunctionSpec::table(std::vector<Elt> values) { return make(spec::Table{std::move(values)}); }

std::string FunctionSpec::describe() const {
    return std::visit(
        overloaded{
            [](const spec::Monomial& m) { return "x^" + std::to_string(m.d); },
            [](const spec::DicksonFirst& d) {
                return "D_" + std::to_string(d.d) + "(x, #" + std::to_string(d.a.index) + ")";
            },
            [](const spec::Linearized& l) {
                std::string s;
                for (std::size_t i = 0; i < l.coeffs.size(); ++i) {
                    if (l.coeffs[i].index == 0) continue;
                    if (!s.empty()) s += " + ";
                    s += "#" + std::to_string(l.coeffs[i].index) + "*x^(p^" + std::to_string(i) + ")";
                }
                return s.empty() ? std::string("0") : s;
            },
            [](const spec::TracePerturbed& t) {
                return t.base->describe() + " + #" + std::to_string(t.gamma.index) + "*Tr(" + t.inner->describe() + ")";
            },
            [](const spec::Affine&) { return std::string("affine"); },
            [](const spec::Sum& s) { return s.left->describe() + " + " + s.right->describe(); },
            [](const spec::Table& t) { return "table[" + std::to_string(t.values.size()) + "]"; },
        },
        kind);
}

FuncTable::FuncTable(FieldPtr field, std::vector<Elt> values, SpecPtr spec)
    : field_(std::move(field)), values_(std::move(values)), spec_(std::move(spec)) {
    if (values_.size() != field_->q()) throw SpecError("value table length differs from field size");
}

SpecPtr FuncTable::spec() const { return spec_ ? spec_ : FunctionSpec::table(values_); }

FuncTable materialize(const FieldPtr& field, const SpecPtr& spec) {
    require_spec(spec);
    return FuncTable(field, eval_values(field, *spec), spec);
}

bool is_permutation(const Field& field, std::span<const Elt> values) {
    if (values.size() != field.q()) return false;
    std::vector<bool> seen(field.q(), false);
    for (auto v : values) {
        if (seen[v.index]) return false;
        seen[v.index] = true;
    }
    return true;
}

bool is_permutation(const FuncTable& t) { return is_permutation(t.field(), t.values()); }

FuncTable invert(const FuncTable& t) {
    const auto q = t.field().q();
    std::vector<Elt> out(q);
    std::vector<bool> seen(q, false);
    for (std::uint32_t x = 0; x < q; ++x) {
        const auto y = t.values()[x];
        if (seen[y.index]) throw SpecError("cannot invert a non-bijective table");
        seen[y.index] = true;
        out[y.index] = Elt{x};
    }
    return FuncTable(t.field_ptr(), std::move(out));
}

std::vector<Elt> linearized_kernel(const Field& field, std::span<const Elt> coeffs) {
    std::vector<Elt> out;
    for (std::uint32_t x = 0; x < field.q(); ++x) {
        Elt acc = field.zero();
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            acc = field.add(acc, field.mul(coeffs[i], field.frobenius(Elt{x}, static_cast<std::int64_t>(i))));
        }
        if (acc == field.zero()) out.push_back(Elt{x});
    }
    std::size_t sz = out.size();
    while (sz % field.p() == 0) sz /= field.p();
    if (sz != 1) throw std::logic_error("linearized kernel size is not a power of p");
    return out;
}

Elt dickson_eval(const Field& f, std::uint64_t d, Elt a, Elt x) {
    Elt prev = f.from_int(2);
    if (d == 0) return prev;
    Elt cur = x;
    const Elt neg_a = f.neg(a);
    for (std::uint64_t k = 2; k <= d; ++k) {
        prev = std::exchange(cur, f.add(f.mul(x, cur), f.mul(neg_a, prev)));
    }
    return cur;
}

FuncTable table_sum(const FuncTable& f, const FuncTable& g) {
    const Field& F = f.field();
    std::vector<Elt> out(F.q());
    for (std::uint32_t x = 0; x < F.q(); ++x) out[x] = F.add(f.values()[x], g.values()[x]);
    return FuncTable(f.field_ptr(), std::move(out));
}

FuncTable table_compose(const FuncTable& outer, const FuncTable& inner) {
    std::vector<Elt> out(inner.field().q());
    for (std::uint32_t x = 0; x < out.size(); ++x) out[x] = outer(inner.values()[x]);
    return FuncTable(inner.field_ptr(), std::move(out));
}

FuncTable table_trace_scaled(const FuncTable& f, Elt gamma) {
    const Field& F = f.field();
    std::vector<Elt> out(F.q());
    for (std::uint32_t x = 0; x < F.q(); ++x) out[x] = F.mul(gamma, Elt{F.trace(f.values()[x])});
    return FuncTable(f.field_ptr(), std::move(out));
}

FuncTable lift_pary(const FieldPtr& field, std::span<const std::uint32_t> values) {
    if (values.size() != field->q()) throw SpecError("p-ary table length differs from field size");
    std::vector<Elt> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] >= field->p()) throw SpecError("p-ary value out of range [0, p)");
        out[i] = Elt{values[i]};
    }
    return FuncTable(field, std::move(out));
}

std::string table_to_csv(const FuncTable& t) {
    std::ostringstream out;
    out << "index,value\n";
    for (std::size_t i = 0; i < t.values().size(); ++i) out << i << "," << t.values()[i].index << "\n";
    return out.str();
}

FuncTable table_from_csv(const FieldPtr& field, const std::string& csv) {
    std::vector<Elt> values(field->q());
    std::vector<bool> seen(field->q(), false);
    std::istringstream in(csv);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line == "index,value") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw SpecError("CSV row without comma: " + line);
        std::uint64_t idx = 0, val = 0;
        try {
            idx = std::stoull(line.substr(0, comma));
            val = std::stoull(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw SpecError("CSV row is not numeric: " + line);
        }
        if (idx >= field->q() || val >= field->q()) throw SpecError("CSV entry out of range: " + line);
        if (seen[idx]) throw SpecError("duplicate CSV index " + std::to_string(idx));
        seen[idx] = true;
        values[idx] = Elt{static_cast<std::uint32_t>(val)};
        ++rows;
    }
    if (rows != field->q()) throw SpecError("CSV has " + std::to_string(rows) + " rows, expected " + std::to_string(field->q()));
    auto spec = FunctionSpec::table(values);
    return FuncTable(field, std::move(values), std::move(spec));
}

}  // namespace cdulab
