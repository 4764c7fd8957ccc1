#include "cdulab/expr.hpp"

#include <cctype>
#include <functional>
#include <vector>

namespace cdulab {

namespace {

using Eval = std::function<Elt(Elt)>;

class Parser {
public:
    Parser(const Field& F, std::string text) : F_(F), s_(std::move(text)) {}

    Eval parse_all() {
        auto e = expr();
        skip();
        if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

    Elt element_only() {
        skip();
        Elt v;
        if (peek() == '-') {
            ++pos_;
            v = F_.neg(constant_atom());
        } else {
            v = constant_atom();
        }
        skip();
        if (pos_ != s_.size()) error("trailing characters in element");
        return v;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        throw ExprError(what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(const std::string& tok) {
        skip();
        if (s_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    void expect(char ch) {
        if (peek() != ch) error(std::string("expected '") + ch + "'");
        ++pos_;
    }

    std::int64_t integer() {
        skip();
        const std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(s_[start])))) {
            error("expected an integer");
        }
        try {
            return std::stoll(s_.substr(start, pos_ - start));
        } catch (const std::out_of_range&) {
            error("integer out of range");
        }
    }

    Elt coefficient_vector() {
        expect('[');
        std::vector<std::uint32_t> coeffs;
        if (peek() != ']') {
            do {
                const auto v = integer();
                if (v < 0 || v >= static_cast<std::int64_t>(F_.p())) error("coefficient out of range [0, p)");
                coeffs.push_back(static_cast<std::uint32_t>(v));
            } while (accept(","));
        }
        expect(']');
        if (coeffs.size() > F_.n()) error("more than n coefficients");
        return F_.from_coeffs(coeffs);
    }

    Elt constant_atom() {
        const char ch = peek();
        if (ch == '[') return coefficient_vector();
        if (ch == 'a') {
            ++pos_;
            if (accept("^")) return F_.exp(static_cast<std::uint64_t>(((integer() % F_.group_order()) + F_.group_order()) %
                                                                       F_.group_order()));
            return F_.generator();
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) return F_.from_int(integer());
        error("expected an element");
    }

    Eval expr() {
        bool negate = false;
        if (peek() == '-') {
            ++pos_;
            negate = true;
        }
        Eval acc = term();
        if (negate) acc = [&F = F_, t = acc](Elt x) { return F.neg(t(x)); };
        for (;;) {
            const char ch = peek();
            if (ch != '+' && ch != '-') return acc;
            ++pos_;
            Eval rhs = term();
            if (ch == '+') {
                acc = [&F = F_, l = acc, r = rhs](Elt x) { return F.add(l(x), r(x)); };
            } else {
                acc = [&F = F_, l = acc, r = rhs](Elt x) { return F.sub(l(x), r(x)); };
            }
        }
    }

    Eval term() {
        Eval acc = factor();
        while (peek() == '*') {
            ++pos_;
            Eval rhs = factor();
            acc = [&F = F_, l = acc, r = rhs](Elt x) { return F.mul(l(x), r(x)); };
        }
        return acc;
    }

    Eval factor() {
        Eval base = atom();
        if (peek() == '^') {
            ++pos_;
            const auto d = integer();
            if (d < 0) error("negative exponents are not supported");
            return [&F = F_, b = base, d](Elt x) { return F.pow(b(x), d); };
        }
        return base;
    }

    Eval atom() {
        const char ch = peek();
        if (ch == '(') {
            ++pos_;
            Eval e = expr();
            expect(')');
            return e;
        }
        if (accept("Tr(")) {
            Eval e = expr();
            expect(')');
            return [&F = F_, inner = e](Elt x) { return Elt{F.trace(inner(x))}; };
        }
        if (ch == 'x') {
            ++pos_;
            return [](Elt x) { return x; };
        }
        const Elt v = constant_atom();
        return [v](Elt) { return v; };
    }

    const Field& F_;
    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace

Elt parse_element(const Field& F, const std::string& text) { return Parser(F, text).element_only(); }

FuncTable parse_function(const FieldPtr& field, const std::string& text) {
    const Field& F = *field;
    const Eval f = Parser(F, text).parse_all();
    std::vector<Elt> values(F.q());
    for (std::uint32_t x = 0; x < F.q(); ++x) values[x] = f(Elt{x});
    return FuncTable(field, std::move(values));
}

}  // namespace cdulab
