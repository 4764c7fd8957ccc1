#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "cdulab/field.hpp"
#include "cdulab/function.hpp"

namespace cdulab {

class ExprError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses an element: an integer (taken mod p), "a" or "a^k" for powers of
/// the primitive root, or a coefficient vector "[c0,c1,...]".
Elt parse_element(const Field& F, const std::string& text);

/// Evaluates a function expression pointwise. Grammar:
///
///   expr   := ['-'] term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' integer)?
///   atom   := 'x' | 'a' | integer | '[' coeffs ']' | 'Tr(' expr ')' | '(' expr ')'
///
/// "a" is the primitive root, Tr is the absolute trace embedded into the
/// field, and 0^0 = 1. Examples: "x^3", "x^3 + x^4", "x^9 + a*Tr(x^3)".
FuncTable parse_function(const FieldPtr& field, const std::string& text);

}  // namespace cdulab
