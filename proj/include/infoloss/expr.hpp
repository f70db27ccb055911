#ifndef INFOLOSS_EXPR_HPP
#define INFOLOSS_EXPR_HPP

#include <functional>
#include <string>

namespace infoloss {

/// Compiles a single-variable arithmetic expression in x into a callable.
/// Grammar: + - * / ^ (right associative), parentheses, unary minus, number
/// literals, the variable x, constants pi and e, and the functions
/// sin cos tan exp log sqrt abs cbrt tanh. Throws InvalidInputError on
/// malformed input.
std::function<double(double)> compile_expression(const std::string& text);

} // namespace infoloss

#endif
