#pragma once

#include <functional>
#include <string>

namespace psesk {

// Parses a real function of x. Grammar: + - * / ^, unary minus, parentheses,
// numeric literals, the variable x and the functions sech, tanh, exp.
std::function<double(double)> parse_expression(const std::string& text);

}  // namespace psesk
