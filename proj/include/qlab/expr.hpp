#pragma once

#include <functional>
#include <string>

namespace qlab {

/// Parses an arithmetic expression in the single variable x.
/// Grammar: numbers, x, + - * / ^ (right-associative), unary minus,
/// parentheses. Throws DomainError with the offending position.
std::function<double(double)> parse_expression(const std::string& text);

}  // namespace qlab
