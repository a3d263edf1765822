#pragma once

#include <string_view>
#include <vector>

namespace hvlab {

/// Evaluates a small angle expression: decimal numbers, `pi`, the operators
/// + - * /, unary sign and parentheses. "pi/8", "3*pi/8" and "0.5" all work.
/// Throws ConfigError on malformed input.
double parse_angle_expr(std::string_view text);

/// Parses "start:stop:step" (each part an angle expression) into an
/// inclusive grid; the step must divide the range to within 1e-9.
std::vector<double> parse_angle_grid(std::string_view text);

}  // namespace hvlab
