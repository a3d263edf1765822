#include "hvlab/angle_expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

#include "hvlab/angles.hpp"
#include "hvlab/errors.hpp"

namespace hvlab {

namespace {

// expr   := term  { ('+' | '-') term }
// term   := unary { ('*' | '/') unary }
// unary  := [ '+' | '-' ] primary
// primary:= number | "pi" | '(' expr ')'
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    double parse() {
        const double value = expr();
        skip_space();
        if (pos_ != text_.size())
            throw ConfigError("angle: trailing input at '" + rest() + "'");
        return value;
    }

private:
    double expr() {
        double value = term();
        for (;;) {
            skip_space();
            if (accept('+'))
                value += term();
            else if (accept('-'))
                value -= term();
            else
                return value;
        }
    }

    double term() {
        double value = unary();
        for (;;) {
            skip_space();
            if (accept('*')) {
                value *= unary();
            } else if (accept('/')) {
                const double denom = unary();
                if (denom == 0.0) throw ConfigError("angle: division by zero");
                value /= denom;
            } else {
                return value;
            }
        }
    }

    double unary() {
        skip_space();
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return primary();
    }

    double primary() {
        skip_space();
        if (pos_ >= text_.size()) throw ConfigError("angle: unexpected end of expression");
        const char head = text_[pos_];
        if (head == '(') {
            ++pos_;
            const double value = expr();
            skip_space();
            if (!accept(')')) throw ConfigError("angle: missing ')'");
            return value;
        }
        if (head == 'p' || head == 'P') {
            if (pos_ + 1 < text_.size() && (text_[pos_ + 1] == 'i' || text_[pos_ + 1] == 'I')) {
                pos_ += 2;
                return kPi;
            }
            throw ConfigError("angle: unknown symbol at '" + rest() + "'");
        }
        if (std::isdigit(static_cast<unsigned char>(head)) || head == '.') return number();
        throw ConfigError("angle: unexpected character at '" + rest() + "'");
    }

    double number() {
        std::size_t end = pos_;
        while (end < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.'))
            ++end;
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
            std::size_t exp = end + 1;
            if (exp < text_.size() && (text_[exp] == '+' || text_[exp] == '-')) ++exp;
            if (exp < text_.size() && std::isdigit(static_cast<unsigned char>(text_[exp]))) {
                ++exp;
                while (exp < text_.size() && std::isdigit(static_cast<unsigned char>(text_[exp])))
                    ++exp;
                end = exp;
            }
        }
        const std::string token(text_.substr(pos_, end - pos_));
        char* parsed_end = nullptr;
        const double value = std::strtod(token.c_str(), &parsed_end);
        if (parsed_end == token.c_str() || *parsed_end != '\0')
            throw ConfigError("angle: bad number '" + token + "'");
        pos_ = end;
        return value;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char ch) {
        if (pos_ < text_.size() && text_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string rest() const { return std::string(text_.substr(pos_)); }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

double parse_angle_expr(std::string_view text) {
    Parser parser(text);
    return parser.parse();
}

std::vector<double> parse_angle_grid(std::string_view text) {
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (first == std::string_view::npos || second == std::string_view::npos ||
        text.find(':', second + 1) != std::string_view::npos)
        throw ConfigError("grid: expected start:stop:step");

    const double start = parse_angle_expr(text.substr(0, first));
    const double stop = parse_angle_expr(text.substr(first + 1, second - first - 1));
    const double step = parse_angle_expr(text.substr(second + 1));
    if (!(step > 0.0)) throw ConfigError("grid: step must be > 0");
    if (stop < start) throw ConfigError("grid: stop must be >= start");

    const double raw_count = (stop - start) / step;
    const double rounded = std::round(raw_count);
    if (std::abs(raw_count - rounded) > 1e-9 * std::max(1.0, std::abs(raw_count)))
        throw ConfigError("grid: step does not divide the range");

    const auto count = static_cast<std::size_t>(rounded) + 1;
    std::vector<double> grid(count);
    for (std::size_t k = 0; k < count; ++k) grid[k] = start + static_cast<double>(k) * step;
    return grid;
}

}  // namespace hvlab
