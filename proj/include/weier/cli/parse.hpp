#ifndef WEIER_CLI_PARSE_HPP
#define WEIER_CLI_PARSE_HPP

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include <weier/core/bpoly.hpp>
#include <weier/core/errors.hpp>
#include <weier/core/rational.hpp>

namespace weier
{

namespace detail
{

// Recursive descent over
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' integer)?
//   primary := integer ('/' integer)? | 'x' | 'y' | '(' expr ')'
// Juxtaposition is rejected, so "2xy" is an error rather than 2*x*y.
class PolyParser
{
public:
    explicit PolyParser(std::string_view text) : s_(text) {}

    BPoly parse()
    {
        skip();
        if (pos_ == s_.size()) {
            throw syntax_error("empty expression", pos_);
        }
        BPoly p = expr();
        if (pos_ != s_.size()) {
            unexpected();
        }
        return p;
    }

private:
    static constexpr unsigned max_exponent = 1000;

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }
    bool at(char c)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    [[noreturn]] void unexpected()
    {
        if (pos_ >= s_.size()) {
            throw syntax_error("unexpected end of input", pos_);
        }
        const char c = s_[pos_];
        if (c == '.') {
            throw syntax_error("decimal point not allowed (use p/q)", pos_);
        }
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '(') {
            throw syntax_error("implicit multiplication is not allowed", pos_);
        }
        throw syntax_error(std::string("unexpected '") + c + "'", pos_);
    }

    BPoly expr()
    {
        BPoly acc = term();
        for (;;) {
            if (at('+')) {
                ++pos_;
                acc += term();
            } else if (at('-')) {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    BPoly term()
    {
        BPoly acc = unary();
        while (at('*')) {
            ++pos_;
            acc = acc * unary();
        }
        return acc;
    }

    BPoly unary()
    {
        if (at('-')) {
            ++pos_;
            return -unary();
        }
        if (at('+')) {
            ++pos_;
            return unary();
        }
        return power();
    }

    BPoly power()
    {
        BPoly base = primary();
        if (!at('^')) {
            return base;
        }
        ++pos_;
        skip();
        const std::size_t start = pos_;
        const std::string digits = integer_text();
        if (digits.empty()) {
            throw syntax_error("exponent must be a nonnegative integer", start);
        }
        if (digits.size() > 4 || std::stoul(digits) > max_exponent) {
            throw syntax_error("exponent too large", start);
        }
        BPoly out(Rational(1));
        for (unsigned long k = std::stoul(digits); k > 0; --k) {
            out = out * base;
        }
        return out;
    }

    std::string integer_text()
    {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
        return std::string(s_.substr(start, pos_ - start));
    }

    BPoly primary()
    {
        skip();
        if (pos_ >= s_.size()) {
            unexpected();
        }
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            BPoly inner = expr();
            if (!at(')')) {
                if (pos_ >= s_.size()) {
                    throw syntax_error("missing ')'", pos_);
                }
                unexpected();
            }
            ++pos_;
            after_operand();
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational q{Integer(integer_text())};
            if (pos_ < s_.size() && s_[pos_] == '/') {
                const std::size_t slash = pos_++;
                const std::string den = integer_text();
                if (den.empty()) {
                    throw syntax_error("'/' must be followed by an integer denominator", slash + 1);
                }
                const Integer d(den);
                if (d == 0) {
                    throw syntax_error("zero denominator", slash + 1);
                }
                q /= Rational(d);
            }
            after_operand();
            return BPoly(q);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                ++pos_;
            }
            const std::string_view name = s_.substr(start, pos_ - start);
            if (name == "x" || name == "y") {
                after_operand();
                return name == "x" ? BPoly::x() : BPoly::y();
            }
            if (name.find_first_not_of("xy0123456789") == std::string_view::npos) {
                throw syntax_error("implicit multiplication is not allowed", start + 1);
            }
            raise(errc::unknown_variable, "unknown variable '" + std::string(name) + "' at position " + std::to_string(start) + " (only x and y)");
        }
        unexpected();
    }

    // An operand may not be directly followed by another operand.
    void after_operand()
    {
        skip();
        if (pos_ < s_.size()) {
            const char c = s_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '.' || c == '_') {
                unexpected();
            }
        }
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline BPoly parse_poly(std::string_view text)
{
    return detail::PolyParser(text).parse();
}

// Abscissas must be rational literals; anything algebraic is out of scope.
inline Rational parse_abscissa(std::string_view text)
{
    std::size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) {
        --e;
    }
    const std::string_view t = text.substr(b, e - b);
    if (t.find('.') != std::string_view::npos) {
        throw syntax_error("decimal point not allowed (use p/q)", b + t.find('.'));
    }
    const bool literal = !t.empty() && t.find_first_not_of("+-0123456789/") == std::string_view::npos;
    if (!literal) {
        raise(errc::irrational_abscissa, "abscissa '" + std::string(t) + "' is not a rational literal; only rational abscissas are supported");
    }
    return parse_rational(t);
}

} // namespace weier

#endif
