#ifndef WEIER_CORE_ERRORS_HPP
#define WEIER_CORE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace weier
{

// Every domain failure carries one of these codes. The CLI maps each code to
// its own process exit status, so the numeric values are part of the
// external interface and must not be reordered.
enum class errc : int {
    invalid_argument = 10,
    zero_polynomial = 11,
    not_square_free = 12,
    context_mismatch = 13,
    zero_division = 14,
    not_invertible = 15,
    not_smooth = 16,
    multiple_roots = 17,
    degree_drop = 18,
    vertical_tangent = 19,
    same_abscissa = 20,
    point_not_on_curve = 21,
    inconsistent = 22,
    higher_order_pole = 23,
    evaluation_at_pole = 24,
    degenerate_points = 25,
    syntax_error = 26,
    unknown_variable = 27,
    irrational_abscissa = 28,
    verification_failed = 29,
    internal = 30,
};

constexpr std::string_view errc_name(errc c) noexcept
{
    switch (c) {
        case errc::invalid_argument: return "InvalidArgument";
        case errc::zero_polynomial: return "ZeroPolynomial";
        case errc::not_square_free: return "NotSquareFree";
        case errc::context_mismatch: return "ContextMismatch";
        case errc::zero_division: return "ZeroDivision";
        case errc::not_invertible: return "NotInvertible";
        case errc::not_smooth: return "NotSmooth";
        case errc::multiple_roots: return "MultipleRoots";
        case errc::degree_drop: return "DegreeDrop";
        case errc::vertical_tangent: return "VerticalTangent";
        case errc::same_abscissa: return "SameAbscissa";
        case errc::point_not_on_curve: return "PointNotOnCurve";
        case errc::inconsistent: return "Inconsistent";
        case errc::higher_order_pole: return "HigherOrderPole";
        case errc::evaluation_at_pole: return "EvaluationAtPole";
        case errc::degenerate_points: return "DegeneratePoints";
        case errc::syntax_error: return "SyntaxError";
        case errc::unknown_variable: return "UnknownVariable";
        case errc::irrational_abscissa: return "IrrationalAbscissaUnsupported";
        case errc::verification_failed: return "VerificationFailed";
        case errc::internal: return "InternalError";
    }
    return "Unknown";
}

class error : public std::runtime_error
{
public:
    error(errc code, const std::string &what) : std::runtime_error(what), code_(code) {}

    errc code() const noexcept
    {
        return code_;
    }
    std::string_view name() const noexcept
    {
        return errc_name(code_);
    }

private:
    errc code_;
};

// Parser failures remember the byte offset into the input text.
class syntax_error : public error
{
public:
    syntax_error(const std::string &what, std::size_t position)
        : error(errc::syntax_error, what + " at position " + std::to_string(position)), position_(position)
    {
    }

    std::size_t position() const noexcept
    {
        return position_;
    }

private:
    std::size_t position_;
};

[[noreturn]] inline void raise(errc code, const std::string &what)
{
    throw error(code, what);
}

} // namespace weier

#endif
