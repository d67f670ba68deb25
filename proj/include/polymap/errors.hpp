#pragma once

#include <stdexcept>
#include <string>

namespace polymap {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The map is affine (or worse): there is no quadratic-or-higher term to analyze.
struct DegenerateMap : Error {
    using Error::Error;
};

/// The fixed-points polynomial has non-real roots; carries how many conjugate pairs.
struct ComplexFixedPoints : Error {
    int pair_count;
    explicit ComplexFixedPoints(int pairs)
        : Error("fixed-points polynomial has " + std::to_string(pairs) +
                " complex conjugate root pair(s); map has no canonical form over the reals"),
          pair_count(pairs) {}
};

struct BadAnchor : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

/// Root iteration exhausted its budget; carries the best residual reached.
struct NonConvergence : Error {
    double best_residual;
    explicit NonConvergence(double residual)
        : Error("root iteration did not converge; best residual " + std::to_string(residual)),
          best_residual(residual) {}
};

struct NotACycle : Error {
    using Error::Error;
};

struct UnsupportedDegree : Error {
    using Error::Error;
};

/// Parse failure in a parameter expression; carries byte offset and what was expected.
struct SyntaxError : Error {
    std::size_t position;
    std::string expected;
    SyntaxError(std::size_t pos, const std::string& what_expected)
        : Error("syntax error at byte " + std::to_string(pos) + ": expected " + what_expected),
          position(pos),
          expected(what_expected) {}
};

/// A parameter expression hit a domain error (sqrt of a negative, division by zero, ...).
struct PoisonedExpression : Error {
    double lambda;
    int expr_index;
    PoisonedExpression(double lam, int index, const std::string& reason)
        : Error("expression " + std::to_string(index) + " poisoned at lambda=" +
                std::to_string(lam) + ": " + reason),
          lambda(lam),
          expr_index(index) {}
};

struct UnknownPreset : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct TailTooShort : Error {
    using Error::Error;
};

struct BracketInvalid : Error {
    using Error::Error;
};

struct DegenerateGap : Error {
    using Error::Error;
};

}  // namespace polymap
