#pragma once

#include <memory>
#include <string>

namespace polymap {

/// Parsed parametrization expression over the single variable `lambda`.
/// Supports + - * / ^ (right-associative, binding tighter than unary minus),
/// parentheses, the constants pi and e, and sin/cos/exp/sqrt/abs.
/// Immutable; copies share the tree.
class ParamExpr {
  public:
    struct Node;

    /// Outcome of evaluation. Domain errors (sqrt of a negative, division by
    /// zero, non-finite results) poison the value instead of propagating NaN.
    struct Result {
        bool ok;
        double value;
        std::string reason;  // set when poisoned
    };

    ParamExpr() = default;

    /// Throws SyntaxError with byte offset and expected-token set.
    static ParamExpr parse(const std::string& text);

    Result eval(double lambda) const;
    /// Throws PoisonedExpression (tagged with expr_index) on a domain error.
    double eval_or_throw(double lambda, int expr_index = 0) const;

    /// Deterministic fully-parenthesized rendering; reparses to an
    /// equivalent expression.
    std::string pretty() const;

    bool valid() const { return root_ != nullptr; }

  private:
    explicit ParamExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;
};

inline ParamExpr parse_param_expr(const std::string& text) { return ParamExpr::parse(text); }

}  // namespace polymap
