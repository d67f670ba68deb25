#include "polymap/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <vector>

#include "polymap/errors.hpp"

namespace polymap {

struct ParamExpr::Node {
    enum class Op { Number, Lambda, Pi, E, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Sqrt, Abs };
    Op op;
    double number = 0.0;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = ParamExpr::Node;
using Op = Node::Op;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>();
    n->op = Op::Number;
    n->number = v;
    return n;
}

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    NodePtr run() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("end of input or an operator");
        return e;
    }

  private:
    const std::string& text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& expected) { throw SyntaxError(pos_, expected); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (eat('+')) {
                lhs = make(Op::Add, lhs, term());
            } else if (eat('-')) {
                lhs = make(Op::Sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (eat('*')) {
                lhs = make(Op::Mul, lhs, unary());
            } else if (eat('/')) {
                lhs = make(Op::Div, lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    // Unary minus binds looser than '^': -2^2 is -(2^2).
    NodePtr unary() {
        if (eat('-')) return make(Op::Neg, unary());
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (eat('^')) return make(Op::Pow, base, unary());
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("a number, name, or '('");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!eat(')')) fail("')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
        fail("a number, name, or '('");
    }

    NodePtr number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        // Exponent suffix only when it actually parses as one, so "2e" stays
        // "2 * euler" territory for the caller to reject as a trailing name.
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t probe = pos_ + 1;
            if (probe < text_.size() && (text_[probe] == '+' || text_[probe] == '-')) ++probe;
            if (probe < text_.size() && std::isdigit(static_cast<unsigned char>(text_[probe]))) {
                pos_ = probe;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            }
        }
        const std::string tok = text_.substr(start, pos_ - start);
        if (tok == ".") {
            pos_ = start;
            fail("a number");
        }
        return make_number(std::strtod(tok.c_str(), nullptr));
    }

    NodePtr name() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string id = text_.substr(start, pos_ - start);
        if (id == "lambda") return make(Op::Lambda);
        if (id == "pi") return make(Op::Pi);
        if (id == "e") return make(Op::E);
        Op fn;
        if (id == "sin") fn = Op::Sin;
        else if (id == "cos") fn = Op::Cos;
        else if (id == "exp") fn = Op::Exp;
        else if (id == "sqrt") fn = Op::Sqrt;
        else if (id == "abs") fn = Op::Abs;
        else {
            pos_ = start;
            fail("one of lambda, pi, e, sin, cos, exp, sqrt, abs");
        }
        if (!eat('(')) fail("'(' after function name");
        NodePtr arg = expr();
        if (!eat(')')) fail("')'");
        return make(fn, arg);
    }
};

struct EvalError {
    const char* reason;
};

double eval_node(const Node& n, double lambda) {
    switch (n.op) {
        case Op::Number: return n.number;
        case Op::Lambda: return lambda;
        case Op::Pi: return std::numbers::pi;
        case Op::E: return std::numbers::e;
        case Op::Neg: return -eval_node(*n.lhs, lambda);
        case Op::Add: return eval_node(*n.lhs, lambda) + eval_node(*n.rhs, lambda);
        case Op::Sub: return eval_node(*n.lhs, lambda) - eval_node(*n.rhs, lambda);
        case Op::Mul: return eval_node(*n.lhs, lambda) * eval_node(*n.rhs, lambda);
        case Op::Div: {
            const double a = eval_node(*n.lhs, lambda);
            const double b = eval_node(*n.rhs, lambda);
            if (b == 0.0) throw EvalError{"division by zero"};
            return a / b;
        }
        case Op::Pow: {
            const double a = eval_node(*n.lhs, lambda);
            const double b = eval_node(*n.rhs, lambda);
            const double v = std::pow(a, b);
            if (!std::isfinite(v)) throw EvalError{"power produced a non-finite value"};
            return v;
        }
        case Op::Sin: return std::sin(eval_node(*n.lhs, lambda));
        case Op::Cos: return std::cos(eval_node(*n.lhs, lambda));
        case Op::Exp: {
            const double v = std::exp(eval_node(*n.lhs, lambda));
            if (!std::isfinite(v)) throw EvalError{"exp overflow"};
            return v;
        }
        case Op::Sqrt: {
            const double a = eval_node(*n.lhs, lambda);
            if (a < 0.0) throw EvalError{"sqrt of a negative argument"};
            return std::sqrt(a);
        }
        case Op::Abs: return std::abs(eval_node(*n.lhs, lambda));
    }
    throw EvalError{"corrupt expression"};
}

void print_node(const Node& n, std::ostream& os) {
    switch (n.op) {
        case Op::Number: {
            std::ostringstream tmp;
            tmp.precision(17);
            tmp << n.number;
            os << tmp.str();
            return;
        }
        case Op::Lambda: os << "lambda"; return;
        case Op::Pi: os << "pi"; return;
        case Op::E: os << "e"; return;
        case Op::Neg:
            os << "(-";
            print_node(*n.lhs, os);
            os << ")";
            return;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div:
        case Op::Pow: {
            const char* sym = n.op == Op::Add ? "+" : n.op == Op::Sub ? "-" : n.op == Op::Mul ? "*" : n.op == Op::Div ? "/" : "^";
            os << "(";
            print_node(*n.lhs, os);
            os << sym;
            print_node(*n.rhs, os);
            os << ")";
            return;
        }
        case Op::Sin:
        case Op::Cos:
        case Op::Exp:
        case Op::Sqrt:
        case Op::Abs: {
            const char* fn = n.op == Op::Sin ? "sin" : n.op == Op::Cos ? "cos" : n.op == Op::Exp ? "exp" : n.op == Op::Sqrt ? "sqrt" : "abs";
            os << fn << "(";
            print_node(*n.lhs, os);
            os << ")";
            return;
        }
    }
}

}  // namespace

ParamExpr ParamExpr::parse(const std::string& text) {
    Parser p(text);
    return ParamExpr(p.run());
}

ParamExpr::Result ParamExpr::eval(double lambda) const {
    if (!root_) return {false, 0.0, "empty expression"};
    try {
        const double v = eval_node(*root_, lambda);
        if (!std::isfinite(v)) return {false, v, "non-finite result"};
        return {true, v, {}};
    } catch (const EvalError& e) {
        return {false, std::nan(""), e.reason};
    }
}

double ParamExpr::eval_or_throw(double lambda, int expr_index) const {
    Result r = eval(lambda);
    if (!r.ok) throw PoisonedExpression(lambda, expr_index, r.reason);
    return r.value;
}

std::string ParamExpr::pretty() const {
    if (!root_) return "";
    std::ostringstream os;
    print_node(*root_, os);
    return os.str();
}

}  // namespace polymap
