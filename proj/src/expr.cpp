#include "weyl/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "weyl/errors.hpp"

namespace weyl {

class ExprParser {
public:
    explicit ExprParser(std::string_view src) : src_(src) {}

    PotentialExpr run() {
        PotentialExpr e;
        e.source_ = std::string(src_);
        out_ = &e;
        skip_ws();
        e.root_ = expr();
        skip_ws();
        if (pos_ < src_.size()) fail(pos_, "unexpected '" + std::string(1, src_[pos_]) + "'",
                                     "{'+', '-', '*', '/', '^', end of input}");
        return e;
    }

private:
    std::string_view src_;
    size_t pos_ = 0;
    PotentialExpr* out_ = nullptr;

    static constexpr const char* kOperandSet = "{number, 'x', exp, sin, cos, sqrt, abs, '('}";

    [[noreturn]] void fail(size_t at, const std::string& what, const std::string& expected) const {
        int line = 1, col = 1;
        for (size_t i = 0; i < at && i < src_.size(); ++i) {
            if (src_[i] == '\n')
                ++line, col = 1;
            else
                ++col;
        }
        std::ostringstream os;
        os << "parse error at line " << line << ", column " << col << ": " << what << "; expected one of "
           << expected;
        throw ParseError(os.str(), line, col);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    int add(PotentialExpr::Op op, int lhs = -1, int rhs = -1, double value = 0.0) {
        out_->nodes_.push_back({op, value, lhs, rhs});
        return static_cast<int>(out_->nodes_.size()) - 1;
    }

    int expr() {
        int lhs = term();
        while (true) {
            if (peek('+') || peek('-')) {
                const size_t op_pos = pos_;
                const auto op = src_[pos_++] == '+' ? PotentialExpr::Op::add : PotentialExpr::Op::sub;
                lhs = add(op, lhs, operand(op_pos, &ExprParser::term));
            } else {
                return lhs;
            }
        }
    }

    int term() {
        int lhs = unary();
        while (true) {
            if (peek('*') || peek('/')) {
                const size_t op_pos = pos_;
                const auto op = src_[pos_++] == '*' ? PotentialExpr::Op::mul : PotentialExpr::Op::div;
                lhs = add(op, lhs, operand(op_pos, &ExprParser::unary));
            } else {
                return lhs;
            }
        }
    }

    int unary() {
        if (peek('-')) {
            const size_t op_pos = pos_++;
            return add(PotentialExpr::Op::neg, operand(op_pos, &ExprParser::unary));
        }
        return power();
    }

    int power() {
        const int base = primary();
        if (peek('^')) {
            const size_t op_pos = pos_++;
            return add(PotentialExpr::Op::pow, base, operand(op_pos, &ExprParser::unary));
        }
        return base;
    }

    // Parses the operand of the operator at `op_pos`; a missing operand is
    // reported at the operator.
    int operand(size_t op_pos, int (ExprParser::*rule)()) {
        skip_ws();
        if (pos_ >= src_.size())
            fail(op_pos, "operator '" + std::string(1, src_[op_pos]) + "' is missing its operand", kOperandSet);
        return (this->*rule)();
    }

    int primary() {
        skip_ws();
        if (pos_ >= src_.size()) fail(pos_, "unexpected end of input", kOperandSet);
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '(') {
            const size_t open = pos_++;
            const int inner = expr();
            if (!peek(')')) fail(pos_ < src_.size() ? pos_ : open, "unbalanced '('", "{')'}");
            ++pos_;
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const size_t start = pos_;
            while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            const std::string_view name = src_.substr(start, pos_ - start);
            if (name == "x") return add(PotentialExpr::Op::variable);
            PotentialExpr::Op fn;
            if (name == "exp")
                fn = PotentialExpr::Op::exp;
            else if (name == "sin")
                fn = PotentialExpr::Op::sin;
            else if (name == "cos")
                fn = PotentialExpr::Op::cos;
            else if (name == "sqrt")
                fn = PotentialExpr::Op::sqrt;
            else if (name == "abs")
                fn = PotentialExpr::Op::abs;
            else
                fail(start, "unknown identifier '" + std::string(name) + "'", kOperandSet);
            if (!peek('(')) fail(pos_, "function call needs '('", "{'('}");
            const size_t open = pos_++;
            const int arg = expr();
            if (!peek(')')) fail(pos_ < src_.size() ? pos_ : open, "unbalanced '('", "{')'}");
            ++pos_;
            return add(fn, arg);
        }
        fail(pos_, "unexpected '" + std::string(1, c) + "'", kOperandSet);
    }

    int number() {
        const size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
            ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
                pos_ = p;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            }
        }
        double v = 0;
        const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
        if (ec != std::errc{} || ptr != src_.data() + pos_) fail(start, "malformed number", "{number}");
        return add(PotentialExpr::Op::number, -1, -1, v);
    }
};

PotentialExpr PotentialExpr::parse(std::string_view source) { return ExprParser(source).run(); }

PotentialExpr parse_potential(std::string_view source) { return PotentialExpr::parse(source); }

namespace {

double eval_node(const std::vector<PotentialExpr::Node>& nodes, int i, double x) {
    const auto& n = nodes[i];
    using Op = PotentialExpr::Op;
    switch (n.op) {
        case Op::number: return n.value;
        case Op::variable: return x;
        case Op::neg: return -eval_node(nodes, n.lhs, x);
        case Op::add: return eval_node(nodes, n.lhs, x) + eval_node(nodes, n.rhs, x);
        case Op::sub: return eval_node(nodes, n.lhs, x) - eval_node(nodes, n.rhs, x);
        case Op::mul: return eval_node(nodes, n.lhs, x) * eval_node(nodes, n.rhs, x);
        case Op::div: return eval_node(nodes, n.lhs, x) / eval_node(nodes, n.rhs, x);
        case Op::pow: return std::pow(eval_node(nodes, n.lhs, x), eval_node(nodes, n.rhs, x));
        case Op::exp: return std::exp(eval_node(nodes, n.lhs, x));
        case Op::sin: return std::sin(eval_node(nodes, n.lhs, x));
        case Op::cos: return std::cos(eval_node(nodes, n.lhs, x));
        case Op::sqrt: return std::sqrt(eval_node(nodes, n.lhs, x));
        case Op::abs: return std::abs(eval_node(nodes, n.lhs, x));
    }
    return std::nan("");
}

}  // namespace

double PotentialExpr::operator()(double x) const { return eval_node(nodes_, root_, x); }

}  // namespace weyl
