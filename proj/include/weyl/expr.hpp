#pragma once

// Arithmetic expressions in one real variable `x`, used to specify potentials.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          (right associative)
//   primary := number | 'x' | func '(' expr ')' | '(' expr ')'
//   func    := exp | sin | cos | sqrt | abs

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace weyl {

class PotentialExpr {
public:
    enum class Op { number, variable, neg, add, sub, mul, div, pow, exp, sin, cos, sqrt, abs };

    struct Node {
        Op op;
        double value = 0.0;  // number literal
        int lhs = -1;
        int rhs = -1;
    };

    /// Throws ParseError carrying line/column of the offending token and the
    /// set of tokens that would have been accepted there.
    static PotentialExpr parse(std::string_view source);

    double operator()(double x) const;
    const std::string& source() const noexcept { return source_; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    int root() const noexcept { return root_; }

private:
    std::string source_;
    std::vector<Node> nodes_;
    int root_ = -1;

    friend class ExprParser;
};

PotentialExpr parse_potential(std::string_view source);

}  // namespace weyl
