#pragma once

#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "weyl/expr.hpp"

namespace weyl {

/// Real potential q(x) on [0, domain_end).
class PotentialSpec {
public:
    struct Zero {};
    /// q = depth on [0, width), 0 beyond.
    struct SquareWell {
        double depth;
        double width;
    };
    /// Piecewise-linear through (nodes, values), constant beyond the ends.
    struct SampledTable {
        std::vector<double> nodes;
        std::vector<double> values;
    };
    struct Expression {
        PotentialExpr expr;
        // probed once at construction
        double tail = 0.0;
        double tail_spread = 0.0;  // |q(400) - q(800)|
        double tail_start = 0.0;
    };
    using Kind = std::variant<Zero, SquareWell, SampledTable, Expression>;

    static PotentialSpec zero(double domain_end = kInfinity);
    static PotentialSpec square_well(double depth, double width, double domain_end = kInfinity);
    static PotentialSpec sampled_table(std::vector<double> nodes, std::vector<double> values,
                                       double domain_end = kInfinity);
    static PotentialSpec expression(std::string_view source, double domain_end = kInfinity);

    double operator()(double x) const;

    const Kind& kind() const noexcept { return kind_; }
    double domain_end() const noexcept { return domain_end_; }
    std::string kind_name() const;

    /// Points where q has a jump or kink; integrators split their span here.
    std::vector<double> breakpoints() const;

    /// The point beyond which q is exactly constant, if known.
    std::optional<double> support_end() const;

    /// Constant value q takes at infinity. Expressions are probed far out and
    /// must have settled to ~1e-12; otherwise this throws AccuracyError.
    double tail_value() const;

    /// Point beyond which |q - tail_value()| <= 1e-13 (expressions: probed on
    /// a 0.5-spaced grid up to 200; 200 means the tail was not reached).
    double tail_start() const;

    static constexpr double kInfinity = std::numeric_limits<double>::infinity();

private:
    PotentialSpec(Kind k, double end);
    Kind kind_;
    double domain_end_;
};

}  // namespace weyl
