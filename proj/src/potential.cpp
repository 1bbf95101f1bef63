#include "weyl/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "weyl/errors.hpp"

namespace weyl {

PotentialSpec::PotentialSpec(Kind k, double end) : kind_(std::move(k)), domain_end_(end) {
    if (!(domain_end_ > 0)) throw ContractError("potential: domain_end must be positive");
}

PotentialSpec PotentialSpec::zero(double domain_end) { return {Zero{}, domain_end}; }

PotentialSpec PotentialSpec::square_well(double depth, double width, double domain_end) {
    if (!(width > 0) || !std::isfinite(depth)) throw ContractError("square_well: width must be > 0");
    return {SquareWell{depth, width}, domain_end};
}

PotentialSpec PotentialSpec::sampled_table(std::vector<double> nodes, std::vector<double> values,
                                           double domain_end) {
    if (nodes.empty() || nodes.size() != values.size())
        throw ContractError("sampled_table: nodes and values must be non-empty and of equal length");
    for (size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1])) throw ContractError("sampled_table: nodes must be strictly increasing");
    for (double v : values)
        if (!std::isfinite(v)) throw ContractError("sampled_table: values must be finite");
    return {SampledTable{std::move(nodes), std::move(values)}, domain_end};
}

PotentialSpec PotentialSpec::expression(std::string_view source, double domain_end) {
    Expression ex{PotentialExpr::parse(source)};
    const double far = ex.expr(400.0), farther = ex.expr(800.0);
    ex.tail = farther;
    ex.tail_spread = std::isfinite(far) && std::isfinite(farther) ? std::abs(far - farther) : PotentialSpec::kInfinity;
    double last_bad = 0.0;
    for (double x = 0.0; x <= 200.0; x += 0.5)
        if (!(std::abs(ex.expr(x) - farther) <= 1e-13)) last_bad = x;
    ex.tail_start = std::min(200.0, last_bad + 0.5);
    PotentialSpec p{std::move(ex), domain_end};
    const double probe_end = std::isfinite(domain_end) ? domain_end : 50.0;
    for (int i = 0; i <= 64; ++i) {
        const double x = probe_end * i / 64.0;
        if (!std::isfinite(p(x))) {
            std::ostringstream os;
            os << "expression potential '" << source << "' is not finite at x = " << x;
            throw ContractError(os.str());
        }
    }
    return p;
}

double PotentialSpec::operator()(double x) const {
    struct Visitor {
        double x;
        double operator()(const Zero&) const { return 0.0; }
        double operator()(const SquareWell& w) const { return x < w.width ? w.depth : 0.0; }
        double operator()(const SampledTable& t) const {
            if (x <= t.nodes.front()) return t.values.front();
            if (x >= t.nodes.back()) return t.values.back();
            const auto it = std::upper_bound(t.nodes.begin(), t.nodes.end(), x);
            const size_t j = static_cast<size_t>(it - t.nodes.begin());
            const double s = (x - t.nodes[j - 1]) / (t.nodes[j] - t.nodes[j - 1]);
            return (1 - s) * t.values[j - 1] + s * t.values[j];
        }
        double operator()(const Expression& e) const { return e.expr(x); }
    };
    return std::visit(Visitor{x}, kind_);
}

std::string PotentialSpec::kind_name() const {
    struct Visitor {
        std::string operator()(const Zero&) const { return "zero"; }
        std::string operator()(const SquareWell&) const { return "square_well"; }
        std::string operator()(const SampledTable&) const { return "sampled_table"; }
        std::string operator()(const Expression&) const { return "expression"; }
    };
    return std::visit(Visitor{}, kind_);
}

std::vector<double> PotentialSpec::breakpoints() const {
    if (const auto* w = std::get_if<SquareWell>(&kind_)) return {w->width};
    if (const auto* t = std::get_if<SampledTable>(&kind_)) return t->nodes;
    return {};
}

std::optional<double> PotentialSpec::support_end() const {
    if (std::holds_alternative<Zero>(kind_)) return 0.0;
    if (const auto* w = std::get_if<SquareWell>(&kind_)) return w->width;
    if (const auto* t = std::get_if<SampledTable>(&kind_)) return std::max(0.0, t->nodes.back());
    return std::nullopt;
}

double PotentialSpec::tail_value() const {
    if (std::holds_alternative<Zero>(kind_) || std::holds_alternative<SquareWell>(kind_)) return 0.0;
    if (const auto* t = std::get_if<SampledTable>(&kind_)) return t->values.back();
    const auto& e = std::get<Expression>(kind_);
    if (!(e.tail_spread <= 1e-9 * (1 + std::abs(e.tail)))) {
        std::ostringstream os;
        os << "expression potential '" << e.expr.source() << "' has no constant tail (|q(400) - q(800)| = "
           << e.tail_spread << ")";
        throw AccuracyError(os.str(), e.tail_spread);
    }
    return e.tail;
}

double PotentialSpec::tail_start() const {
    if (const auto s = support_end()) return *s;
    return std::get<Expression>(kind_).tail_start;
}

}  // namespace weyl
