#include "weyl/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "weyl/errors.hpp"
#include "weyl/oracle.hpp"
#include "weyl/specfun.hpp"

namespace weyl {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_beta(double beta, const char* who) {
    if (!(beta > 0.5 && beta < 1.0)) {
        std::ostringstream os;
        os << who << ": beta = " << beta << " must lie in (1/2, 1)";
        throw ContractError(os.str());
    }
}

void require_a(const std::vector<double>& a, const char* who) {
    if (a.empty()) throw ContractError(std::string(who) + ": a_diag must be non-empty");
    for (double v : a)
        if (!(v >= 1.0) || !std::isfinite(v)) throw ContractError(std::string(who) + ": every a_j must be >= 1");
}

[[noreturn]] void on_essential_spectrum(const char* who, cplx z, double floor) {
    std::ostringstream os;
    os << who << ": real z = " << z.real() << " lies on the essential spectrum [" << floor << ", inf)";
    throw DomainError(os.str());
}

// sqrt(a - 1 - z) with non-negative real part.
cplx decay_rate(double a, cplx z) { return cplx(0, -1) * specfun::sqrt_upper(z - (a - 1.0)); }

cplx corner_scalar(double beta, cplx z) {
    if (z == 0.0) return -1.0;
    const cplx w = specfun::sqrt_upper(z);
    if (std::abs(w) > 40.0) {
        std::ostringstream os;
        os << "corner: |sqrt z| = " << std::abs(w) << " exceeds the Bessel series range 40";
        throw RangeError(os.str());
    }
    const cplx jp = specfun::bessel_j(beta, w);
    const cplx jm = specfun::bessel_j(-beta, w);
    const cplx half_pow = specfun::cpow(w / 2.0, 2.0 * beta);
    const double g = specfun::gamma(1.0 - beta) / specfun::gamma(1.0 + beta);
    // J_beta vanishes at the Dirichlet eigenvalues; compare with its leading term.
    const double lead = std::abs(specfun::cpow(w / 2.0, beta)) / specfun::gamma(1.0 + beta);
    if (!(std::abs(jp) > 1e-13 * lead)) {
        std::ostringstream os;
        os << "corner: z = " << z << " is a pole of M (zero of J_beta(sqrt z))";
        throw PoleError(os.str(), z);
    }
    cplx m = -g * jm * half_pow / jp;
    if (z.imag() == 0.0) m = m.real();
    return m;
}

// |C_beta| = 4^-beta Gamma(1-beta) / Gamma(1+beta).
double sector_modulus(double beta) {
    return std::pow(4.0, -beta) * specfun::gamma(1.0 - beta) / specfun::gamma(1.0 + beta);
}

ComplexMatrix operator_potential_M(const std::vector<double>& a, cplx z) {
    ComplexMatrix m(static_cast<int>(a.size()), static_cast<int>(a.size()));
    for (size_t j = 0; j < a.size(); ++j) {
        const double ra = std::sqrt(a[j]);
        m(j, j) = ra * (ra - decay_rate(a[j], z));
        if (z.imag() == 0.0) m(j, j) = m(j, j).real();
    }
    return m;
}

ComplexMatrix strip_M(const std::vector<double>& a, double w, cplx z) {
    const int n = static_cast<int>(a.size());
    ComplexMatrix m(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        const cplx k = decay_rate(a[j], z);
        const cplx x = w * k;
        cplx kcoth, kcsch;
        if (std::abs(x) < 1e-8) {
            kcoth = 1.0 / w + x * x / (3.0 * w);
            kcsch = 1.0 / w - x * x / (6.0 * w);
        } else {
            const cplx e2 = std::exp(-2.0 * x);
            const cplx den = 1.0 - e2;
            if (std::abs(den) < 1e-14) {
                std::ostringstream os;
                os << "strip: z = " << z << " is a pole of M";
                throw PoleError(os.str(), z);
            }
            kcoth = k * (1.0 + e2) / den;
            kcsch = k * 2.0 * std::exp(-x) / den;
        }
        const double ra = std::sqrt(a[j]);
        cplx d = ra * (ra - kcoth), o = ra * kcsch;
        if (z.imag() == 0.0) d = d.real(), o = o.real();
        m(j, j) = d;
        m(n + j, n + j) = d;
        m(j, n + j) = o;
        m(n + j, j) = o;
    }
    return m;
}

}  // namespace

std::string to_string(ModelKind k) {
    switch (k) {
        case ModelKind::half_line: return "half_line";
        case ModelKind::finite_interval: return "finite_interval";
        case ModelKind::operator_potential_halfline: return "operator_potential_halfline";
        case ModelKind::strip: return "strip";
        case ModelKind::corner: return "corner";
        case ModelKind::sector: return "sector";
        case ModelKind::multi_corner: return "multi_corner";
        case ModelKind::radial_schrodinger: return "radial_schrodinger";
        case ModelKind::constant: return "constant";
        case ModelKind::custom: return "custom";
    }
    return "unknown";
}

std::string to_string(MZeroMethod m) {
    switch (m) {
        case MZeroMethod::closed_form: return "closed_form";
        case MZeroMethod::direct: return "direct";
        case MZeroMethod::extrapolated: return "extrapolated";
    }
    return "unknown";
}

struct WeylModel::Impl {
    ModelKind kind;
    ModelParams params;
    int n = 1;
    double ess_floor = kInf;
    std::optional<ComplexMatrix> m_zero;
};

WeylModel::WeylModel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

WeylModel WeylModel::half_line(PotentialSpec q, sl::HTriplet triplet, sl::HalfLineOptions options) {
    if (std::isfinite(q.domain_end())) throw ContractError("half_line: potential must live on [0, inf)");
    if (triplet.h && !std::isfinite(*triplet.h)) throw ContractError("half_line: h must be finite");
    const double floor = q.tail_value();
    return WeylModel(std::make_shared<Impl>(
        Impl{ModelKind::half_line, HalfLineParams{std::move(q), triplet, options}, 1, floor, std::nullopt}));
}

WeylModel WeylModel::finite_interval(PotentialSpec q, double b) {
    if (!(b > 0) || !std::isfinite(b)) throw ContractError("finite_interval: b must be finite and positive");
    return WeylModel(std::make_shared<Impl>(
        Impl{ModelKind::finite_interval, FiniteIntervalParams{std::move(q), b}, 2, kInf, std::nullopt}));
}

WeylModel WeylModel::operator_potential_halfline(std::vector<double> a) {
    require_a(a, "operator_potential_halfline");
    const double floor = *std::min_element(a.begin(), a.end()) - 1.0;
    const int n = static_cast<int>(a.size());
    return WeylModel(std::make_shared<Impl>(
        Impl{ModelKind::operator_potential_halfline, OperatorPotentialParams{std::move(a)}, n, floor, std::nullopt}));
}

WeylModel WeylModel::strip(std::vector<double> a, double width) {
    require_a(a, "strip");
    if (!(width > 0) || !std::isfinite(width)) throw ContractError("strip: width must be finite and positive");
    const double floor = *std::min_element(a.begin(), a.end()) - 1.0;
    const int n = 2 * static_cast<int>(a.size());
    return WeylModel(
        std::make_shared<Impl>(Impl{ModelKind::strip, StripParams{std::move(a), width}, n, floor, std::nullopt}));
}

WeylModel WeylModel::corner(double beta) {
    require_beta(beta, "corner");
    return WeylModel(std::make_shared<Impl>(Impl{ModelKind::corner, CornerParams{beta}, 1, kInf, std::nullopt}));
}

WeylModel WeylModel::sector(double beta) {
    require_beta(beta, "sector");
    return WeylModel(std::make_shared<Impl>(Impl{ModelKind::sector, SectorParams{beta}, 1, 0.0, std::nullopt}));
}

WeylModel WeylModel::multi_corner(std::vector<double> betas) {
    if (betas.empty()) throw ContractError("multi_corner: betas must be non-empty");
    for (double b : betas) require_beta(b, "multi_corner");
    const int n = static_cast<int>(betas.size());
    return WeylModel(std::make_shared<Impl>(
        Impl{ModelKind::multi_corner, MultiCornerParams{std::move(betas)}, n, kInf, std::nullopt}));
}

WeylModel WeylModel::radial_schrodinger(PotentialSpec q) {
    if (std::isfinite(q.domain_end())) throw ContractError("radial_schrodinger: potential must live on [0, inf)");
    const double floor = q.tail_value();
    return WeylModel(std::make_shared<Impl>(
        Impl{ModelKind::radial_schrodinger, RadialParams{std::move(q)}, 1, floor, std::nullopt}));
}

WeylModel WeylModel::constant(ComplexMatrix value) {
    if (!value.square() || value.empty()) throw DimensionError("constant model: value must be square");
    const int n = value.rows();
    return WeylModel(std::make_shared<Impl>(Impl{ModelKind::constant, ConstantParams{value}, n, kInf, value}));
}

WeylModel WeylModel::custom(std::string name, int n, double ess_floor, std::function<ComplexMatrix(cplx)> fn,
                            std::optional<ComplexMatrix> m_zero) {
    if (n < 1) throw ContractError("custom model: n must be >= 1");
    if (!fn) throw ContractError("custom model: evaluator required");
    return WeylModel(std::make_shared<Impl>(
        Impl{ModelKind::custom, CustomParams{std::move(name), std::move(fn)}, n, ess_floor, std::move(m_zero)}));
}

ModelKind WeylModel::kind() const { return impl_->kind; }
const ModelParams& WeylModel::params() const { return impl_->params; }
int WeylModel::dimension() const { return impl_->n; }
double WeylModel::ess_floor() const { return impl_->ess_floor; }
const std::optional<ComplexMatrix>& WeylModel::custom_m_zero() const { return impl_->m_zero; }

std::string WeylModel::name() const {
    if (const auto* c = std::get_if<CustomParams>(&impl_->params)) return c->name;
    return to_string(impl_->kind);
}

ComplexMatrix WeylModel::evaluate(cplx z) const {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ContractError("evaluate: z must be finite");
    const double floor = impl_->ess_floor;
    struct Visitor {
        cplx z;
        double floor;
        ComplexMatrix operator()(const HalfLineParams& p) const {
            return ComplexMatrix::scalar(sl::halfline_weyl(p.q, p.triplet, z, p.options));
        }
        ComplexMatrix operator()(const FiniteIntervalParams& p) const { return sl::finite_interval_M(p.q, p.b, z); }
        ComplexMatrix operator()(const OperatorPotentialParams& p) const {
            if (z.imag() == 0.0 && z.real() >= floor) on_essential_spectrum("operator_potential_halfline", z, floor);
            return operator_potential_M(p.a, z);
        }
        ComplexMatrix operator()(const StripParams& p) const {
            if (z.imag() == 0.0 && z.real() >= floor) on_essential_spectrum("strip", z, floor);
            return strip_M(p.a, p.width, z);
        }
        ComplexMatrix operator()(const CornerParams& p) const {
            return ComplexMatrix::scalar(corner_scalar(p.beta, z));
        }
        ComplexMatrix operator()(const SectorParams& p) const {
            if (z.imag() == 0.0 && z.real() > 0.0) on_essential_spectrum("sector", z, 0.0);
            if (z == 0.0) return ComplexMatrix::scalar(0.0);
            // -C_beta z^beta = -|C_beta| (-z)^beta on the upper half-plane; the
            // second form is the one continued by reflection.
            cplx m = -sector_modulus(p.beta) * specfun::cpow(-z, p.beta);
            if (z.imag() == 0.0) m = m.real();
            return ComplexMatrix::scalar(m);
        }
        ComplexMatrix operator()(const MultiCornerParams& p) const {
            const int n = static_cast<int>(p.betas.size());
            ComplexMatrix m(n, n);
            for (int j = 0; j < n; ++j) m(j, j) = corner_scalar(p.betas[j], z);
            return m;
        }
        ComplexMatrix operator()(const RadialParams& p) const {
            return ComplexMatrix::scalar(sl::halfline_weyl(p.q, sl::HTriplet::neumann_style(), z));
        }
        ComplexMatrix operator()(const ConstantParams& p) const { return p.value; }
        ComplexMatrix operator()(const CustomParams& p) const { return p.fn(z); }
    };
    return std::visit(Visitor{z, floor}, impl_->params);
}

namespace {

// Richardson extrapolation of M(x) to x = 0- along x_k = -2^-k, k = 1..20,
// in the variable t = |x|^p.
MZeroResult extrapolate_m0(const WeylModel& model, double p) {
    std::vector<ComplexMatrix> vals;
    std::vector<double> norms;
    for (int k = 1; k <= 20; ++k) {
        const double x = -std::ldexp(1.0, -k);
        vals.push_back(model.evaluate(x));
        norms.push_back(vals.back().norm());
    }
    // Growth detector: geometric blow-up over the last rungs means no finite limit.
    bool growing = true;
    for (size_t i = norms.size() - 6; i + 1 < norms.size(); ++i)
        if (!(norms[i + 1] > 1.2 * norms[i])) growing = false;
    if (growing && norms.back() > 1e3 * (1.0 + norms.front())) {
        std::ostringstream os;
        os << "m_at_zero: M(x) grows without bound as x -> 0- (||M(-2^-20)|| = " << norms.back()
           << "); the Friedrichs and Krein extensions are not transversal";
        throw UnboundedLimitError(os.str());
    }
    const double r = std::pow(2.0, p);
    const size_t last = vals.size() - 1;
    // order-2 Richardson table on the three finest rungs
    const ComplexMatrix r1a = (vals[last - 1] * cplx(r) - vals[last - 2]) * cplx(1.0 / (r - 1.0));
    const ComplexMatrix r1b = (vals[last] * cplx(r) - vals[last - 1]) * cplx(1.0 / (r - 1.0));
    const ComplexMatrix r2 = (r1b * cplx(r * r) - r1a) * cplx(1.0 / (r * r - 1.0));
    ComplexMatrix value = herm_part(r2);
    return {value, MZeroMethod::extrapolated, max_abs_diff(r2, r1b)};
}

void require_nonnegative_dirichlet(const PotentialSpec& q, double L, const char* who) {
    const auto opd = oracle::discretize(q, L, 4000, oracle::Boundary::dirichlet(), oracle::Boundary::dirichlet());
    const long neg = oracle::eigen_count_below(opd, 0.0);
    if (neg > 0) {
        std::ostringstream os;
        os << who << ": A0 (Dirichlet operator) has " << neg
           << " negative eigenvalue(s); M(0) is only defined for non-negative A0";
        throw ContractError(os.str());
    }
}

cplx halfline_m0_canonical(const PotentialSpec& q, MZeroMethod& method, double& est) {
    const double tail = q.tail_value();
    if (tail < 0) throw ContractError("m_at_zero: essential spectrum starts below 0; A0 is not non-negative");
    const double L = std::max(40.0, q.tail_start() + 20.0);
    require_nonnegative_dirichlet(q, std::min(L, 200.0), "m_at_zero");
    sl::HalfLineOptions opts;
    opts.allow_threshold = true;
    try {
        method = MZeroMethod::direct;
        est = 0.0;
        return sl::halfline_m_inf(q, 0.0, opts);
    } catch (const PoleError&) {
        throw UnboundedLimitError(
            "m_at_zero: the decaying solution vanishes at 0 for z = 0 (zero-energy Dirichlet resonance); M(0) "
            "is unbounded");
    } catch (const AccuracyError&) {
        // tail not reached: fall back to extrapolation in sqrt|x|
    }
    const auto r = extrapolate_m0(
        WeylModel::custom("half_line", 1, tail,
                          [q](cplx z) { return ComplexMatrix::scalar(sl::halfline_m_inf(q, z)); }),
        0.5);
    method = MZeroMethod::extrapolated;
    est = r.est_error;
    return r.value(0, 0);
}

}  // namespace

MZeroResult m_at_zero(const WeylModel& model) {
    struct Visitor {
        const WeylModel& model;
        MZeroResult operator()(const HalfLineParams& p) const {
            MZeroResult r;
            cplx m = halfline_m0_canonical(p.q, r.method, r.est_error);
            if (p.triplet.h) {
                const double h = *p.triplet.h;
                if (std::abs(m - h) < 1e-12 * (1 + std::abs(m)))
                    throw UnboundedLimitError("m_at_zero: m_inf(0) = h, so M(0) is unbounded for this triplet");
                m = -(1.0 + h * m) / (m - h);
            }
            r.value = ComplexMatrix::scalar(m.real());
            return r;
        }
        MZeroResult operator()(const RadialParams& p) const {
            MZeroResult r;
            const cplx m = halfline_m0_canonical(p.q, r.method, r.est_error);
            r.value = ComplexMatrix::scalar(m.real());
            return r;
        }
        MZeroResult operator()(const FiniteIntervalParams& p) const {
            require_nonnegative_dirichlet(p.q, p.b, "m_at_zero");
            try {
                return {herm_part(model.evaluate(0.0)), MZeroMethod::direct, 0.0};
            } catch (const PoleError&) {
                throw UnboundedLimitError("m_at_zero: 0 is a Dirichlet eigenvalue of the interval; M(0) is unbounded");
            }
        }
        MZeroResult operator()(const OperatorPotentialParams& p) const {
            const int n = static_cast<int>(p.a.size());
            ComplexMatrix m(n, n);
            for (int j = 0; j < n; ++j) {
                const double ra = std::sqrt(p.a[j]);
                m(j, j) = ra * (ra - std::sqrt(p.a[j] - 1.0));
            }
            return {m, MZeroMethod::closed_form, 0.0};
        }
        MZeroResult operator()(const StripParams& p) const {
            // evaluate at 0 (the threshold when min a = 1: kappa -> 0 limit is built in)
            return {herm_part(strip_M(p.a, p.width, 0.0)), MZeroMethod::closed_form, 0.0};
        }
        MZeroResult operator()(const CornerParams&) const { return extrapolate_m0(model, 1.0); }
        MZeroResult operator()(const MultiCornerParams&) const { return extrapolate_m0(model, 1.0); }
        MZeroResult operator()(const SectorParams&) const {
            return {ComplexMatrix::scalar(0.0), MZeroMethod::closed_form, 0.0};
        }
        MZeroResult operator()(const ConstantParams& p) const { return {p.value, MZeroMethod::closed_form, 0.0}; }
        MZeroResult operator()(const CustomParams&) const {
            if (model.custom_m_zero()) return {*model.custom_m_zero(), MZeroMethod::closed_form, 0.0};
            return extrapolate_m0(model, 1.0);
        }
    };
    return std::visit(Visitor{model}, model.params());
}

RClassReport classify_R_class(const WeylModel& model, const std::vector<cplx>& sample_z) {
    RClassReport rep;
    rep.herglotz = true;
    for (const cplx z : sample_z) {
        if (!(z.imag() > 0)) throw ContractError("classify_R_class: samples must lie in the open upper half-plane");
        ComplexMatrix m;
        try {
            m = model.evaluate(z);
        } catch (const Error& e) {
            std::ostringstream os;
            os << "classify_R_class: evaluation failed at z = " << z << ": " << e.what();
            throw Error(os.str());
        }
        const double lm = lambda_min(imag_part(m)) / std::max(m.norm(), 1e-300);
        rep.worst_herglotz = std::min(rep.worst_herglotz, lm);
        if (lm < -1e-9) rep.herglotz = false;
    }
    for (int j = 0; j <= 12; ++j) {
        const double y = std::ldexp(1.0, j);
        ComplexMatrix m;
        try {
            m = model.evaluate(cplx(0, y));
        } catch (const RangeError&) {
            break;  // outside the model's evaluation range: ladder truncated
        }
        rep.ladder.push_back(y);
        rep.norm_over_y.push_back(m.norm() / y);
        rep.y_lambda_min.push_back(y * lambda_min(imag_part(m)));
    }
    const size_t k = rep.ladder.size();
    if (k >= 3) {
        bool dec = true, inc = true;
        for (size_t i = 0; i + 1 < k; ++i) {
            if (!(rep.norm_over_y[i + 1] <= rep.norm_over_y[i] * (1 + 1e-12))) dec = false;
            if (!(rep.y_lambda_min[i + 1] > rep.y_lambda_min[i])) inc = false;
        }
        rep.sublinear = dec && rep.norm_over_y.back() < 0.5 * rep.norm_over_y.front();
        rep.unbounded_imag = inc && rep.y_lambda_min.back() > 2.0 * std::max(rep.y_lambda_min.front(), 0.0) &&
                             rep.y_lambda_min.back() > 0;
    }
    return rep;
}

StieltjesReport classify_stieltjes(const WeylModel& model, const std::vector<double>& x_grid) {
    if (x_grid.size() < 2) throw ContractError("classify_stieltjes: need at least two grid points");
    for (size_t i = 0; i < x_grid.size(); ++i) {
        if (!(x_grid[i] < 0)) throw ContractError("classify_stieltjes: grid points must be negative");
        if (i > 0 && !(x_grid[i] > x_grid[i - 1])) throw ContractError("classify_stieltjes: grid must ascend");
    }
    std::vector<ComplexMatrix> vals;
    for (double x : x_grid) {
        try {
            vals.push_back(herm_part(model.evaluate(x)));
        } catch (const PoleError& e) {
            std::ostringstream os;
            os << "classify_stieltjes: pole of M at x = " << x << " inside the grid: " << e.what();
            throw PoleError(os.str(), x);
        }
    }
    StieltjesReport rep;
    rep.monotone = true;
    rep.bounded_below = vals.front().all_finite();
    for (size_t i = 0; i + 1 < vals.size(); ++i) {
        const double scale = std::max({vals[i].norm(), vals[i + 1].norm(), 1e-300});
        const double lm = lambda_min(vals[i + 1] - vals[i]) / scale;
        if (lm < rep.worst_increment) rep.worst_increment = lm;
        if (lm < -1e-9 && rep.monotone) {
            rep.monotone = false;
            rep.counterexample = std::make_pair(x_grid[i], x_grid[i + 1]);
        }
        const double lb = lambda_min(vals[i + 1] - vals.front()) / std::max(scale, vals.front().norm());
        if (lb < -1e-9) rep.bounded_below = false;
    }
    rep.consistent = rep.monotone && rep.bounded_below;
    if (rep.consistent) {
        rep.verdict = "consistent with (S^)";
    } else {
        std::ostringstream os;
        os << "not consistent with (S^)";
        if (rep.counterexample)
            os << ": M(" << rep.counterexample->second << ") - M(" << rep.counterexample->first << ") is not PSD";
        rep.verdict = os.str();
    }
    return rep;
}

}  // namespace weyl
