#include "weyl/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <variant>

#include "weyl/errors.hpp"
#include "weyl/triplets.hpp"

namespace weyl {

namespace {

constexpr double kPi = 3.141592653589793;

struct ScalarPlan {
    PotentialSpec q;
    double L;
    oracle::Boundary left, right;
};
struct BlockPlan {
    std::vector<PotentialSpec> q;
    ComplexMatrix S;
    double L;
};
using Plan = std::variant<std::monostate, ScalarPlan, BlockPlan>;

bool real_scalar(const ComplexMatrix& B) { return B.rows() == 1 && std::abs(B(0, 0).imag()) <= 1e-14; }

Plan make_plan(const ExtensionSpec& spec, const OracleOptions& opts) {
    const auto& B = spec.B;
    if (const auto* p = std::get_if<HalfLineParams>(&spec.model.params())) {
        if (!real_scalar(B)) return {};
        const double b = B(0, 0).real();
        oracle::Boundary left = oracle::Boundary::robin(b);
        if (p->triplet.h) {
            const double h = *p->triplet.h;
            left = std::abs(b + h) < 1e-14 ? oracle::Boundary::dirichlet()
                                          : oracle::Boundary::robin((b * h - 1.0) / (b + h));
        }
        return ScalarPlan{p->q, opts.L, left, oracle::Boundary::dirichlet()};
    }
    if (const auto* p = std::get_if<RadialParams>(&spec.model.params())) {
        if (!real_scalar(B)) return {};
        return ScalarPlan{p->q, opts.L, oracle::Boundary::robin(B(0, 0).real()), oracle::Boundary::dirichlet()};
    }
    if (const auto* p = std::get_if<FiniteIntervalParams>(&spec.model.params())) {
        if (std::abs(B(0, 1)) > 1e-14 || std::abs(B(1, 0)) > 1e-14) return {};
        if (std::abs(B(0, 0).imag()) > 1e-14 || std::abs(B(1, 1).imag()) > 1e-14) return {};
        return ScalarPlan{p->q, p->b, oracle::Boundary::robin(B(0, 0).real()),
                          oracle::Boundary::robin(-B(1, 1).real())};
    }
    if (const auto* p = std::get_if<OperatorPotentialParams>(&spec.model.params())) {
        if (!spec.is_hermitian()) return {};
        std::vector<PotentialSpec> q;
        for (double a : p->a) q.push_back(PotentialSpec::sampled_table({0.0}, {a - 1.0}));
        return BlockPlan{std::move(q), operator_potential_robin(p->a, B), opts.L};
    }
    return {};
}

long plan_count(const Plan& plan, double mu, int n) {
    if (const auto* s = std::get_if<ScalarPlan>(&plan))
        return oracle::eigen_count_below(oracle::discretize(s->q, s->L, n, s->left, s->right), mu);
    const auto& b = std::get<BlockPlan>(plan);
    return oracle::eigen_count_below(oracle::discretize_block(b.q, b.S, b.L, n), mu);
}

std::vector<double> plan_lowest(const Plan& plan, int k, int n) {
    if (const auto* s = std::get_if<ScalarPlan>(&plan))
        return oracle::lowest_eigenvalues(oracle::discretize(s->q, s->L, n, s->left, s->right), k);
    const auto& b = std::get<BlockPlan>(plan);
    return oracle::lowest_eigenvalues(oracle::discretize_block(b.q, b.S, b.L, n), k);
}

struct Jump {
    double x;
    int delta;
};

struct ScanResult {
    std::vector<Jump> jumps;
    int evaluations = 0;
};

// Jumps of x -> n_neg(F(x)) on [a, b], F(x) = M(x) - B. Points where F cannot
// be evaluated (poles of M met exactly) are stepped around.
ScanResult scan_counts(const std::function<ComplexMatrix(double)>& F, double a, double b, int grid_n) {
    ScanResult out;
    auto count = [&](double& x, double step) {
        for (int attempt = 0; attempt < 8; ++attempt) {
            try {
                ++out.evaluations;
                return inertia(herm_part(F(x)), 0.0).n_neg;
            } catch (const PoleError&) {
                x += step;
            } catch (const SingularMatrixError&) {
                x += step;
            }
            step *= 2;
        }
        std::ostringstream os;
        os << "point_spectrum_real: cannot evaluate M near x = " << x;
        throw PoleError(os.str(), x);
    };
    const double nudge = 1e-9 * (b - a);
    std::vector<double> xs(grid_n);
    std::vector<int> ns(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        xs[i] = a + (b - a) * i / (grid_n - 1);
        ns[i] = count(xs[i], i + 1 == grid_n ? -nudge : nudge);
    }
    auto isolate = [&](auto&& self, double l, double r, int nl, int nr) -> void {
        if (nl == nr) return;
        if (r - l <= 1e-10 * (1.0 + std::max(std::abs(l), std::abs(r)))) {
            out.jumps.push_back({0.5 * (l + r), nr - nl});
            return;
        }
        const double requested = 0.5 * (l + r);
        double mid = requested;
        int nm;
        try {
            nm = count(mid, 2.5e-4 * (r - l));
        } catch (const PoleError&) {
            // inside the unevaluable neighbourhood of a pole; the bracket is as tight as M allows
            out.jumps.push_back({requested, nr - nl});
            return;
        }
        if (!(mid > l && mid < r)) mid = requested;
        self(self, l, mid, nl, nm);
        self(self, mid, r, nm, nr);
    };
    for (int i = 0; i + 1 < grid_n; ++i) isolate(isolate, xs[i], xs[i + 1], ns[i], ns[i + 1]);
    return out;
}

bool same_point(double x, double y) { return std::abs(x - y) <= 1e-8 * (1.0 + std::abs(x)); }

}  // namespace

ExtensionSpec::ExtensionSpec(WeylModel m, ComplexMatrix b) : model(std::move(m)), B(std::move(b)) {
    if (!B.square() || B.rows() != model.dimension()) {
        std::ostringstream os;
        os << "ExtensionSpec: B must be " << model.dimension() << "x" << model.dimension() << ", got " << B.rows()
           << "x" << B.cols();
        throw DimensionError(os.str());
    }
    if (!B.all_finite()) throw ContractError("ExtensionSpec: B must be finite");
}

bool ExtensionSpec::is_hermitian() const { return weyl::is_hermitian(B); }

bool ExtensionSpec::is_dissipative() const { return lambda_min(imag_part(B)) >= -1e-12 * (1.0 + B.norm()); }

std::string to_string(SpectrumMethod m) {
    switch (m) {
        case SpectrumMethod::real_scan: return "real_scan";
        case SpectrumMethod::argument_principle: return "argument_principle";
        case SpectrumMethod::inertia: return "inertia";
    }
    return "unknown";
}

SpectrumReport point_spectrum_real(const ExtensionSpec& spec, double a, double b, int grid_n) {
    if (!spec.is_hermitian()) throw ContractError("point_spectrum_real: B must be Hermitian");
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw ContractError("point_spectrum_real: need a < b");
    if (grid_n < 64) throw ContractError("point_spectrum_real: grid_n must be >= 64");
    if (!(b < spec.model.ess_floor())) {
        std::ostringstream os;
        os << "point_spectrum_real: window end " << b << " must lie below the essential-spectrum floor "
           << spec.model.ess_floor();
        throw DomainError(os.str());
    }
    SpectrumReport rep;
    rep.window = {a, b, 0.0, 0.0};
    rep.method = SpectrumMethod::real_scan;

    // At a pole of M the count jumps up; an eigenvalue of A_B sitting on that
    // pole cancels it and is invisible. A second scan in a rotated triplet,
    // whose poles are the eigenvalues of A_{cot(theta)}, recovers it.
    const int n = spec.model.dimension();
    const ScanResult s0 = scan_counts([&](double x) { return spec.model.evaluate(x) - spec.B; }, a, b, grid_n);
    std::optional<TripletTransform> rot;
    ComplexMatrix Bt;
    for (double theta : {0.6180339887, 1.0471975512 + 0.1, 0.3819660113, 1.3}) {
        const ComplexMatrix I = ComplexMatrix::identity(n);
        const double c = std::cos(theta), s = std::sin(theta);
        auto t = make_transform(I, I * cplx(c), I * cplx(s), I * cplx(-s), I * cplx(c));
        try {
            Bt = herm_part(transform_boundary_operator(t, spec.B));
            rot = std::move(t);
            break;
        } catch (const SingularMatrixError&) {
        }
    }
    if (!rot) throw SingularMatrixError("point_spectrum_real: no admissible rotated triplet for this B", 0.0);
    const ScanResult s1 = scan_counts(
        [&](double x) { return transform_weyl(*rot, spec.model.evaluate(x)) - Bt; }, a, b, grid_n);
    rep.evaluations = s0.evaluations + s1.evaluations;

    std::vector<double> poles_rot;
    for (const auto& j : s0.jumps)
        if (j.delta > 0) rep.poles.push_back(j.x);
    for (const auto& j : s1.jumps)
        if (j.delta > 0) poles_rot.push_back(j.x);
    for (const auto* s : {&s0, &s1})
        for (const auto& j : s->jumps) {
            if (j.delta >= 0) continue;
            auto it = std::find_if(rep.eigenvalues.begin(), rep.eigenvalues.end(),
                                   [&](const Eigenvalue& e) { return same_point(e.location.real(), j.x); });
            if (it == rep.eigenvalues.end())
                rep.eigenvalues.push_back({j.x, -j.delta, true, std::nullopt});
            else
                it->multiplicity = std::max(it->multiplicity, -j.delta);
        }
    // A point that is a pole in both frames can hide an eigenvalue from both.
    for (double p : rep.poles)
        for (double q : poles_rot)
            if (same_point(p, q) &&
                std::none_of(rep.eigenvalues.begin(), rep.eigenvalues.end(),
                             [&](const Eigenvalue& e) { return same_point(e.location.real(), p); })) {
                const double w = 1e-8 * (1.0 + std::abs(p));
                rep.eigenvalues.push_back({p, 1, false, std::array<double, 2>{p - w, p + w}});
            }
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
              [](const Eigenvalue& l, const Eigenvalue& r) { return l.location.real() < r.location.real(); });

    if (const auto oe = oracle_eigenvalues(spec, a, b)) {
        rep.oracle_eigenvalues = *oe;
        std::vector<double> delta;
        for (const auto& ev : rep.eigenvalues) {
            double best = std::numeric_limits<double>::infinity();
            for (double o : *oe) best = std::min(best, std::abs(o - ev.location.real()));
            delta.push_back(best);
        }
        rep.oracle_delta = std::move(delta);
    }
    return rep;
}

int count_complex_eigenvalues(const ExtensionSpec& spec, const std::array<double, 4>& rect) {
    const auto [re0, re1, im0, im1] = rect;
    if (!(re0 < re1) || !(im0 < im1)) throw ContractError("count_complex_eigenvalues: degenerate rectangle");
    if (!(im0 > 0)) throw ContractError("count_complex_eigenvalues: rectangle must lie in the open upper half-plane");
    const int n = spec.model.dimension();
    auto f = [&](cplx z) {
        const ComplexMatrix d = spec.model.evaluate(z) - spec.B;
        const cplx v = det(d);
        const double scale = std::pow(1.0 + d.norm(), n);
        if (!(std::abs(v) > 1e-13 * scale)) {
            std::ostringstream os;
            os << "count_complex_eigenvalues: det(M(z) - B) vanishes on the contour near z = " << z
               << "; perturb the rectangle";
            throw BoundaryZeroError(os.str(), z);
        }
        return v;
    };
    const std::array<cplx, 5> corners = {cplx(re0, im0), cplx(re1, im0), cplx(re1, im1), cplx(re0, im1),
                                         cplx(re0, im0)};
    int samples = 0;
    double total = 0.0;
    for (int e = 0; e < 4; ++e) {
        const cplx z0 = corners[e], z1 = corners[e + 1];
        // stack of pending sub-segments (t0, t1) with function values
        struct Seg {
            double t0, t1;
            cplx f0, f1;
        };
        const int initial = 16;
        std::vector<Seg> stack;
        std::vector<cplx> fv(initial + 1);
        for (int i = 0; i <= initial; ++i) {
            fv[i] = f(z0 + (z1 - z0) * (double(i) / initial));
            ++samples;
        }
        for (int i = initial; i-- > 0;)
            stack.push_back({double(i) / initial, double(i + 1) / initial, fv[i], fv[i + 1]});
        while (!stack.empty()) {
            const Seg s = stack.back();
            stack.pop_back();
            const double darg = std::arg(s.f1 / s.f0);
            if (std::abs(darg) < kPi / 4) {
                total += darg;
                continue;
            }
            if (samples >= 20000)
                throw AccuracyError("count_complex_eigenvalues: contour refinement exceeded 20000 samples", darg);
            const double tm = 0.5 * (s.t0 + s.t1);
            if (std::abs(z1 - z0) * (s.t1 - s.t0) < 1e-12) {
                const cplx zm = z0 + (z1 - z0) * tm;
                throw BoundaryZeroError("count_complex_eigenvalues: phase jump on a vanishing segment; zero on contour",
                                        zm);
            }
            const cplx fm = f(z0 + (z1 - z0) * tm);
            ++samples;
            stack.push_back({tm, s.t1, fm, s.f1});
            stack.push_back({s.t0, tm, s.f0, fm});
        }
    }
    const double w = total / (2 * kPi);
    const double r = std::round(w);
    if (std::abs(w - r) > 1e-3)
        throw AccuracyError("count_complex_eigenvalues: winding number not close to an integer", std::abs(w - r));
    return static_cast<int>(r);
}

NegativeCount negative_count(const ExtensionSpec& spec, const OracleOptions& opts) {
    if (!spec.is_hermitian()) throw ContractError("negative_count: B must be Hermitian");
    NegativeCount out;
    out.m_zero = m_at_zero(spec.model);
    const ComplexMatrix d = herm_part(spec.B - out.m_zero.value);
    const double tol = 1e-9 * (1.0 + d.norm()) + out.m_zero.est_error;
    out.inertia = inertia(d, tol);
    out.kappa_M = out.inertia.n_neg;
    if (const auto c = oracle_count_below(spec, 0.0, opts)) out.kappa_oracle = static_cast<int>(*c);
    return out;
}

ExtensionSpec krein_extension(const WeylModel& model) {
    const auto m0 = m_at_zero(model);
    if (!m0.value.all_finite()) throw UnboundedLimitError("krein_extension: M(0) is not finite");
    return {model, herm_part(m0.value)};
}

ComplexMatrix operator_potential_robin(const std::vector<double>& a, const ComplexMatrix& B) {
    const int n = static_cast<int>(a.size());
    if (B.rows() != n || B.cols() != n) throw DimensionError("operator_potential_robin: B must match a_diag");
    ComplexMatrix S(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) S(i, j) = B(i, j) / std::pow(a[i] * a[j], 0.25);
    for (int i = 0; i < n; ++i) S(i, i) -= std::sqrt(a[i]);
    return S;
}

ComplexMatrix operator_potential_boundary(const std::vector<double>& a, const ComplexMatrix& S) {
    const int n = static_cast<int>(a.size());
    if (S.rows() != n || S.cols() != n) throw DimensionError("operator_potential_boundary: S must match a_diag");
    ComplexMatrix B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cplx s = S(i, j) + (i == j ? std::sqrt(a[i]) : 0.0);
            B(i, j) = std::pow(a[i] * a[j], 0.25) * s;
        }
    return B;
}

bool oracle_supports(const ExtensionSpec& spec) {
    return !std::holds_alternative<std::monostate>(make_plan(spec, {}));
}

std::optional<long> oracle_count_below(const ExtensionSpec& spec, double mu, const OracleOptions& opts) {
    const Plan plan = make_plan(spec, opts);
    if (std::holds_alternative<std::monostate>(plan)) return std::nullopt;
    return plan_count(plan, mu, opts.n);
}

std::optional<double> oracle_min_eigenvalue(const ExtensionSpec& spec, const OracleOptions& opts) {
    const Plan plan = make_plan(spec, opts);
    if (std::holds_alternative<std::monostate>(plan)) return std::nullopt;
    return plan_lowest(plan, 1, opts.n).front();
}

std::optional<std::vector<double>> oracle_eigenvalues(const ExtensionSpec& spec, double a, double b,
                                                      const OracleOptions& opts) {
    const Plan plan = make_plan(spec, opts);
    if (std::holds_alternative<std::monostate>(plan)) return std::nullopt;
    const long below_a = plan_count(plan, a, opts.n);
    const long below_b = plan_count(plan, b, opts.n);
    if (below_b > 50) return std::nullopt;
    const auto low = plan_lowest(plan, static_cast<int>(below_b), opts.n);
    return std::vector<double>(low.begin() + std::min<long>(below_a, static_cast<long>(low.size())), low.end());
}

RankLawReport resolvent_rank_law(const ExtensionSpec& s1, const ExtensionSpec& s2, cplx z, cplx zeta,
                                 const OracleOptions& opts) {
    if (s1.model.dimension() != s2.model.dimension() || s1.model.kind() != s2.model.kind())
        throw ContractError("resolvent_rank_law: the two extensions must share a model");
    const int n = s1.model.dimension();
    const double tau = 1e-8;
    const ComplexMatrix M = s1.model.evaluate(z);
    auto inv_or = [](const ComplexMatrix& m, const std::string& what) {
        try {
            return inverse(m);
        } catch (const SingularMatrixError& e) {
            throw SingularMatrixError("resolvent_rank_law: " + what, e.smallest_pivot());
        }
    };
    RankLawReport rep;
    rep.rank_weyl = numeric_rank(inv_or(s1.B - M, "z is an eigenvalue of A_B1") -
                                     inv_or(s2.B - M, "z is an eigenvalue of A_B2"),
                                 tau);
    const ComplexMatrix zi = ComplexMatrix::identity(n) * zeta;
    rep.rank_boundary = numeric_rank(inv_or(s1.B - zi, "zeta is an eigenvalue of B1") -
                                         inv_or(s2.B - zi, "zeta is an eigenvalue of B2"),
                                     tau);
    rep.rank_difference = numeric_rank(s1.B - s2.B, tau);

    const Plan p1 = make_plan(s1, opts), p2 = make_plan(s2, opts);
    const int probes = n + 3;
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> g;
    if (const auto* a1 = std::get_if<ScalarPlan>(&p1)) {
        const auto* a2 = std::get_if<ScalarPlan>(&p2);
        if (a2 && a1->left.type == a2->left.type && a1->right.type == a2->right.type) {
            const auto o1 = oracle::discretize(a1->q, a1->L, opts.n, a1->left, a1->right);
            const auto o2 = oracle::discretize(a2->q, a2->L, opts.n, a2->left, a2->right);
            const int N = static_cast<int>(o1.size());
            ComplexMatrix D(N, probes);
            for (int k = 0; k < probes; ++k) {
                std::vector<cplx> v(N);
                for (auto& e : v) e = g(rng);
                const auto r1 = oracle::resolvent_apply(o1, z, v), r2 = oracle::resolvent_apply(o2, z, v);
                for (int i = 0; i < N; ++i) D(i, k) = r1[i] - r2[i];
            }
            rep.rank_oracle = numeric_rank(D, tau);
        }
    } else if (const auto* b1 = std::get_if<BlockPlan>(&p1)) {
        if (const auto* b2 = std::get_if<BlockPlan>(&p2)) {
            const auto o1 = oracle::discretize_block(b1->q, b1->S, b1->L, opts.n);
            const auto o2 = oracle::discretize_block(b2->q, b2->S, b2->L, opts.n);
            const int N = static_cast<int>(o1.size()) * o1.m;
            ComplexMatrix D(N, probes);
            for (int k = 0; k < probes; ++k) {
                std::vector<cplx> v(N);
                for (auto& e : v) e = g(rng);
                const auto r1 = oracle::resolvent_apply(o1, z, v), r2 = oracle::resolvent_apply(o2, z, v);
                for (int i = 0; i < N; ++i) D(i, k) = r1[i] - r2[i];
            }
            rep.rank_oracle = numeric_rank(D, tau);
        }
    }
    rep.agree = rep.rank_weyl == rep.rank_boundary && rep.rank_boundary == rep.rank_difference &&
                (!rep.rank_oracle || *rep.rank_oracle == rep.rank_difference);
    return rep;
}

}  // namespace weyl
