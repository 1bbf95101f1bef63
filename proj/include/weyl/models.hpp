#pragma once

// The Weyl-function catalog. A WeylModel is an immutable handle; copies share
// the underlying parameters.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "weyl/linalg.hpp"
#include "weyl/potential.hpp"
#include "weyl/slsolve.hpp"

namespace weyl {

enum class ModelKind {
    half_line,
    finite_interval,
    operator_potential_halfline,
    strip,
    corner,
    sector,
    multi_corner,
    radial_schrodinger,
    constant,  // M(z) = C for every z; a test stub
    custom,    // arbitrary evaluator, e.g. a transformed model
};

std::string to_string(ModelKind k);

struct HalfLineParams {
    PotentialSpec q;
    sl::HTriplet triplet;
    sl::HalfLineOptions options;
};
struct FiniteIntervalParams {
    PotentialSpec q;
    double b;
};
struct OperatorPotentialParams {
    std::vector<double> a;
};
struct StripParams {
    std::vector<double> a;
    double width;
};
struct CornerParams {
    double beta;
};
struct SectorParams {
    double beta;
};
struct MultiCornerParams {
    std::vector<double> betas;
};
struct RadialParams {
    PotentialSpec q;
};
struct ConstantParams {
    ComplexMatrix value;
};
struct CustomParams {
    std::string name;
    std::function<ComplexMatrix(cplx)> fn;
};

using ModelParams = std::variant<HalfLineParams, FiniteIntervalParams, OperatorPotentialParams, StripParams,
                                 CornerParams, SectorParams, MultiCornerParams, RadialParams, ConstantParams,
                                 CustomParams>;

enum class MZeroMethod { closed_form, direct, extrapolated };
std::string to_string(MZeroMethod m);

struct MZeroResult {
    ComplexMatrix value;
    MZeroMethod method = MZeroMethod::closed_form;
    double est_error = 0.0;
};

class WeylModel {
public:
    static WeylModel half_line(PotentialSpec q, sl::HTriplet triplet = {}, sl::HalfLineOptions options = {});
    static WeylModel finite_interval(PotentialSpec q, double b);
    /// -y'' + (A - I) y on the half-line, A = diag(a), a_j >= 1.
    static WeylModel operator_potential_halfline(std::vector<double> a);
    /// The same on [0, width] with two boundary ends; M is 2n x 2n ordered
    /// (left ends, right ends).
    static WeylModel strip(std::vector<double> a, double width = 3.141592653589793);
    static WeylModel corner(double beta);
    static WeylModel sector(double beta);
    static WeylModel multi_corner(std::vector<double> betas);
    static WeylModel radial_schrodinger(PotentialSpec q);
    static WeylModel constant(ComplexMatrix value);
    /// `ess_floor` = +inf means purely discrete spectrum.
    static WeylModel custom(std::string name, int n, double ess_floor, std::function<ComplexMatrix(cplx)> fn,
                            std::optional<ComplexMatrix> m_zero = std::nullopt);

    ModelKind kind() const;
    const ModelParams& params() const;
    int dimension() const;
    /// Infimum of the essential spectrum of A0 (+inf when discrete).
    double ess_floor() const;
    std::string name() const;

    /// M(z). Throws PoleError at Dirichlet eigenvalues, DomainError on the
    /// essential spectrum.
    ComplexMatrix evaluate(cplx z) const;

    /// Known value of M(0) for custom models, if provided.
    const std::optional<ComplexMatrix>& custom_m_zero() const;

private:
    struct Impl;
    explicit WeylModel(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

/// M(0) as the limit of M(x), x -> 0-: a closed form where one exists, direct
/// evaluation at 0 (or at the threshold of the essential spectrum), otherwise
/// Richardson extrapolation over x = -2^-k, k = 1..20.
MZeroResult m_at_zero(const WeylModel& model);

struct RClassReport {
    bool herglotz = false;        // (i) lambda_min(Im M) >= -1e-9 ||M|| at all samples
    bool sublinear = false;       // (ii) ||M(iy)|| / y decreasing toward 0 on the ladder
    bool unbounded_imag = false;  // (iii) y lambda_min(Im M(iy)) increasing without observed bound
    double worst_herglotz = 0.0;  // most negative normalized lambda_min
    std::vector<double> ladder;   // y = 2^j
    std::vector<double> norm_over_y;
    std::vector<double> y_lambda_min;
    std::string note = "consistent at tested scale; not a proof";
};

RClassReport classify_R_class(const WeylModel& model, const std::vector<cplx>& sample_z);

struct StieltjesReport {
    bool monotone = false;
    bool bounded_below = false;
    bool consistent = false;
    std::string verdict;
    std::optional<std::pair<double, double>> counterexample;  // (x1, x2)
    double worst_increment = 0.0;  // most negative normalized lambda_min of M(x2) - M(x1)
};

StieltjesReport classify_stieltjes(const WeylModel& model, const std::vector<double>& x_grid);

}  // namespace weyl
