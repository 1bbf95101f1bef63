#pragma once

// Spectral analysis of the extension A_B, dom(A_B) = ker(Gamma1 - B Gamma0),
// from the Weyl function alone, with oracle cross-checks where a
// discretization of the concrete operator exists.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "weyl/linalg.hpp"
#include "weyl/models.hpp"
#include "weyl/oracle.hpp"

namespace weyl {

struct ExtensionSpec {
    WeylModel model;
    ComplexMatrix B;

    ExtensionSpec(WeylModel m, ComplexMatrix b);
    bool is_hermitian() const;
    /// lambda_min(Im B) >= 0.
    bool is_dissipative() const;
};

struct OracleOptions {
    double L = 40.0;  // truncation of half-line problems
    int n = 4000;     // grid points
};

struct Eigenvalue {
    cplx location;
    int multiplicity = 1;
    bool resolved = true;                        // false at a pole-zero collision
    std::optional<std::array<double, 2>> bracket;  // set when unresolved
};

enum class SpectrumMethod { real_scan, argument_principle, inertia };
std::string to_string(SpectrumMethod m);

struct SpectrumReport {
    std::array<double, 4> window{};  // real scan: (a, b, 0, 0); rectangle: (re0, re1, im0, im1)
    bool is_rectangle = false;
    std::vector<Eigenvalue> eigenvalues;
    std::vector<double> poles;  // poles of M met by a real scan
    std::optional<int> neg_count;
    std::optional<int> complex_count;
    SpectrumMethod method = SpectrumMethod::real_scan;
    std::optional<std::vector<double>> oracle_eigenvalues;
    std::optional<std::vector<double>> oracle_delta;  // |lambda_M - nearest oracle eigenvalue|
    int evaluations = 0;
};

/// Eigenvalues of A_B in [a, b] (b below the essential-spectrum floor) from the
/// jumps of x -> n_neg(M(x) - B): M is non-decreasing between poles, so an
/// eigenvalue of A_B lowers the count by its multiplicity and a pole of M
/// raises it. Jumps are isolated by bisection to 1e-10 (1 + |x|).
SpectrumReport point_spectrum_real(const ExtensionSpec& spec, double a, double b, int grid_n = 400);

/// Zeros of det(M(z) - B) inside the rectangle [re0, re1] x [im0, im1]
/// (im0 > 0) by the argument principle.
int count_complex_eigenvalues(const ExtensionSpec& spec, const std::array<double, 4>& rect);

struct NegativeCount {
    int kappa_M = 0;
    std::optional<int> kappa_oracle;
    MZeroResult m_zero;
    HermitianInertia inertia;
};

/// kappa_M = n_neg(B - M(0)); kappa_oracle from the discretization when the
/// model kind has one.
NegativeCount negative_count(const ExtensionSpec& spec, const OracleOptions& opts = {});

/// B = M(0).
ExtensionSpec krein_extension(const WeylModel& model);

/// For operator_potential_halfline: the Robin matrix S in y'(0) = S y(0)
/// realizing B, S = A^{-1/4} B A^{-1/4} - A^{1/2}, and back.
ComplexMatrix operator_potential_robin(const std::vector<double>& a, const ComplexMatrix& B);
ComplexMatrix operator_potential_boundary(const std::vector<double>& a, const ComplexMatrix& S);

/// Whether the oracle can discretize A_B for this spec.
bool oracle_supports(const ExtensionSpec& spec);

/// Oracle eigenvalues of A_B below mu / in [a, b]; empty optional when unsupported.
std::optional<long> oracle_count_below(const ExtensionSpec& spec, double mu, const OracleOptions& opts = {});
std::optional<double> oracle_min_eigenvalue(const ExtensionSpec& spec, const OracleOptions& opts = {});
std::optional<std::vector<double>> oracle_eigenvalues(const ExtensionSpec& spec, double a, double b,
                                                      const OracleOptions& opts = {});

struct RankLawReport {
    int rank_weyl = 0;       // (B1 - M(z))^{-1} - (B2 - M(z))^{-1}
    int rank_boundary = 0;   // (B1 - zeta)^{-1} - (B2 - zeta)^{-1}
    int rank_difference = 0; // B1 - B2
    std::optional<int> rank_oracle;
    bool agree = false;
};

RankLawReport resolvent_rank_law(const ExtensionSpec& s1, const ExtensionSpec& s2, cplx z, cplx zeta,
                                 const OracleOptions& opts = {});

}  // namespace weyl
