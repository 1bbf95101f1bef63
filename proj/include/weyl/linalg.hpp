#pragma once

// Dense complex matrices and the Hermitian spectral primitives the rest of
// the library is built on. Sizes here are small (n <= ~64), so everything is
// plain O(n^3) with Jacobi iterations.

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace weyl {

using cplx = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);
    ComplexMatrix(int rows, int cols, std::vector<cplx> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(int n);
    static ComplexMatrix zeros(int rows, int cols) { return {rows, cols}; }
    static ComplexMatrix diagonal(std::span<const cplx> d);
    static ComplexMatrix diagonal(std::span<const double> d);
    static ComplexMatrix scalar(cplx v) { return {1, 1, {v}}; }

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    cplx& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    std::span<const cplx> entries() const noexcept { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    cplx trace() const;
    /// Frobenius norm.
    double norm() const;
    double max_abs() const;
    bool all_finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

    std::vector<cplx> apply(std::span<const cplx> v) const;
    ComplexMatrix block(int r0, int c0, int nr, int nc) const;
    void set_block(int r0, int c0, const ComplexMatrix& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> data_;
};

struct HermitianInertia {
    int n_neg = 0;
    int n_zero = 0;
    int n_pos = 0;
    friend bool operator==(const HermitianInertia&, const HermitianInertia&) = default;
};

struct HermitianEigensystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns, matching `values`
};

/// Largest entrywise difference.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix outer(std::span<const cplx> u, std::span<const cplx> v);

ComplexMatrix herm_part(const ComplexMatrix& m);
ComplexMatrix imag_part(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double rel_tol = 1e-10);

/// Partial-pivot LU of a square matrix. A pivot below 1e-13 * max|A| is
/// reported as singular by solve/inverse; det never throws.
struct LUDecomposition {
    ComplexMatrix lu;
    std::vector<int> perm;
    int sign = 1;
    double smallest_pivot = 0.0;
    double scale = 0.0;
};
LUDecomposition lu_decompose(const ComplexMatrix& a);

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix inverse(const ComplexMatrix& a);
cplx det(const ComplexMatrix& a);

std::vector<double> hermitian_eigen(const ComplexMatrix& m);
HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m);
HermitianInertia inertia(const ComplexMatrix& m, double zero_tol);
double lambda_min(const ComplexMatrix& hermitian);

/// Singular values (descending) by one-sided Jacobi.
std::vector<double> singular_values(const ComplexMatrix& m);
int numeric_rank(const ComplexMatrix& m, double tau);

}  // namespace weyl
