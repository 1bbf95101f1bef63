#include "weyl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "weyl/errors.hpp"

namespace weyl {

namespace {

void require_square(const ComplexMatrix& m, const char* op) {
    if (!m.square() || m.empty()) {
        std::ostringstream os;
        os << op << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
        throw DimensionError(os.str());
    }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream os;
        os << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
           << b.cols();
        throw DimensionError(os.str());
    }
}

// Hermitian 2x2 Jacobi rotation. Given the pivot block [[a, g], [conj(g), d]]
// with real a, d, returns the 2x2 unitary V = [[v00, v01], [v10, v11]] with
// V^* H V diagonal.
struct Rotation {
    cplx v00, v01, v10, v11;
};

Rotation jacobi_rotation(double a, double d, cplx g) {
    const double b = std::abs(g);
    const cplx phase = g / b;  // g = b e^{i phi}
    const double tau = (d - a) / (2.0 * b);
    const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    // V = diag(1, conj(phase)) * [[c, s], [-s, c]]
    return {c, s, -s * std::conj(phase), c * std::conj(phase)};
}

}  // namespace

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
    data_.assign(static_cast<size_t>(rows) * cols, cplx{});
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows < 0 || cols < 0 || data_.size() != static_cast<size_t>(rows) * cols)
        throw DimensionError("entry count does not match rows*cols");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
    data_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_) throw DimensionError("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> d) {
    const int n = static_cast<int>(d.size());
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
    const int n = static_cast<int>(d.size());
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

cplx ComplexMatrix::trace() const {
    require_square(*this, "trace");
    cplx t = 0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::norm() const {
    double s = 0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double s = 0;
    for (const auto& v : data_) s = std::max(s, std::abs(v));
    return s;
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "operator+");
    for (size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "operator-");
    for (size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("operator*: inner dimensions differ");
    ComplexMatrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

std::vector<cplx> ComplexMatrix::apply(std::span<const cplx> v) const {
    if (static_cast<int>(v.size()) != cols_) throw DimensionError("apply: vector length mismatch");
    std::vector<cplx> r(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

ComplexMatrix ComplexMatrix::block(int r0, int c0, int nr, int nc) const {
    if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_)
        throw DimensionError("block: out of range");
    ComplexMatrix b(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void ComplexMatrix::set_block(int r0, int c0, const ComplexMatrix& b) {
    if (r0 < 0 || c0 < 0 || r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
        throw DimensionError("set_block: out of range");
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double d = 0;
    for (size_t k = 0; k < a.entries().size(); ++k)
        d = std::max(d, std::abs(a.entries()[k] - b.entries()[k]));
    return d;
}

ComplexMatrix outer(std::span<const cplx> u, std::span<const cplx> v) {
    ComplexMatrix r(static_cast<int>(u.size()), static_cast<int>(v.size()));
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r(i, j) = u[i] * std::conj(v[j]);
    return r;
}

ComplexMatrix herm_part(const ComplexMatrix& m) {
    require_square(m, "herm_part");
    return (m + m.adjoint()) * 0.5;
}

ComplexMatrix imag_part(const ComplexMatrix& m) {
    require_square(m, "imag_part");
    return (m - m.adjoint()) * cplx(0.0, -0.5);
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
    if (!m.square()) return false;
    const double scale = std::max(m.max_abs(), 1e-300);
    return max_abs_diff(m, m.adjoint()) <= rel_tol * scale;
}

LUDecomposition lu_decompose(const ComplexMatrix& a) {
    require_square(a, "lu_decompose");
    const int n = a.rows();
    LUDecomposition f{a, std::vector<int>(n), 1, std::numeric_limits<double>::infinity(), a.max_abs()};
    std::iota(f.perm.begin(), f.perm.end(), 0);
    auto& lu = f.lu;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(lu(k, k));
        for (int i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > best) best = std::abs(lu(i, k)), p = i;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
            std::swap(f.perm[k], f.perm[p]);
            f.sign = -f.sign;
        }
        f.smallest_pivot = std::min(f.smallest_pivot, best);
        if (best == 0.0) continue;
        const cplx piv = lu(k, k);
        for (int i = k + 1; i < n; ++i) {
            const cplx l = lu(i, k) / piv;
            lu(i, k) = l;
            if (l == cplx{}) continue;
            for (int j = k + 1; j < n; ++j) lu(i, j) -= l * lu(k, j);
        }
    }
    return f;
}

namespace {

void require_nonsingular(const LUDecomposition& f, const char* op) {
    if (!(f.smallest_pivot >= 1e-13 * f.scale) || f.scale == 0.0) {
        std::ostringstream os;
        os << op << ": matrix singular to tolerance (smallest pivot " << f.smallest_pivot
           << ", scale " << f.scale << ")";
        throw SingularMatrixError(os.str(), f.smallest_pivot);
    }
}

}  // namespace

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
    const auto f = lu_decompose(a);
    require_nonsingular(f, "solve");
    const int n = a.rows();
    if (b.rows() != n) throw DimensionError("solve: right-hand side row count mismatch");
    ComplexMatrix x(n, b.cols());
    for (int c = 0; c < b.cols(); ++c) {
        std::vector<cplx> y(n);
        for (int i = 0; i < n; ++i) {
            cplx s = b(f.perm[i], c);
            for (int j = 0; j < i; ++j) s -= f.lu(i, j) * y[j];
            y[i] = s;
        }
        for (int i = n - 1; i >= 0; --i) {
            cplx s = y[i];
            for (int j = i + 1; j < n; ++j) s -= f.lu(i, j) * x(j, c);
            x(i, c) = s / f.lu(i, i);
        }
    }
    return x;
}

ComplexMatrix inverse(const ComplexMatrix& a) { return solve(a, ComplexMatrix::identity(a.rows())); }

cplx det(const ComplexMatrix& a) {
    const auto f = lu_decompose(a);
    cplx d = static_cast<double>(f.sign);
    for (int i = 0; i < a.rows(); ++i) d *= f.lu(i, i);
    return d;
}

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m) {
    require_square(m, "hermitian_eigen");
    if (!is_hermitian(m, 1e-10)) throw ContractError("hermitian_eigen: input is not Hermitian");
    const int n = m.rows();
    ComplexMatrix a = herm_part(m);
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = std::max(a.norm(), 1e-300);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= 1e-16 * scale) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx g = a(p, q);
                if (std::abs(g) <= 1e-300) continue;
                const auto r = jacobi_rotation(a(p, p).real(), a(q, q).real(), g);
                // a <- a V (columns p, q)
                for (int k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * r.v00 + akq * r.v10;
                    a(k, q) = akp * r.v01 + akq * r.v11;
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * r.v00 + vkq * r.v10;
                    v(k, q) = vkp * r.v01 + vkq * r.v11;
                }
                // a <- V^* a (rows p, q)
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(r.v00) * apk + std::conj(r.v10) * aqk;
                    a(q, k) = std::conj(r.v01) * apk + std::conj(r.v11) * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
    HermitianEigensystem es{std::vector<double>(n), ComplexMatrix(n, n)};
    for (int c = 0; c < n; ++c) {
        es.values[c] = a(order[c], order[c]).real();
        for (int k = 0; k < n; ++k) es.vectors(k, c) = v(k, order[c]);
    }
    return es;
}

std::vector<double> hermitian_eigen(const ComplexMatrix& m) { return hermitian_eigensystem(m).values; }

HermitianInertia inertia(const ComplexMatrix& m, double zero_tol) {
    HermitianInertia in;
    for (double ev : hermitian_eigen(m)) {
        if (ev < -zero_tol)
            ++in.n_neg;
        else if (ev > zero_tol)
            ++in.n_pos;
        else
            ++in.n_zero;
    }
    return in;
}

double lambda_min(const ComplexMatrix& hermitian) { return hermitian_eigen(hermitian).front(); }

std::vector<double> singular_values(const ComplexMatrix& m) {
    if (m.empty()) return {};
    // Work on the taller orientation so the column pass is over the short side.
    ComplexMatrix a = m.rows() >= m.cols() ? m : m.adjoint();
    const int rows = a.rows(), n = a.cols();
    auto col_dot = [&](int p, int q) {
        cplx s = 0;
        for (int k = 0; k < rows; ++k) s += std::conj(a(k, p)) * a(k, q);
        return s;
    };
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double alpha = col_dot(p, p).real();
                const double beta = col_dot(q, q).real();
                const cplx gamma = col_dot(p, q);
                if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) || std::abs(gamma) == 0.0)
                    continue;
                rotated = true;
                const auto r = jacobi_rotation(alpha, beta, gamma);
                for (int k = 0; k < rows; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * r.v00 + akq * r.v10;
                    a(k, q) = akp * r.v01 + akq * r.v11;
                }
            }
        }
        if (!rotated) break;
    }
    std::vector<double> sv(n);
    for (int j = 0; j < n; ++j) sv[j] = std::sqrt(std::max(0.0, col_dot(j, j).real()));
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

int numeric_rank(const ComplexMatrix& m, double tau) {
    if (!(tau > 0)) throw ContractError("numeric_rank: tau must be positive");
    const auto sv = singular_values(m);
    if (sv.empty() || sv.front() == 0.0) return 0;
    return static_cast<int>(
        std::count_if(sv.begin(), sv.end(), [&](double s) { return s > tau * sv.front(); }));
}

}  // namespace weyl
