#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace weyl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// A matrix was singular to working tolerance.
class SingularMatrixError : public Error {
public:
    SingularMatrixError(const std::string& what, double smallest_pivot)
        : Error(what), smallest_pivot_(smallest_pivot) {}
    double smallest_pivot() const noexcept { return smallest_pivot_; }

private:
    double smallest_pivot_;
};

/// A documented precondition (Hermitian input, positive tolerance, ...) was violated.
class ContractError : public Error {
public:
    using Error::Error;
};

class PoleError : public Error {
public:
    PoleError(const std::string& what, std::complex<double> z) : Error(what), z_(z) {}
    std::complex<double> z() const noexcept { return z_; }

private:
    std::complex<double> z_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double bound) : Error(what), bound_(bound) {}
    double estimated_bound() const noexcept { return bound_; }

private:
    double bound_;
};

class StiffnessError : public Error {
public:
    StiffnessError(const std::string& what, double location) : Error(what), location_(location) {}
    double location() const noexcept { return location_; }

private:
    double location_;
};

class ConstraintError : public Error {
public:
    using Error::Error;
};

/// M(x) has no finite limit as x -> 0-.
class UnboundedLimitError : public Error {
public:
    using Error::Error;
};

/// det(M(z) - B) vanishes (numerically) on a counting contour.
class BoundaryZeroError : public Error {
public:
    BoundaryZeroError(const std::string& what, std::complex<double> z) : Error(what), z_(z) {}
    std::complex<double> z() const noexcept { return z_; }

private:
    std::complex<double> z_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(what), line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

class SchemaError : public Error {
public:
    SchemaError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Im B = 0: the characteristic function is identically I.
class DegenerateColligationError : public Error {
public:
    using Error::Error;
};

}  // namespace weyl
