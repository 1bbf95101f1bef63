#pragma once

// JSON problem files: a model, an optional boundary operator B, an optional
// triplet transform and task parameters. Complex numbers are [re, im] pairs.

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "weyl/extensions.hpp"
#include "weyl/linalg.hpp"
#include "weyl/models.hpp"
#include "weyl/triplets.hpp"

namespace weyl {

struct PotentialDesc {
    std::string kind = "zero";  // zero | square_well | sampled_table | expression
    double depth = 0.0, width = 0.0;
    std::vector<double> nodes, values;
    std::string source;
    std::optional<double> domain_end;

    bool operator==(const PotentialDesc&) const = default;
};

struct ModelDesc {
    std::string kind;  // the ModelKind names, minus custom
    PotentialDesc potential;
    std::optional<double> h;  // half_line triplet parameter
    double b = 0.0;           // finite_interval length
    std::vector<double> a;    // operator_potential_halfline, strip
    double width = 3.141592653589793;
    double beta = 0.0;
    std::vector<double> betas;
    std::string truncation = "radiation";  // half_line: radiation | dirichlet
    std::optional<double> truncation_L;
    std::optional<ComplexMatrix> value;  // constant

    bool operator==(const ModelDesc&) const = default;
};

struct TransformDesc {
    ComplexMatrix U, X11, X12, X21, X22;
    bool operator==(const TransformDesc&) const = default;
};

/// Rectangular grid re0..re1 (n points) x im0..im1 (m points).
struct GridSpec {
    double re0 = 0, re1 = 0;
    int n = 0;
    double im0 = 0, im1 = 0;
    int m = 0;

    std::vector<cplx> points() const;  // real part fastest
    bool operator==(const GridSpec&) const = default;
};

struct TaskDesc {
    std::optional<std::array<double, 2>> window;
    int grid_n = 400;
    std::optional<std::array<double, 4>> rect;
    std::optional<GridSpec> grid;

    bool operator==(const TaskDesc&) const = default;
};

struct ProblemFile {
    ModelDesc model;
    std::optional<ComplexMatrix> boundary;
    std::optional<TransformDesc> transform;
    TaskDesc task;
    double oracle_L = 40.0;
    int oracle_n = 4000;

    bool operator==(const ProblemFile&) const = default;
};

/// Throws ParseError for malformed JSON and SchemaError (with a JSON-pointer
/// path) for content that does not match the schema.
ProblemFile parse_problem_text(const std::string& text);
ProblemFile parse_problem(const std::filesystem::path& path);

/// Canonical JSON text: fixed key order, complex entries as [re, im].
std::string serialize_problem(const ProblemFile& p);
/// FNV-1a 64 of the canonical text, as 16 hex digits.
std::string problem_hash(const ProblemFile& p);

WeylModel build_model(const ModelDesc& d);
std::optional<TripletTransform> build_transform(const ProblemFile& p);

/// The model and B of the problem in the frame selected by its transform.
struct ResolvedProblem {
    WeylModel model;
    std::optional<ComplexMatrix> B;
    OracleOptions oracle;
};
ResolvedProblem resolve(const ProblemFile& p);

/// Flag syntax: "re0:re1:n,im0:im1:m", "a:b", "a:b:c:d". Throw ParseError
/// with the offending column.
GridSpec parse_grid(const std::string& s);
std::array<double, 2> parse_window(const std::string& s);
std::array<double, 4> parse_rect(const std::string& s);

}  // namespace weyl
