#pragma once

// Output formatting shared by the CLI and the verify suites: CSV grids and
// deterministic JSON reports.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "weyl/charfun.hpp"
#include "weyl/extensions.hpp"
#include "weyl/linalg.hpp"
#include "weyl/models.hpp"

namespace weyl {

using ojson = nlohmann::ordered_json;

/// "weyl <version>".
std::string tool_version();

/// Shortest decimal text that reads back to the same double; nan, inf, -inf.
std::string format_double(double v);
/// RFC-4180 field: quoted when it holds a comma, quote, CR or LF.
std::string csv_field(std::string_view s);

struct GridValue {
    cplx z;
    std::optional<ComplexMatrix> value;
    std::string error;  // set when value is empty
};

/// f at every point, split over `jobs` threads (0: hardware concurrency).
/// Library errors at a point are recorded in GridValue::error.
std::vector<GridValue> evaluate_grid(const std::vector<cplx>& points,
                                     const std::function<ComplexMatrix(cplx)>& f, int jobs);

/// Header "Re z,Im z,Re S(1,1),Im S(1,1),...", one row per point, entries
/// row-major; failed points are written as nan.
void write_grid_csv(std::ostream& os, const std::vector<GridValue>& grid, const std::string& symbol, int n);
ojson grid_json(const std::vector<GridValue>& grid, const std::string& symbol);

ojson complex_to_json(cplx v);
ojson matrix_to_json(const ComplexMatrix& m);
ojson spectrum_to_json(const SpectrumReport& r);
ojson negative_count_to_json(const NegativeCount& c);
ojson m_zero_to_json(const MZeroResult& r);

/// Adds "tool" and "problem_hash" (when given) ahead of the payload and
/// renders with two-space indentation and a trailing newline.
std::string render_report(const std::string& command, const std::optional<std::string>& problem_hash,
                          const ojson& payload);

}  // namespace weyl
