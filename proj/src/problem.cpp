#include "weyl/problem.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "weyl/errors.hpp"

namespace weyl {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, size_t i) { return path + "/" + std::to_string(i); }

void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
    if (!j.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected an object");
    std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : j.items())
        if (!ok.count(k)) throw SchemaError(child(path, k), "unknown key");
}

const json& require(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) throw SchemaError(child(path, key), "required key is missing");
    return j.at(key);
}

double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
    return v;
}

int get_int(const json& j, const std::string& path, int lo) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    const auto v = j.get<long long>();
    if (v < lo || v > 100000000) throw SchemaError(path, "integer out of range (minimum " + std::to_string(lo) + ")");
    return static_cast<int>(v);
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string");
    return j.get<std::string>();
}

std::vector<double> get_numbers(const json& j, const std::string& path, size_t min_size = 1) {
    if (!j.is_array() || j.size() < min_size)
        throw SchemaError(path, "expected an array of at least " + std::to_string(min_size) + " numbers");
    std::vector<double> out;
    for (size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], child(path, i)));
    return out;
}

bool is_pair(const json& j) { return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(); }

cplx get_complex(const json& j, const std::string& path) {
    if (j.is_number()) return get_number(j, path);
    if (is_pair(j)) return {get_number(j[0], child(path, 0)), get_number(j[1], child(path, 1))};
    throw SchemaError(path, "expected a number or an [re, im] pair");
}

// number | [re, im] -> 1x1; [[...], ...] -> matrix
ComplexMatrix get_matrix(const json& j, const std::string& path) {
    if (j.is_number() || is_pair(j)) return ComplexMatrix::scalar(get_complex(j, path));
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw SchemaError(path, "expected a scalar, an [re, im] pair or an array of rows");
    const size_t rows = j.size(), cols = j[0].size();
    if (rows != cols) throw SchemaError(path, "matrix must be square");
    ComplexMatrix m(static_cast<int>(rows), static_cast<int>(cols));
    for (size_t r = 0; r < rows; ++r) {
        const auto rp = child(path, r);
        if (!j[r].is_array() || j[r].size() != cols) throw SchemaError(rp, "row length differs from the first row");
        for (size_t c = 0; c < cols; ++c) m(int(r), int(c)) = get_complex(j[r][c], child(rp, c));
    }
    return m;
}

PotentialDesc parse_potential(const json& j, const std::string& path) {
    PotentialDesc d;
    d.kind = get_string(require(j, path, "kind"), child(path, "kind"));
    if (d.kind == "zero") {
        allow_keys(j, path, {"kind", "domain_end"});
    } else if (d.kind == "square_well") {
        allow_keys(j, path, {"kind", "depth", "width", "domain_end"});
        d.depth = get_number(require(j, path, "depth"), child(path, "depth"));
        d.width = get_number(require(j, path, "width"), child(path, "width"));
        if (!(d.width > 0)) throw SchemaError(child(path, "width"), "must be positive");
    } else if (d.kind == "sampled_table") {
        allow_keys(j, path, {"kind", "nodes", "values", "domain_end"});
        d.nodes = get_numbers(require(j, path, "nodes"), child(path, "nodes"));
        d.values = get_numbers(require(j, path, "values"), child(path, "values"));
        if (d.nodes.size() != d.values.size()) throw SchemaError(child(path, "values"), "length differs from nodes");
        for (size_t i = 1; i < d.nodes.size(); ++i)
            if (!(d.nodes[i] > d.nodes[i - 1])) throw SchemaError(child(child(path, "nodes"), i), "nodes must increase");
    } else if (d.kind == "expression") {
        allow_keys(j, path, {"kind", "source", "domain_end"});
        d.source = get_string(require(j, path, "source"), child(path, "source"));
        try {
            PotentialExpr::parse(d.source);
        } catch (const ParseError& e) {
            throw SchemaError(child(path, "source"), e.what());
        }
    } else {
        throw SchemaError(child(path, "kind"), "unknown potential kind '" + d.kind + "'");
    }
    if (j.contains("domain_end")) {
        d.domain_end = get_number(j.at("domain_end"), child(path, "domain_end"));
        if (!(*d.domain_end > 0)) throw SchemaError(child(path, "domain_end"), "must be positive");
    }
    return d;
}

double get_beta(const json& j, const std::string& path) {
    const double b = get_number(j, path);
    if (!(b > 0.5 && b < 1.0)) throw SchemaError(path, "beta must lie in (0.5, 1)");
    return b;
}

std::vector<double> get_a(const json& j, const std::string& path) {
    auto a = get_numbers(j, path);
    for (size_t i = 0; i < a.size(); ++i)
        if (!(a[i] >= 1.0)) throw SchemaError(child(path, i), "entries of a must be >= 1");
    return a;
}

ModelDesc parse_model(const json& j, const std::string& path) {
    ModelDesc d;
    d.kind = get_string(require(j, path, "kind"), child(path, "kind"));
    const auto pot = [&] {
        if (j.contains("potential")) d.potential = parse_potential(j.at("potential"), child(path, "potential"));
    };
    if (d.kind == "half_line") {
        allow_keys(j, path, {"kind", "potential", "h", "truncation"});
        pot();
        if (j.contains("h")) d.h = get_number(j.at("h"), child(path, "h"));
        if (j.contains("truncation")) {
            const auto tp = child(path, "truncation");
            const auto& t = j.at("truncation");
            allow_keys(t, tp, {"mode", "L"});
            if (t.contains("mode")) {
                d.truncation = get_string(t.at("mode"), child(tp, "mode"));
                if (d.truncation != "radiation" && d.truncation != "dirichlet")
                    throw SchemaError(child(tp, "mode"), "expected 'radiation' or 'dirichlet'");
            }
            if (t.contains("L")) {
                d.truncation_L = get_number(t.at("L"), child(tp, "L"));
                if (!(*d.truncation_L > 0)) throw SchemaError(child(tp, "L"), "must be positive");
            }
        }
    } else if (d.kind == "radial_schrodinger") {
        allow_keys(j, path, {"kind", "potential"});
        pot();
    } else if (d.kind == "finite_interval") {
        allow_keys(j, path, {"kind", "potential", "b"});
        pot();
        d.b = get_number(require(j, path, "b"), child(path, "b"));
        if (!(d.b > 0)) throw SchemaError(child(path, "b"), "must be positive");
    } else if (d.kind == "operator_potential_halfline") {
        allow_keys(j, path, {"kind", "a"});
        d.a = get_a(require(j, path, "a"), child(path, "a"));
    } else if (d.kind == "strip") {
        allow_keys(j, path, {"kind", "a", "width"});
        d.a = get_a(require(j, path, "a"), child(path, "a"));
        if (j.contains("width")) {
            d.width = get_number(j.at("width"), child(path, "width"));
            if (!(d.width > 0)) throw SchemaError(child(path, "width"), "must be positive");
        }
    } else if (d.kind == "corner" || d.kind == "sector") {
        allow_keys(j, path, {"kind", "beta"});
        d.beta = get_beta(require(j, path, "beta"), child(path, "beta"));
    } else if (d.kind == "multi_corner") {
        allow_keys(j, path, {"kind", "betas"});
        const auto& b = require(j, path, "betas");
        d.betas = get_numbers(b, child(path, "betas"));
        for (size_t i = 0; i < d.betas.size(); ++i) get_beta(b[i], child(child(path, "betas"), i));
    } else if (d.kind == "constant") {
        allow_keys(j, path, {"kind", "value"});
        d.value = get_matrix(require(j, path, "value"), child(path, "value"));
    } else {
        throw SchemaError(child(path, "kind"), "unknown model kind '" + d.kind + "'");
    }
    return d;
}

int model_dimension(const ModelDesc& d) {
    if (d.kind == "finite_interval") return 2;
    if (d.kind == "operator_potential_halfline") return static_cast<int>(d.a.size());
    if (d.kind == "strip") return 2 * static_cast<int>(d.a.size());
    if (d.kind == "multi_corner") return static_cast<int>(d.betas.size());
    if (d.kind == "constant") return d.value->rows();
    return 1;
}

std::array<double, 4> get_array4(const json& j, const std::string& path) {
    const auto v = get_numbers(j, path, 4);
    if (v.size() != 4) throw SchemaError(path, "expected exactly 4 numbers");
    return {v[0], v[1], v[2], v[3]};
}

GridSpec parse_grid_json(const json& j, const std::string& path) {
    allow_keys(j, path, {"re", "im"});
    GridSpec g;
    for (const char* axis : {"re", "im"}) {
        const auto ap = child(path, axis);
        const auto& a = require(j, path, axis);
        if (!a.is_array() || a.size() != 3) throw SchemaError(ap, "expected [start, end, count]");
        const double s = get_number(a[0], child(ap, 0)), e = get_number(a[1], child(ap, 1));
        const int c = get_int(a[2], child(ap, 2), 1);
        if (axis[0] == 'r')
            g.re0 = s, g.re1 = e, g.n = c;
        else
            g.im0 = s, g.im1 = e, g.m = c;
    }
    return g;
}

TaskDesc parse_task(const json& j, const std::string& path) {
    allow_keys(j, path, {"window", "grid_n", "rect", "grid"});
    TaskDesc t;
    if (j.contains("window")) {
        const auto v = get_numbers(j.at("window"), child(path, "window"), 2);
        if (v.size() != 2 || !(v[0] < v[1])) throw SchemaError(child(path, "window"), "expected [a, b] with a < b");
        t.window = std::array<double, 2>{v[0], v[1]};
    }
    if (j.contains("grid_n")) t.grid_n = get_int(j.at("grid_n"), child(path, "grid_n"), 64);
    if (j.contains("rect")) t.rect = get_array4(j.at("rect"), child(path, "rect"));
    if (j.contains("grid")) t.grid = parse_grid_json(j.at("grid"), child(path, "grid"));
    return t;
}

ojson complex_json(cplx v) { return ojson::array({v.real(), v.imag()}); }

ojson matrix_json(const ComplexMatrix& m) {
    ojson rows = ojson::array();
    for (int r = 0; r < m.rows(); ++r) {
        ojson row = ojson::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

ojson potential_json(const PotentialDesc& d) {
    ojson j;
    j["kind"] = d.kind;
    if (d.kind == "square_well") {
        j["depth"] = d.depth;
        j["width"] = d.width;
    } else if (d.kind == "sampled_table") {
        j["nodes"] = d.nodes;
        j["values"] = d.values;
    } else if (d.kind == "expression") {
        j["source"] = d.source;
    }
    if (d.domain_end) j["domain_end"] = *d.domain_end;
    return j;
}

ojson model_json(const ModelDesc& d) {
    ojson j;
    j["kind"] = d.kind;
    if (d.kind == "half_line" || d.kind == "radial_schrodinger" || d.kind == "finite_interval")
        j["potential"] = potential_json(d.potential);
    if (d.kind == "half_line") {
        if (d.h) j["h"] = *d.h;
        ojson t;
        t["mode"] = d.truncation;
        if (d.truncation_L) t["L"] = *d.truncation_L;
        j["truncation"] = t;
    }
    if (d.kind == "finite_interval") j["b"] = d.b;
    if (d.kind == "operator_potential_halfline" || d.kind == "strip") j["a"] = d.a;
    if (d.kind == "strip") j["width"] = d.width;
    if (d.kind == "corner" || d.kind == "sector") j["beta"] = d.beta;
    if (d.kind == "multi_corner") j["betas"] = d.betas;
    if (d.kind == "constant") j["value"] = matrix_json(*d.value);
    return j;
}

std::pair<int, int> line_column(const std::string& text, size_t byte) {
    int line = 1, col = 1;
    for (size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

PotentialSpec build_potential(const PotentialDesc& d) {
    const double end = d.domain_end.value_or(PotentialSpec::kInfinity);
    if (d.kind == "zero") return PotentialSpec::zero(end);
    if (d.kind == "square_well") return PotentialSpec::square_well(d.depth, d.width, end);
    if (d.kind == "sampled_table") return PotentialSpec::sampled_table(d.nodes, d.values, end);
    return PotentialSpec::expression(d.source, end);
}

double parse_double_field(const std::string& s, size_t begin, size_t end, const std::string& whole) {
    double v = 0;
    const char* first = s.data() + begin;
    const char* last = s.data() + end;
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v))
        throw ParseError("cannot read a number in '" + whole + "' at column " + std::to_string(begin + 1), 1,
                         static_cast<int>(begin + 1));
    return v;
}

std::vector<std::pair<size_t, size_t>> split(const std::string& s, char sep, size_t begin, size_t end) {
    std::vector<std::pair<size_t, size_t>> parts;
    size_t start = begin;
    for (size_t i = begin; i <= end; ++i)
        if (i == end || s[i] == sep) {
            parts.emplace_back(start, i);
            start = i + 1;
        }
    return parts;
}

std::vector<double> parse_fields(const std::string& s, size_t begin, size_t end, size_t count) {
    const auto parts = split(s, ':', begin, end);
    if (parts.size() != count) {
        std::ostringstream os;
        os << "expected " << count << " ':'-separated fields in '" << s << "'";
        throw ParseError(os.str(), 1, static_cast<int>(begin + 1));
    }
    std::vector<double> v;
    for (const auto& [b, e] : parts) v.push_back(parse_double_field(s, b, e, s));
    return v;
}

}  // namespace

std::vector<cplx> GridSpec::points() const {
    std::vector<cplx> pts;
    pts.reserve(static_cast<size_t>(n) * m);
    for (int j = 0; j < m; ++j) {
        const double im = m == 1 ? im0 : im0 + (im1 - im0) * j / (m - 1);
        for (int i = 0; i < n; ++i) {
            const double re = n == 1 ? re0 : re0 + (re1 - re0) * i / (n - 1);
            pts.emplace_back(re, im);
        }
    }
    return pts;
}

ProblemFile parse_problem_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte);
        std::ostringstream os;
        os << "invalid JSON at line " << line << ", column " << col << ": " << e.what();
        throw ParseError(os.str(), line, col);
    }
    allow_keys(j, "", {"model", "boundary", "transform", "task", "oracle"});
    ProblemFile p;
    p.model = parse_model(require(j, "", "model"), "/model");
    const int n = model_dimension(p.model);
    if (j.contains("boundary")) {
        p.boundary = get_matrix(j.at("boundary"), "/boundary");
        if (p.boundary->rows() != n) {
            std::ostringstream os;
            os << "B is " << p.boundary->rows() << "x" << p.boundary->rows() << " but the model has dimension " << n;
            throw SchemaError("/boundary", os.str());
        }
    }
    if (j.contains("transform")) {
        const auto& t = j.at("transform");
        allow_keys(t, "/transform", {"U", "X11", "X12", "X21", "X22"});
        TransformDesc d;
        ComplexMatrix* slots[] = {&d.U, &d.X11, &d.X12, &d.X21, &d.X22};
        const char* names[] = {"U", "X11", "X12", "X21", "X22"};
        for (int k = 0; k < 5; ++k) {
            const auto path = child(std::string("/transform"), names[k]);
            *slots[k] = get_matrix(require(t, "/transform", names[k]), path);
            if (slots[k]->rows() != n) throw SchemaError(path, "block dimension differs from the model dimension");
        }
        try {
            make_transform(d.U, d.X11, d.X12, d.X21, d.X22);
        } catch (const ConstraintError& e) {
            throw SchemaError("/transform", e.what());
        }
        p.transform = std::move(d);
    }
    if (j.contains("task")) p.task = parse_task(j.at("task"), "/task");
    if (j.contains("oracle")) {
        const auto& o = j.at("oracle");
        allow_keys(o, "/oracle", {"L", "n"});
        if (o.contains("L")) {
            p.oracle_L = get_number(o.at("L"), "/oracle/L");
            if (!(p.oracle_L > 0)) throw SchemaError("/oracle/L", "must be positive");
        }
        if (o.contains("n")) p.oracle_n = get_int(o.at("n"), "/oracle/n", 100);
    }
    return p;
}

ProblemFile parse_problem(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open problem file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem_text(ss.str());
}

std::string serialize_problem(const ProblemFile& p) {
    ojson j;
    j["model"] = model_json(p.model);
    if (p.boundary) j["boundary"] = matrix_json(*p.boundary);
    if (p.transform) {
        ojson t;
        t["U"] = matrix_json(p.transform->U);
        t["X11"] = matrix_json(p.transform->X11);
        t["X12"] = matrix_json(p.transform->X12);
        t["X21"] = matrix_json(p.transform->X21);
        t["X22"] = matrix_json(p.transform->X22);
        j["transform"] = t;
    }
    ojson task;
    if (p.task.window) task["window"] = *p.task.window;
    task["grid_n"] = p.task.grid_n;
    if (p.task.rect) task["rect"] = *p.task.rect;
    if (p.task.grid) {
        const auto& g = *p.task.grid;
        task["grid"] = {{"re", {g.re0, g.re1, g.n}}, {"im", {g.im0, g.im1, g.m}}};
    }
    j["task"] = task;
    j["oracle"] = {{"L", p.oracle_L}, {"n", p.oracle_n}};
    return j.dump(2) + "\n";
}

std::string problem_hash(const ProblemFile& p) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : serialize_problem(p)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

WeylModel build_model(const ModelDesc& d) {
    if (d.kind == "half_line") {
        sl::HalfLineOptions opts;
        opts.truncation = d.truncation == "dirichlet" ? sl::Truncation::dirichlet : sl::Truncation::radiation;
        opts.L = d.truncation_L;
        return WeylModel::half_line(build_potential(d.potential), d.h ? sl::HTriplet::finite(*d.h) : sl::HTriplet{},
                                    opts);
    }
    if (d.kind == "radial_schrodinger") return WeylModel::radial_schrodinger(build_potential(d.potential));
    if (d.kind == "finite_interval") return WeylModel::finite_interval(build_potential(d.potential), d.b);
    if (d.kind == "operator_potential_halfline") return WeylModel::operator_potential_halfline(d.a);
    if (d.kind == "strip") return WeylModel::strip(d.a, d.width);
    if (d.kind == "corner") return WeylModel::corner(d.beta);
    if (d.kind == "sector") return WeylModel::sector(d.beta);
    if (d.kind == "multi_corner") return WeylModel::multi_corner(d.betas);
    if (d.kind == "constant") return WeylModel::constant(*d.value);
    throw ContractError("build_model: unknown model kind '" + d.kind + "'");
}

std::optional<TripletTransform> build_transform(const ProblemFile& p) {
    if (!p.transform) return std::nullopt;
    const auto& t = *p.transform;
    return make_transform(t.U, t.X11, t.X12, t.X21, t.X22);
}

ResolvedProblem resolve(const ProblemFile& p) {
    ResolvedProblem r{build_model(p.model), p.boundary, OracleOptions{p.oracle_L, p.oracle_n}};
    if (const auto t = build_transform(p)) {
        r.model = transformed_model(r.model, *t);
        if (r.B) r.B = transform_boundary_operator(*t, *r.B);
    }
    return r;
}

GridSpec parse_grid(const std::string& s) {
    const auto axes = split(s, ',', 0, s.size());
    if (axes.size() != 2) throw ParseError("grid must read 're0:re1:n,im0:im1:m', got '" + s + "'", 1, 1);
    GridSpec g;
    const auto re = parse_fields(s, axes[0].first, axes[0].second, 3);
    const auto im = parse_fields(s, axes[1].first, axes[1].second, 3);
    auto count = [&](double v, size_t col) {
        if (v != std::floor(v) || v < 1 || v > 1e6)
            throw ParseError("grid counts must be positive integers in '" + s + "'", 1, static_cast<int>(col + 1));
        return static_cast<int>(v);
    };
    g.re0 = re[0], g.re1 = re[1], g.n = count(re[2], axes[0].first);
    g.im0 = im[0], g.im1 = im[1], g.m = count(im[2], axes[1].first);
    return g;
}

std::array<double, 2> parse_window(const std::string& s) {
    const auto v = parse_fields(s, 0, s.size(), 2);
    if (!(v[0] < v[1])) throw ParseError("window 'a:b' needs a < b, got '" + s + "'", 1, 1);
    return {v[0], v[1]};
}

std::array<double, 4> parse_rect(const std::string& s) {
    const auto v = parse_fields(s, 0, s.size(), 4);
    if (!(v[0] < v[1]) || !(v[2] < v[3]))
        throw ParseError("rect 'a:b:c:d' needs a < b and c < d, got '" + s + "'", 1, 1);
    return {v[0], v[1], v[2], v[3]};
}

}  // namespace weyl
