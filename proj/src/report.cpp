#include "weyl/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <thread>

#include "weyl/errors.hpp"

#ifndef WEYL_VERSION
#define WEYL_VERSION "0.0.0"
#endif

namespace weyl {

std::string tool_version() { return std::string("weyl ") + WEYL_VERSION; }

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<GridValue> evaluate_grid(const std::vector<cplx>& points,
                                     const std::function<ComplexMatrix(cplx)>& f, int jobs) {
    std::vector<GridValue> out(points.size());
    if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    jobs = std::min<int>(jobs, static_cast<int>(std::max<size_t>(1, points.size())));
    auto work = [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            out[i].z = points[i];
            try {
                out[i].value = f(points[i]);
            } catch (const Error& e) {
                out[i].error = e.what();
            }
        }
    };
    if (jobs == 1) {
        work(0, points.size());
        return out;
    }
    std::vector<std::thread> pool;
    const size_t chunk = (points.size() + jobs - 1) / jobs;
    for (int t = 0; t < jobs; ++t) {
        const size_t b = std::min(points.size(), t * chunk), e = std::min(points.size(), b + chunk);
        pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
    return out;
}

void write_grid_csv(std::ostream& os, const std::vector<GridValue>& grid, const std::string& symbol, int n) {
    os << "Re z,Im z";
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c) {
            const std::string idx = "(" + std::to_string(r) + "," + std::to_string(c) + ")";
            os << ',' << csv_field("Re " + symbol + idx) << ',' << csv_field("Im " + symbol + idx);
        }
    os << '\n';
    for (const auto& g : grid) {
        os << format_double(g.z.real()) << ',' << format_double(g.z.imag());
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                const cplx v = g.value ? (*g.value)(r, c) : cplx(NAN, NAN);
                os << ',' << format_double(v.real()) << ',' << format_double(v.imag());
            }
        os << '\n';
    }
}

ojson complex_to_json(cplx v) { return ojson::array({v.real(), v.imag()}); }

ojson matrix_to_json(const ComplexMatrix& m) {
    ojson rows = ojson::array();
    for (int r = 0; r < m.rows(); ++r) {
        ojson row = ojson::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ojson grid_json(const std::vector<GridValue>& grid, const std::string& symbol) {
    ojson pts = ojson::array();
    for (const auto& g : grid) {
        ojson p;
        p["z"] = complex_to_json(g.z);
        if (g.value)
            p[symbol] = matrix_to_json(*g.value);
        else
            p["error"] = g.error;
        pts.push_back(std::move(p));
    }
    return pts;
}

ojson spectrum_to_json(const SpectrumReport& r) {
    ojson j;
    j["method"] = to_string(r.method);
    if (r.is_rectangle)
        j["rect"] = r.window;
    else
        j["window"] = {r.window[0], r.window[1]};
    ojson ev = ojson::array();
    for (size_t i = 0; i < r.eigenvalues.size(); ++i) {
        const auto& e = r.eigenvalues[i];
        ojson x;
        x["location"] = complex_to_json(e.location);
        x["multiplicity"] = e.multiplicity;
        x["resolved"] = e.resolved;
        if (e.bracket) x["bracket"] = *e.bracket;
        if (r.oracle_delta) x["oracle_delta"] = (*r.oracle_delta)[i];
        ev.push_back(std::move(x));
    }
    j["eigenvalues"] = std::move(ev);
    if (!r.is_rectangle) j["poles"] = r.poles;
    if (r.neg_count) j["neg_count"] = *r.neg_count;
    if (r.complex_count) j["complex_count"] = *r.complex_count;
    if (r.oracle_eigenvalues) j["oracle_eigenvalues"] = *r.oracle_eigenvalues;
    j["evaluations"] = r.evaluations;
    return j;
}

ojson m_zero_to_json(const MZeroResult& r) {
    ojson j;
    j["value"] = matrix_to_json(r.value);
    j["method"] = to_string(r.method);
    j["est_error"] = r.est_error;
    return j;
}

ojson negative_count_to_json(const NegativeCount& c) {
    ojson j;
    j["kappa_M"] = c.kappa_M;
    if (c.kappa_oracle)
        j["kappa_oracle"] = *c.kappa_oracle;
    else
        j["kappa_oracle"] = nullptr;
    j["inertia"] = {{"negative", c.inertia.n_neg}, {"zero", c.inertia.n_zero}, {"positive", c.inertia.n_pos}};
    j["m_zero"] = m_zero_to_json(c.m_zero);
    return j;
}

std::string render_report(const std::string& command, const std::optional<std::string>& problem_hash,
                          const ojson& payload) {
    ojson j;
    j["tool"] = tool_version();
    j["command"] = command;
    if (problem_hash) j["problem_hash"] = *problem_hash;
    for (const auto& [k, v] : payload.items()) j[k] = v;
    return j.dump(2) + "\n";
}

}  // namespace weyl
