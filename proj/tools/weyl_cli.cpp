#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "weyl/charfun.hpp"
#include "weyl/errors.hpp"
#include "weyl/extensions.hpp"
#include "weyl/problem.hpp"
#include "weyl/report.hpp"
#include "weyl/verify.hpp"

using namespace weyl;

namespace {

constexpr int kInputError = 1;
constexpr int kVerificationFailure = 2;

struct Options {
    std::string problem;
    std::string grid, window, rect;
    std::string out;
    std::string format = "json";
    std::string suite = "all";
    std::uint64_t seed = 1;
    int jobs = 0;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw Error("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct Loaded {
    ProblemFile file;
    ResolvedProblem resolved;
    std::string hash;
};

Loaded load(const Options& o) {
    if (o.problem.empty()) throw ContractError("--problem is required");
    Loaded l{parse_problem(o.problem), {WeylModel::constant(ComplexMatrix::zeros(1, 1)), std::nullopt, {}}, {}};
    l.resolved = resolve(l.file);
    l.hash = problem_hash(l.file);
    return l;
}

ExtensionSpec extension(const Loaded& l) {
    if (!l.resolved.B) throw ContractError("the problem file has no \"boundary\" entry");
    return {l.resolved.model, *l.resolved.B};
}

GridSpec grid_of(const Options& o, const Loaded& l) {
    if (!o.grid.empty()) return parse_grid(o.grid);
    if (l.file.task.grid) return *l.file.task.grid;
    throw ContractError("a grid is required (--grid or task.grid)");
}

void emit_grid(const Options& o, const Loaded& l, const std::string& command, const std::string& symbol, int n,
               const std::function<ComplexMatrix(cplx)>& f) {
    const auto grid = evaluate_grid(grid_of(o, l).points(), f, o.jobs);
    Output out(o.out);
    if (o.format == "csv") {
        write_grid_csv(out.stream(), grid, symbol, n);
    } else {
        ojson payload;
        payload["points"] = grid_json(grid, symbol);
        out.stream() << render_report(command, l.hash, payload);
    }
}

int cmd_eval(const Options& o) {
    const auto l = load(o);
    emit_grid(o, l, "eval", "M", l.resolved.model.dimension(), [&](cplx z) { return l.resolved.model.evaluate(z); });
    return 0;
}

int cmd_charfn(const Options& o) {
    const auto l = load(o);
    const auto spec = extension(l);
    const auto col = factor_colligation(spec.B);
    const int n = col.rank() == spec.B.rows() ? spec.B.rows() : col.rank();
    emit_grid(o, l, "charfn", "W", n, [&](cplx z) { return char_function(spec, z); });
    return 0;
}

int cmd_spectrum(const Options& o) {
    const auto l = load(o);
    const auto spec = extension(l);
    std::optional<std::array<double, 4>> rect;
    std::optional<std::array<double, 2>> window;
    if (!o.rect.empty())
        rect = parse_rect(o.rect);
    else if (!o.window.empty())
        window = parse_window(o.window);
    else if (l.file.task.rect)
        rect = l.file.task.rect;
    else if (l.file.task.window)
        window = l.file.task.window;
    else
        throw ContractError("spectrum needs --window or --rect (or task.window / task.rect)");

    SpectrumReport rep;
    if (rect) {
        rep.is_rectangle = true;
        rep.window = *rect;
        rep.method = SpectrumMethod::argument_principle;
        rep.complex_count = count_complex_eigenvalues(spec, *rect);
    } else {
        rep = point_spectrum_real(spec, (*window)[0], (*window)[1], l.file.task.grid_n);
        if (spec.is_hermitian()) {
            try {
                rep.neg_count = negative_count(spec, l.resolved.oracle).kappa_M;
            } catch (const Error&) {
                // M(0) unavailable for this model; the count is optional
            }
        }
    }
    Output out(o.out);
    if (o.format == "csv" && rep.is_rectangle) {
        auto& os = out.stream();
        os << "re0,re1,im0,im1,count\n";
        for (double v : rep.window) os << format_double(v) << ',';
        os << *rep.complex_count << '\n';
    } else if (o.format == "csv") {
        auto& os = out.stream();
        os << "Re lambda,Im lambda,multiplicity,resolved,oracle_delta\n";
        for (size_t i = 0; i < rep.eigenvalues.size(); ++i) {
            const auto& e = rep.eigenvalues[i];
            os << format_double(e.location.real()) << ',' << format_double(e.location.imag()) << ',' << e.multiplicity
               << ',' << (e.resolved ? "true" : "false") << ','
               << (rep.oracle_delta ? format_double((*rep.oracle_delta)[i]) : "") << '\n';
        }
    } else {
        out.stream() << render_report("spectrum", l.hash, spectrum_to_json(rep));
    }
    return 0;
}

int cmd_negcount(const Options& o) {
    const auto l = load(o);
    const auto c = negative_count(extension(l), l.resolved.oracle);
    Output out(o.out);
    out.stream() << render_report("negcount", l.hash, negative_count_to_json(c));
    return c.kappa_oracle && *c.kappa_oracle != c.kappa_M ? kVerificationFailure : 0;
}

int cmd_krein(const Options& o) {
    const auto l = load(o);
    const auto k = krein_extension(l.resolved.model);
    const auto c = negative_count(k, l.resolved.oracle);
    ojson payload;
    payload["B"] = matrix_to_json(k.B);
    payload["m_zero"] = m_zero_to_json(c.m_zero);
    payload["kappa_M"] = c.kappa_M;
    if (c.kappa_oracle)
        payload["kappa_oracle"] = *c.kappa_oracle;
    else
        payload["kappa_oracle"] = nullptr;
    if (const auto ev = oracle_min_eigenvalue(k, l.resolved.oracle)) payload["oracle_min_eigenvalue"] = *ev;
    Output out(o.out);
    out.stream() << render_report("krein", l.hash, payload);
    return 0;
}

int cmd_verify(const Options& o) {
    const auto results = run_suites(o.suite, o.seed, o.jobs);
    ojson payload = suites_to_json(results);
    payload["seed"] = o.seed;
    Output out(o.out);
    out.stream() << render_report("verify", std::nullopt, payload);
    bool ok = true;
    for (const auto& r : results) {
        std::cerr << (r.passed() ? "pass " : "FAIL ") << r.name << " (" << r.assertions.size() << " assertions)\n";
        ok = ok && r.passed();
    }
    std::cerr << payload["suites_passed"].get<int>() << "/" << results.size() << " suites passed\n";
    return ok ? 0 : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weyl functions, spectra and characteristic functions of boundary-value problems"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);
    Options o;

    auto add_problem = [&](CLI::App* c) { c->add_option("--problem", o.problem, "problem file (JSON)")->required(); };
    auto add_output = [&](CLI::App* c) {
        c->add_option("--out", o.out, "output file (default: stdout)");
        c->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };
    auto add_jobs = [&](CLI::App* c) {
        c->add_option("--jobs", o.jobs, "worker threads (default: logical cores)")->check(CLI::NonNegativeNumber);
    };
    const std::string csv_note =
        "CSV columns: Re z, Im z, then Re and Im of every matrix entry in row-major order.";

    auto* eval = app.add_subcommand("eval", "M(z) on a grid.\n" + csv_note);
    add_problem(eval);
    eval->add_option("--grid", o.grid, "\"re0:re1:n,im0:im1:m\"");
    add_output(eval);
    add_jobs(eval);

    auto* spectrum = app.add_subcommand(
        "spectrum", "Eigenvalues of A_B on a real window or their count in a complex rectangle.\n"
                    "CSV columns: Re lambda, Im lambda, multiplicity, resolved, oracle_delta.");
    add_problem(spectrum);
    spectrum->add_option("--window", o.window, "\"a:b\" below the essential spectrum");
    spectrum->add_option("--rect", o.rect, "\"re0:re1:im0:im1\" in the upper half-plane");
    add_output(spectrum);

    auto* negcount = app.add_subcommand("negcount", "Negative eigenvalue count of A_B from B - M(0) and the oracle");
    add_problem(negcount);
    negcount->add_option("--out", o.out, "output file (default: stdout)");

    auto* krein = app.add_subcommand("krein", "The extension B = M(0)");
    add_problem(krein);
    krein->add_option("--out", o.out, "output file (default: stdout)");

    auto* charfn = app.add_subcommand("charfn", "Characteristic function W(z) on a grid.\n" + csv_note);
    add_problem(charfn);
    charfn->add_option("--grid", o.grid, "\"re0:re1:n,im0:im1:m\"");
    add_output(charfn);
    add_jobs(charfn);

    auto* verify = app.add_subcommand("verify", "Run the invariant suites");
    verify->add_option("--suite", o.suite, "suite name or all");
    verify->add_option("--seed", o.seed, "random seed");
    verify->add_option("--out", o.out, "output file (default: stdout)");
    add_jobs(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kInputError;
    }

    try {
        if (*eval) return cmd_eval(o);
        if (*spectrum) return cmd_spectrum(o);
        if (*negcount) return cmd_negcount(o);
        if (*krein) return cmd_krein(o);
        if (*charfn) return cmd_charfn(o);
        if (*verify) return cmd_verify(o);
    } catch (const ParseError& e) {
        std::cerr << "weyl: input error: " << e.what() << " (line " << e.line() << ", column " << e.column() << ")\n";
        return kInputError;
    } catch (const SchemaError& e) {
        std::cerr << "weyl: input error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        std::cerr << "weyl: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
