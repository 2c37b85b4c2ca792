#include "peri_couple/cli.hpp"

#include "peri_couple/fraction.hpp"
#include "peri_couple/matrix_io.hpp"
#include "peri_couple/studies.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace peri_couple::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
    std::vector<std::string> schemes;
    std::string problem = "quartic_mixed";
    std::string a = "1";
    std::string b = "2";
    std::string ell = "3";
    std::vector<std::string> deltas;
    std::vector<int> ms;
    std::string h;
    std::vector<std::string> kappas;
    std::vector<std::string> bcs;
    std::string out = ".";
    std::string format = "csv";
    std::string layout = "inclusive";
    bool dump_matrix = false;
};

// Raised while turning options into cases; always maps to exit code 2.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Fraction fraction_arg(const std::string& name, const std::string& text) {
    const auto f = parse_fraction(text);
    if (!f) {
        throw SpecError("--" + name + ": cannot read '" + text + "' as a number or fraction");
    }
    return *f;
}

std::vector<Fraction> fraction_list(const std::string& name, const std::vector<std::string>& texts) {
    std::vector<Fraction> out;
    for (const auto& t : texts) {
        out.push_back(fraction_arg(name, t));
    }
    return out;
}

std::vector<Fraction> default_deltas(const std::vector<std::string>& given) {
    if (!given.empty()) {
        return fraction_list("delta", given);
    }
    return {{1, 8}, {1, 16}, {1, 32}, {1, 64}};
}

SchemeKind scheme_arg(const std::string& text) {
    const auto s = parse_scheme(text);
    if (!s) {
        throw SpecError("--scheme: unknown scheme '" + text + "' (fdm, mdcm, mscm, vhcm)");
    }
    return *s;
}

std::vector<SchemeKind> scheme_list(const std::vector<std::string>& given, std::vector<SchemeKind> fallback) {
    if (given.empty()) {
        return fallback;
    }
    std::vector<SchemeKind> out;
    for (const auto& s : given) {
        out.push_back(scheme_arg(s));
    }
    return out;
}

StressRowLayout layout_arg(const std::string& text) {
    const auto l = parse_stress_layout(text);
    if (!l) {
        throw SpecError("--mscm-layout: expected inclusive or exclusive, got '" + text + "'");
    }
    return *l;
}

GridConfig geometry(const Options& o) {
    GridConfig g;
    g.a = fraction_arg("a", o.a).value();
    g.b = fraction_arg("b", o.b).value();
    g.ell = fraction_arg("ell", o.ell).value();
    return g;
}

GridConfig with_horizon(GridConfig g, const Fraction& delta, int m) {
    if (m < 1) {
        throw SpecError("--m: horizon ratio must be a positive integer");
    }
    if (delta.num <= 0) {
        throw SpecError("--delta: horizon must be positive");
    }
    g.m = m;
    g.h = static_cast<double>(delta.num) / static_cast<double>(delta.den * m);
    return g;
}

int thread_cap() {
    const char* env = std::getenv("PERI_COUPLE_THREADS");
    if (env == nullptr || *env == '\0') {
        return 0;
    }
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 4096) {
        throw SpecError(std::string("PERI_COUPLE_THREADS must be a positive integer, got '") + env + "'");
    }
    return static_cast<int>(v);
}

class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    void write(const fs::path& path, char sep) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot open " + path.string() + " for writing");
        }
        write_row(out, header_, sep);
        for (const auto& r : rows_) {
            write_row(out, r, sep);
        }
    }

private:
    static void write_row(std::ostream& out, const std::vector<std::string>& row, char sep) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j > 0) {
                out << sep;
            }
            out << row[j];
        }
        out << '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string num(double v) { return format_number(v); }

std::string optional_num(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

struct OutputSpec {
    fs::path dir;
    char sep = ',';
    std::string ext = ".csv";

    fs::path file(const std::string& stem) const { return dir / (stem + ext); }
};

OutputSpec output_spec(const Options& o) {
    if (o.format != "csv" && o.format != "tsv") {
        throw SpecError("--format: expected csv or tsv, got '" + o.format + "'");
    }
    return {fs::path(o.out), o.format == "csv" ? ',' : '\t', "." + o.format};
}

void validate_all(const std::vector<CaseSpec>& cases) {
    for (const auto& c : cases) {
        try {
            validate_case(c);
        } catch (const Error& e) {
            std::ostringstream msg;
            msg << to_string(c.scheme.kind) << " case delta=" << format_number(c.grid.delta()) << " m=" << c.grid.m
                << ": " << e.what();
            throw SpecError(msg.str());
        }
    }
}

std::optional<double> single_kappa(const Options& o) {
    if (o.kappas.empty()) {
        return std::nullopt;
    }
    if (o.kappas.size() > 1) {
        throw SpecError("--kappa: this command takes a single value");
    }
    const double k = fraction_arg("kappa", o.kappas.front()).value();
    if (!(k > 0.0)) {
        throw SpecError("--kappa: bond stiffness must be positive");
    }
    return k;
}

// Each command validates in `prepare`, which returns the work to run.
using Work = std::function<void()>;

Work prepare_solve(const Options& o, std::ostream& out) {
    if (o.schemes.size() > 1) {
        throw SpecError("solve: pass a single --scheme");
    }
    const SchemeKind kind = o.schemes.empty() ? SchemeKind::mdcm : scheme_arg(o.schemes.front());
    if (o.ms.size() > 1 || o.deltas.size() > 1) {
        throw SpecError("solve: pass a single --delta and --m");
    }
    const int m = o.ms.empty() ? (kind == SchemeKind::fdm ? 1 : 2) : o.ms.front();
    GridConfig g = geometry(o);
    if (!o.h.empty()) {
        const Fraction h = fraction_arg("h", o.h);
        g = with_horizon(g, {h.num * m, h.den}, m);
        if (!o.deltas.empty() && std::abs(fraction_arg("delta", o.deltas.front()).value() - g.delta()) >
                                     1e-12 * g.delta()) {
            throw SpecError("--delta must equal m * h when both --h and --delta are given");
        }
    } else if (!o.deltas.empty()) {
        g = with_horizon(g, fraction_arg("delta", o.deltas.front()), m);
    } else {
        throw SpecError("solve: give --delta (with --m) or --h");
    }
    CouplingScheme scheme{kind, single_kappa(o), layout_arg(o.layout)};
    const CaseSpec spec{scheme, o.problem, g};
    validate_all({spec});
    const OutputSpec files = output_spec(o);
    const bool dump = o.dump_matrix;

    return [spec, files, dump, &out] {
        const ManufacturedProblem problem = catalog_get(spec.problem);
        const Grid grid = build_grid(spec.grid);
        const LinearSystem system = assemble(grid, problem, spec.scheme);
        const Solution coupled = solve_system(grid, system, spec.scheme.kind);
        const Solution fdm = solve(grid, problem, CouplingScheme::of(SchemeKind::fdm));
        const ErrorField field = delta_field(coupled, fdm);
        const double dmax = delta_max(field);
        const auto v = v_reference_for(spec.scheme.kind, problem, spec.grid);
        const double v_max = v ? v->v_max() : 0.0;

        Table solution({"k", "x", "model", "value"});
        for (int i = 0; i < coupled.dofs.N(); ++i) {
            const DofSite site = coupled.dofs.site(i);
            solution.add({std::to_string(site.k), num(grid.x(site.k)), std::string(to_string(site.model)),
                          num(coupled.values[static_cast<std::size_t>(i)])});
        }
        Table delta({"x", "delta"});
        for (int k = 0; k <= grid.n(); ++k) {
            delta.add({num(grid.x(k)), num(field.values[static_cast<std::size_t>(k)])});
        }
        fs::create_directories(files.dir);
        solution.write(files.file("solution"), files.sep);
        delta.write(files.file("delta_field"), files.sep);
        if (dump) {
            std::ofstream dense(files.dir / "matrix.txt", std::ios::binary);
            write_dense(dense, system.matrix);
            std::ofstream triplets(files.dir / "matrix_triplets.txt", std::ios::binary);
            write_triplets(triplets, system.matrix);
        }
        out << "scheme " << to_string(spec.scheme.kind) << " dofs " << coupled.dofs.N() << '\n'
            << "delta_max " << num(dmax) << '\n'
            << "v_max " << num(v_max) << '\n'
            << "E_r " << (v_max > 0.0 ? num(relative_error(dmax, v_max)) : "undefined") << '\n'
            << "max_exact_error " << num(max_nodal_error(coupled, problem.u_exact)) << '\n';
    };
}

Work prepare_table(const Options& o, int threads) {
    const auto schemes = scheme_list(o.schemes, {SchemeKind::mdcm, SchemeKind::mscm, SchemeKind::vhcm});
    const auto deltas = default_deltas(o.deltas);
    const std::vector<int> ms = o.ms.empty() ? std::vector<int>{2, 4, 8} : o.ms;
    const GridConfig base = geometry(o);
    const auto kappa = single_kappa(o);
    const StressRowLayout layout = layout_arg(o.layout);
    std::vector<CaseSpec> cases;
    std::vector<std::string> labels;
    for (const auto& d : deltas) {
        for (int m : ms) {
            for (SchemeKind s : schemes) {
                cases.push_back({{s, kappa, layout}, o.problem, with_horizon(base, d, m)});
                labels.push_back(d.str());
            }
        }
    }
    validate_all(cases);
    const OutputSpec files = output_spec(o);
    return [cases, labels, files, threads] {
        const auto results = run_cases(cases, threads);
        Table t({"delta", "m", "scheme", "delta_max", "v_max", "E_r"});
        for (std::size_t c = 0; c < results.size(); ++c) {
            const auto& r = results[c];
            t.add({labels[c], std::to_string(r.m), std::string(to_string(r.scheme)), num(r.delta_max),
                   num(r.v_max), optional_num(r.relative_error)});
        }
        fs::create_directories(files.dir);
        t.write(files.file("table"), files.sep);
    };
}

Work prepare_convergence(const Options& o, int threads) {
    const auto schemes = scheme_list(o.schemes, {SchemeKind::mdcm, SchemeKind::mscm, SchemeKind::vhcm});
    const auto deltas = default_deltas(o.deltas);
    if (deltas.size() < 3) {
        throw SpecError("convergence: needs at least 3 values of --delta");
    }
    const std::vector<int> ms = o.ms.empty() ? std::vector<int>{2} : o.ms;
    const GridConfig base = geometry(o);
    const auto kappa = single_kappa(o);
    const StressRowLayout layout = layout_arg(o.layout);
    std::vector<CaseSpec> cases;
    std::vector<std::string> labels;
    for (SchemeKind s : schemes) {
        for (int m : ms) {
            for (const auto& d : deltas) {
                cases.push_back({{s, kappa, layout}, o.problem, with_horizon(base, d, m)});
                labels.push_back(d.str());
            }
        }
    }
    validate_all(cases);
    const OutputSpec files = output_spec(o);
    const std::size_t group = deltas.size();
    return [cases, labels, files, threads, group] {
        const auto results = run_cases(cases, threads);
        Table t({"scheme", "m", "delta", "delta_max", "exact_error", "v_max", "E_r", "slope"});
        for (std::size_t start = 0; start < results.size(); start += group) {
            std::vector<double> xs, ys;
            for (std::size_t c = start; c < start + group; ++c) {
                xs.push_back(results[c].delta);
                ys.push_back(results[c].scheme == SchemeKind::fdm ? results[c].exact_error : results[c].delta_max);
            }
            std::string slope;
            try {
                slope = num(loglog_slope(xs, ys));
            } catch (const Error&) {
                slope = "";
            }
            for (std::size_t c = start; c < start + group; ++c) {
                const auto& r = results[c];
                t.add({std::string(to_string(r.scheme)), std::to_string(r.m), labels[c], num(r.delta_max),
                       num(r.exact_error), num(r.v_max), optional_num(r.relative_error), slope});
            }
        }
        fs::create_directories(files.dir);
        t.write(files.file("convergence"), files.sep);
    };
}

Work prepare_condition(const Options& o, int threads) {
    const auto schemes =
        scheme_list(o.schemes, {SchemeKind::fdm, SchemeKind::mdcm, SchemeKind::mscm, SchemeKind::vhcm});
    const auto deltas = default_deltas(o.deltas);
    if (o.ms.size() > 1) {
        throw SpecError("condition: pass a single --m");
    }
    const int m = o.ms.empty() ? 2 : o.ms.front();
    const GridConfig base = geometry(o);
    const StressRowLayout layout = layout_arg(o.layout);
    std::vector<std::string> bcs = o.bcs.empty() ? std::vector<std::string>{"mixed", "dirichlet"} : o.bcs;
    std::vector<CaseSpec> cases;
    std::vector<std::string> labels;
    std::vector<std::string> bc_labels;
    for (const auto& bc : bcs) {
        if (bc != "mixed" && bc != "dirichlet") {
            throw SpecError("--bc: expected mixed or dirichlet, got '" + bc + "'");
        }
        for (const auto& d : deltas) {
            for (SchemeKind s : schemes) {
                cases.push_back({{s, std::nullopt, layout}, "quartic_" + bc, with_horizon(base, d, m), true});
                labels.push_back(d.str());
                bc_labels.push_back(bc);
            }
        }
    }
    validate_all(cases);
    const OutputSpec files = output_spec(o);
    return [cases, labels, bc_labels, files, threads] {
        const auto results = run_cases(cases, threads);
        Table t({"bc", "delta", "scheme", "cond", "converged"});
        for (std::size_t c = 0; c < results.size(); ++c) {
            const auto& r = results[c];
            t.add({bc_labels[c], labels[c], std::string(to_string(r.scheme)), num(r.condition->value),
                   r.condition->converged ? "1" : "0"});
        }
        fs::create_directories(files.dir);
        t.write(files.file("condition"), files.sep);
    };
}

Work prepare_kappa_sweep(const Options& o, int threads) {
    const auto schemes = scheme_list(o.schemes, {SchemeKind::mdcm});
    for (SchemeKind s : schemes) {
        if (s != SchemeKind::mdcm && s != SchemeKind::mscm) {
            throw SpecError("kappa-sweep: --scheme must be mdcm or mscm");
        }
    }
    if (o.deltas.size() > 1 || o.ms.size() > 1) {
        throw SpecError("kappa-sweep: pass a single --delta and --m");
    }
    const Fraction delta = o.deltas.empty() ? Fraction{1, 8} : fraction_arg("delta", o.deltas.front());
    const int m = o.ms.empty() ? 2 : o.ms.front();
    const GridConfig g = with_horizon(geometry(o), delta, m);
    std::vector<double> kappas;
    for (const auto& f : o.kappas.empty() ? std::vector<std::string>{"120", "124", "128", "132", "136"} : o.kappas) {
        const double k = fraction_arg("kappa", f).value();
        if (!(k > 0.0)) {
            throw SpecError("--kappa: bond stiffness must be positive, got " + f);
        }
        kappas.push_back(k);
    }
    const ManufacturedProblem problem = [&] {
        try {
            return catalog_get(o.problem);
        } catch (const Error& e) {
            throw SpecError(e.what());
        }
    }();
    if (std::find(kappas.begin(), kappas.end(), nominal_kappa(problem.E, g.delta())) == kappas.end()) {
        kappas.push_back(nominal_kappa(problem.E, g.delta()));
    }
    std::sort(kappas.begin(), kappas.end());
    kappas.erase(std::unique(kappas.begin(), kappas.end()), kappas.end());
    const StressRowLayout layout = layout_arg(o.layout);
    std::vector<CaseSpec> cases;
    for (SchemeKind s : schemes) {
        for (double k : kappas) {
            cases.push_back({{s, k, layout}, o.problem, g});
        }
    }
    validate_all(cases);
    const OutputSpec files = output_spec(o);
    return [cases, files, threads] {
        const auto fields = error_fields(cases, threads);
        Table t({"record", "scheme", "kappa", "x", "delta"});
        for (std::size_t c = 0; c < cases.size(); ++c) {
            const std::string scheme(to_string(cases[c].scheme.kind));
            const std::string kappa = num(*cases[c].scheme.kappa_override);
            const auto& f = fields[c];
            std::size_t best = 0;
            for (std::size_t k = 0; k < f.values.size(); ++k) {
                t.add({"field", scheme, kappa, num(f.grid.x(static_cast<int>(k))), num(f.values[k])});
                if (f.values[k] > f.values[best]) {
                    best = k;
                }
            }
            t.add({"max", scheme, kappa, num(f.grid.x(static_cast<int>(best))), num(f.values[best])});
        }
        fs::create_directories(files.dir);
        t.write(files.file("kappa"), files.sep);
    };
}

void add_geometry(CLI::App* sub, Options& o) {
    sub->add_option("--problem", o.problem, "cubic_mixed, cubic_dirichlet, quartic_mixed, quartic_dirichlet")
        ->capture_default_str();
    sub->add_option("--a", o.a, "left interface")->capture_default_str();
    sub->add_option("--b", o.b, "right interface")->capture_default_str();
    sub->add_option("--ell", o.ell, "bar length")->capture_default_str();
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
    sub->add_option("--format", o.format, "csv or tsv")->capture_default_str();
    sub->add_option("--mscm-layout", o.layout, "inclusive or exclusive")->capture_default_str();
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Local/peridynamic coupling solver: single runs, error tables, convergence, "
                 "conditioning and bond-stiffness sweeps."};
    app.name("peri-couple");
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help and exit");

    auto* solve_cmd = app.add_subcommand("solve", "solve one case; writes solution and delta_field");
    auto* table_cmd = app.add_subcommand("table", "delta_max, v_max and E_r over delta x m x scheme");
    auto* conv_cmd = app.add_subcommand("convergence", "delta-convergence with fitted log-log slope");
    auto* cond_cmd = app.add_subcommand("condition", "2-norm condition numbers of the assembled matrices");
    auto* kappa_cmd = app.add_subcommand("kappa-sweep", "Delta(x) for a list of bond stiffnesses");
    for (auto* sub : {solve_cmd, table_cmd, conv_cmd, cond_cmd, kappa_cmd}) {
        add_geometry(sub, o);
        sub->add_option("--scheme", o.schemes, "fdm, mdcm, mscm, vhcm")->delimiter(',');
        sub->add_option("--delta", o.deltas, "horizon(s), fractions allowed")->delimiter(',');
        sub->add_option("--m", o.ms, "horizon ratio(s) delta / h")->delimiter(',');
        sub->add_option("--kappa", o.kappas, "bond stiffness override(s)")->delimiter(',');
    }
    solve_cmd->add_option("--h", o.h, "grid spacing (alternative to --delta)");
    solve_cmd->add_flag("--dump-matrix", o.dump_matrix, "also write matrix.txt and matrix_triplets.txt");
    cond_cmd->add_option("--bc", o.bcs, "mixed, dirichlet")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_invalid_spec;
    }

    Work work;
    try {
        const int threads = thread_cap();
        if (*solve_cmd) {
            work = prepare_solve(o, out);
        } else if (*table_cmd) {
            work = prepare_table(o, threads);
        } else if (*conv_cmd) {
            work = prepare_convergence(o, threads);
        } else if (*cond_cmd) {
            work = prepare_condition(o, threads);
        } else {
            work = prepare_kappa_sweep(o, threads);
        }
    } catch (const SpecError& e) {
        err << "invalid spec: " << e.what() << '\n';
        return exit_invalid_spec;
    } catch (const Error& e) {
        err << "invalid spec: " << e.what() << '\n';
        return exit_invalid_spec;
    }

    try {
        work();
    } catch (const std::exception& e) {
        err << "solver failure: " << e.what() << '\n';
        return exit_solver_failure;
    }
    return exit_ok;
}

} // namespace peri_couple::cli
