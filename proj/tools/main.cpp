#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "quadtail/bounds.hpp"
#include "quadtail/crossover.hpp"
#include "quadtail/errors.hpp"
#include "quadtail/montecarlo.hpp"
#include "quadtail/scalar.hpp"
#include "quadtail/spectral.hpp"
#include "quadtail/sweep.hpp"
#include "quadtail/symmetric_matrix.hpp"
#include "quadtail/version.hpp"

namespace {

using namespace quadtail;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    return buf;
}

std::string join_command(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty()) {
        fn(std::cout);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw quadtail::domain_error("cannot open output file: " + path);
    fn(f);
}

std::vector<BoundName> parse_bounds(const std::vector<std::string>& names) {
    std::vector<BoundName> out;
    out.reserve(names.size());
    for (const auto& n : names) {
        const auto b = bound_from_string(n);
        if (!b) throw quadtail::domain_error("unknown bound name: " + n);
        out.push_back(*b);
    }
    return out;
}

std::string params_string(const BoundValue& v) {
    std::string s;
    for (const auto& [k, val] : v.params) {
        if (!s.empty()) s += ';';
        s += k + "=" + fmt(val);
    }
    if (v.degenerate) {
        if (!s.empty()) s += ';';
        s += "degenerate=1";
    }
    return s;
}

struct Options {
    std::string matrix_path;
    std::string grid_spec;
    std::string out_path;
    std::string n_spec;
    std::string ensemble;
    std::vector<std::string> bound_names;
    std::vector<double> diag_eigenvalues;
    double t = 0;
    double eps = 1.0;
    int m_max = 1;
    std::size_t samples = 1000000;
    std::uint64_t seed = 1;
    bool gnuplot = false;
    bool relaxed_lm = false;
    Tolerances tol;
};

int run_constants(const Options& opt, const std::string& command) {
    const auto& hc = hw_constants();
    with_output(opt.out_path, [&](std::ostream& os) {
        os << "# version: " << version << "\n";
        os << "# command: " << command << "\n";
        os << "name,value,definition\n";
        os << "b_star," << fmt12(hc.b_star) << ",root of 2*b*theta_1(b) = 1\n";
        os << "kappa," << fmt12(hc.kappa) << ",b_star/4\n";
        os << "b_star_twin," << fmt12(hc.b_star_twin)
           << ",root of (4/sqrt(3))*b*sqrt(theta_2(b)) = 1\n";
        os << "kappa_prime," << fmt12(hc.kappa_prime) << ",b_star_twin/3\n";
        os << "kappa_psd," << fmt12(hc.kappa_psd) << ",(9-sqrt(17))/32\n";
        os << "a0," << fmt12(hc.a0) << ",(7-sqrt(17))/4\n";
        os << "kappa_lm," << fmt12(1.0 - std::sqrt(3.0) / 2.0)
           << ",1-sqrt(3)/2\n";
    });
    return 0;
}

SpectralSummary load_summary(const Options& opt) {
    if (!opt.matrix_path.empty())
        return spectral_summary(load_matrix_csv(opt.matrix_path, &std::cerr));
    if (opt.ensemble.empty())
        throw quadtail::domain_error("need --matrix or --ensemble");
    EnsembleSpec spec;
    spec.seed = opt.seed;
    if (opt.ensemble == "goe") {
        spec.kind = EnsembleKind::GOE_LIKE;
    } else if (opt.ensemble == "wishart") {
        spec.kind = EnsembleKind::WISHART_PSD;
    } else if (opt.ensemble == "diagonal") {
        spec.kind = EnsembleKind::DIAGONAL;
        spec.eigenvalues = opt.diag_eigenvalues;
    } else {
        throw quadtail::domain_error("unknown ensemble: " + opt.ensemble);
    }
    if (opt.n_spec.empty()) throw quadtail::domain_error("ensembles need --n");
    spec.n = std::stoul(opt.n_spec);
    if (spec.kind == EnsembleKind::DIAGONAL && spec.eigenvalues.empty())
        throw quadtail::domain_error("diagonal ensemble needs --eigenvalues");
    return spectral_summary(generate_ensemble(spec));
}

int run_bound(const Options& opt, const std::string& command) {
    const SpectralSummary s = load_summary(opt);
    const auto bounds = parse_bounds(opt.bound_names);
    with_output(opt.out_path, [&](std::ostream& os) {
        os << "# version: " << version << "\n";
        os << "# command: " << command << "\n";
        os << "name,t,log_value,probability,params\n";
        for (BoundName b : bounds) {
            BoundValue v;
            if (opt.relaxed_lm && b == BoundName::LM_AUGMENTED)
                v = lm_augmented_relaxed(s, opt.t);
            else if (opt.relaxed_lm && b == BoundName::LM_OPTIMAL)
                v = lm_optimal_relaxed(s, opt.t, opt.tol);
            else
                v = evaluate_bound(s, opt.t, b, opt.m_max, opt.eps, opt.tol);
            os << to_string(b) << "," << fmt(opt.t) << "," << fmt(v.log_value)
               << "," << fmt(v.probability) << "," << params_string(v) << "\n";
        }
    });
    return 0;
}

int run_sweep(const Options& opt, const std::string& command) {
    const SpectralSummary s = load_summary(opt);
    const auto bounds = parse_bounds(opt.bound_names);
    const auto grid = parse_grid(opt.grid_spec);
    const SweepTable tab =
        sweep_bounds(s, grid, bounds, opt.m_max, opt.eps, opt.tol);
    with_output(opt.out_path, [&](std::ostream& os) {
        if (opt.gnuplot)
            write_gnuplot(os, tab, command);
        else
            write_csv(os, tab, command);
    });
    return 0;
}

int run_msweep(const Options& opt, const std::string& command) {
    const SpectralSummary s = load_summary(opt);
    const auto grid = parse_grid(opt.grid_spec);
    const double t_min = grid.front(), t_max = grid.back();
    const double t_step =
        grid.size() > 1 ? (t_max - t_min) / double(grid.size() - 1) : 1.0;
    const MsweepResult res = msweep(s, t_min, t_max, t_step, opt.m_max, opt.tol);
    with_output(opt.out_path,
                [&](std::ostream& os) { write_msweep_csv(os, res, command); });
    return 0;
}

const char* to_string(Dominance d) {
    return d == Dominance::CHI2_ALWAYS ? "CHI2_ALWAYS" : "M_INF_INSIDE_INTERVAL";
}

int run_crossover(const Options& opt, const std::string& command) {
    int lo = 0, hi = 0;
    if (std::sscanf(opt.n_spec.c_str(), "%d..%d", &lo, &hi) == 2) {
        // range parsed
    } else if (std::sscanf(opt.n_spec.c_str(), "%d", &lo) == 1) {
        hi = lo;
    } else {
        throw quadtail::domain_error("--n must be an integer or a range A..B");
    }
    if (lo > hi) throw quadtail::domain_error("--n range must have A <= B");
    with_output(opt.out_path, [&](std::ostream& os) {
        os << "# version: " << version << "\n";
        os << "# command: " << command << "\n";
        os << "n,sign_changes,r_n,r_n_prime,dominance\n";
        for (int n = lo; n <= hi; n += (lo == hi ? 1 : 2)) {
            const CrossoverReport rep = crossover_report(n, opt.tol);
            os << rep.n << "," << rep.sign_change_count << ","
               << (rep.r_n ? fmt(*rep.r_n) : "") << ","
               << (rep.r_n_prime ? fmt(*rep.r_n_prime) : "") << ","
               << to_string(rep.dominance) << "\n";
        }
    });
    return 0;
}

int run_validate(const Options& opt, const std::string& command) {
    const SpectralSummary s = load_summary(opt);
    const auto grid = parse_grid(opt.grid_spec);
    const std::vector<BoundName> bounds = opt.bound_names.empty()
                                              ? default_validation_bounds(s)
                                              : parse_bounds(opt.bound_names);
    const auto rows =
        validate_bounds(s, grid, bounds, opt.samples, opt.seed, opt.m_max);
    with_output(opt.out_path, [&](std::ostream& os) {
        write_validation_csv(os, rows, opt.seed, command);
    });
    for (const auto& r : rows)
        if (r.verdict == "FAIL") return 1;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    const std::string command = join_command(argc, argv);
    Options opt;

    CLI::App app{"tail bounds for centered quadratic forms in Gaussian vectors"};
    app.require_subcommand(1);
    app.add_option("--tol-root", opt.tol.root_tol, "bracketing root-finder tolerance");
    app.add_option("--tol-minimize", opt.tol.minimize_tol, "1-D minimizer tolerance");
    app.add_option("--tol-series", opt.tol.series_tol, "series / continued-fraction tolerance");

    auto add_matrix = [&](CLI::App* cmd, bool required) {
        auto* o = cmd->add_option("--matrix", opt.matrix_path,
                                  "CSV file with n rows of n comma-separated reals");
        if (required) o->required();
    };
    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", opt.out_path, "write output here instead of stdout");
    };

    auto* c_const = app.add_subcommand("constants", "print the solved bound constants");
    add_out(c_const);

    auto* c_bound = app.add_subcommand("bound", "evaluate bounds at a single t");
    add_matrix(c_bound, true);
    c_bound->add_option("--t", opt.t, "tail parameter")->required();
    c_bound->add_option("--bounds", opt.bound_names, "bound names (comma separated)")
        ->required()
        ->delimiter(',');
    c_bound->add_option("--m-max", opt.m_max, "m for the Schatten-norm bound");
    c_bound->add_option("--eps", opt.eps, "eps for the minimization-free bound");
    c_bound->add_flag("--relaxed-lm", opt.relaxed_lm,
                      "use the norm-only relaxation for the optimized square-root bounds");
    add_out(c_bound);

    auto* c_sweep = app.add_subcommand("sweep", "evaluate bounds over a t grid");
    add_matrix(c_sweep, true);
    c_sweep->add_option("--t-grid", opt.grid_spec, "MIN:MAX:STEPS")->required();
    c_sweep->add_option("--bounds", opt.bound_names, "bound names (comma separated)")
        ->required()
        ->delimiter(',');
    c_sweep->add_option("--m-max", opt.m_max, "m for the Schatten-norm bound");
    c_sweep->add_option("--eps", opt.eps, "eps for the minimization-free bound");
    c_sweep->add_flag("--gnuplot", opt.gnuplot, "whitespace layout for gnuplot");
    add_out(c_sweep);

    auto* c_msweep = app.add_subcommand(
        "msweep", "optimize the Schatten-norm bound over m per grid point");
    add_matrix(c_msweep, true);
    c_msweep->add_option("--t-grid", opt.grid_spec, "MIN:MAX:STEPS")->required();
    c_msweep->add_option("--m-max", opt.m_max, "largest m to scan")
        ->default_val(20);
    add_out(c_msweep);

    auto* c_cross = app.add_subcommand(
        "crossover", "sign-change and root report for the comparison polynomial");
    c_cross->add_option("--n", opt.n_spec, "even dimension or range A..B")->required();
    add_out(c_cross);

    auto* c_val = app.add_subcommand("validate",
                                     "check bounds against seeded sampling");
    add_matrix(c_val, false);
    c_val->add_option("--ensemble", opt.ensemble, "goe | wishart | diagonal");
    c_val->add_option("--n", opt.n_spec, "ensemble dimension");
    c_val->add_option("--eigenvalues", opt.diag_eigenvalues,
                      "diagonal ensemble eigenvalues")
        ->delimiter(',');
    c_val->add_option("--t-grid", opt.grid_spec, "MIN:MAX:STEPS")->required();
    c_val->add_option("--bounds", opt.bound_names,
                      "bound names (default: all applicable)")
        ->delimiter(',');
    c_val->add_option("--samples", opt.samples, "Monte-Carlo sample count")
        ->default_val(1000000);
    c_val->add_option("--seed", opt.seed, "RNG seed")->default_val(1);
    c_val->add_option("--m-max", opt.m_max, "m for the Schatten-norm bound");
    add_out(c_val);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_const->parsed()) return run_constants(opt, command);
        if (c_bound->parsed()) return run_bound(opt, command);
        if (c_sweep->parsed()) return run_sweep(opt, command);
        if (c_msweep->parsed()) return run_msweep(opt, command);
        if (c_cross->parsed()) return run_crossover(opt, command);
        if (c_val->parsed()) return run_validate(opt, command);
    } catch (const quadtail::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const quadtail::numerical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
