#include "quadtail/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "quadtail/errors.hpp"
#include "quadtail/version.hpp"

namespace quadtail {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string summary_line(const SpectralSummary& s) {
    std::ostringstream os;
    os << "matrix: n=" << s.n << " alpha=" << fmt(s.alpha) << " beta="
       << fmt(s.beta) << " gamma=" << fmt(s.gamma) << " trace=" << fmt(s.trace)
       << " psd=" << (s.is_psd ? 1 : 0);
    return os.str();
}

void write_header(std::ostream& os, const std::string& command_line) {
    os << "# version: " << version << "\n";
    os << "# command: " << command_line << "\n";
}

} // namespace

std::vector<double> parse_grid(const std::string& spec) {
    double lo = 0, hi = 0;
    long steps = 0;
    char extra = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &steps, &extra) != 3)
        throw domain_error("grid must be MIN:MAX:STEPS, got '" + spec + "'");
    if (steps < 1) throw domain_error("grid needs at least one point");
    if (!(lo <= hi)) throw domain_error("grid needs MIN <= MAX");
    if (steps == 1 && lo != hi)
        throw domain_error("a one-point grid needs MIN == MAX");
    std::vector<double> g(steps);
    for (long i = 0; i < steps; ++i)
        g[i] = steps == 1 ? lo : lo + (hi - lo) * double(i) / double(steps - 1);
    return g;
}

SweepTable sweep_bounds(const SpectralSummary& s, const std::vector<double>& t_grid,
                        const std::vector<BoundName>& bounds, int lambda_m_choice,
                        double loose_eps, const Tolerances& tol) {
    if (bounds.empty()) throw domain_error("bound list must not be empty");
    for (double t : t_grid)
        if (!(t >= 0.0)) throw domain_error("t grid must be nonnegative");

    SweepTable tab;
    tab.axis_name = "t";
    tab.axis = t_grid;
    tab.metadata.push_back(summary_line(s));
    for (BoundName b : bounds) tab.column_names.push_back(to_string(b));
    tab.columns.assign(bounds.size(), {});

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double t : t_grid) {
        for (std::size_t c = 0; c < bounds.size(); ++c) {
            double p;
            try {
                p = evaluate_bound(s, t, bounds[c], lambda_m_choice, loose_eps, tol)
                        .probability;
            } catch (const domain_error&) {
                // t = 0 is a trivial tail (every proper bound is 1 there);
                // anything else out of domain becomes a hole in the column
                p = (t == 0.0 && bounds[c] != BoundName::LARGE_DEVIATION) ? 1.0
                                                                          : nan;
            }
            tab.columns[c].push_back(p);
        }
    }
    return tab;
}

MsweepResult msweep(const SpectralSummary& s, double t_min, double t_max,
                    double t_step, int m_max, const Tolerances& tol) {
    if (!(t_min > 0.0) || !(t_max >= t_min) || !(t_step > 0.0))
        throw domain_error("need 0 < t_min <= t_max and t_step > 0");
    if (m_max < 1 || m_max > 200) throw domain_error("m_max must lie in 1..200");
    if (s.alpha == 0.0) throw domain_error("zero matrix has no m-sweep");

    MsweepResult res;
    res.t_hat_c = t_hat_c(s.n, s.alpha, hw_constants().kappa, tol);
    const int steps = int(std::floor((t_max - t_min) / t_step + 1e-9)) + 1;
    res.rows.reserve(steps);
    for (int i = 0; i < steps; ++i) {
        MsweepRow row;
        row.t = t_min + i * t_step;
        row.inf_values.reserve(m_max);
        int best = 1;
        double best_v = std::numeric_limits<double>::infinity();
        for (int m = 1; m <= m_max; ++m) {
            const double v = lambda_m_bound(s, row.t, m, tol).log_value;
            row.inf_values.push_back(v);
            if (v < best_v) {
                best_v = v;
                best = m;
            }
        }
        row.m_opt = best;
        res.rows.push_back(std::move(row));
    }
    return res;
}

void write_csv(std::ostream& os, const SweepTable& table,
               const std::string& command_line) {
    write_header(os, command_line);
    for (const auto& m : table.metadata) os << "# " << m << "\n";
    os << table.axis_name;
    for (const auto& c : table.column_names) os << "," << c;
    os << "\n";
    for (std::size_t i = 0; i < table.axis.size(); ++i) {
        os << fmt(table.axis[i]);
        for (const auto& col : table.columns) os << "," << fmt(col[i]);
        os << "\n";
    }
}

void write_msweep_csv(std::ostream& os, const MsweepResult& r,
                      const std::string& command_line) {
    write_header(os, command_line);
    os << "# t_hat_c: " << fmt(r.t_hat_c) << "\n";
    os << "t,m_opt";
    const std::size_t m_max = r.rows.empty() ? 0 : r.rows[0].inf_values.size();
    for (std::size_t m = 1; m <= m_max; ++m) os << ",inf_m" << m;
    os << "\n";
    for (const auto& row : r.rows) {
        os << fmt(row.t) << "," << row.m_opt;
        for (double v : row.inf_values) os << "," << fmt(v);
        os << "\n";
    }
}

void write_validation_csv(std::ostream& os, const std::vector<ValidationRow>& rows,
                          std::uint64_t seed, const std::string& command_line) {
    write_header(os, command_line);
    os << "# seed: " << seed << "\n";
    os << "bound_name,t,bound_value,p_hat,p_upper,margin,verdict\n";
    for (const auto& r : rows) {
        os << r.bound_name << "," << fmt(r.t) << "," << fmt(r.bound_value) << ","
           << fmt(r.p_hat) << "," << fmt(r.p_upper) << "," << fmt(r.margin)
           << "," << r.verdict << "\n";
    }
}

void write_gnuplot(std::ostream& os, const SweepTable& table,
                   const std::string& command_line) {
    write_header(os, command_line);
    for (const auto& m : table.metadata) os << "# " << m << "\n";
    os << "# columns: " << table.axis_name;
    for (const auto& c : table.column_names) os << " " << c;
    os << "\n";
    for (std::size_t i = 0; i < table.axis.size(); ++i) {
        os << fmt(table.axis[i]);
        for (const auto& col : table.columns) os << " " << fmt(col[i]);
        os << "\n";
    }
}

} // namespace quadtail
