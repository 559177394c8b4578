#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "quadtail/bounds.hpp"
#include "quadtail/montecarlo.hpp"
#include "quadtail/spectral.hpp"

namespace quadtail {

// Grid of axis values x bound columns, the substrate behind every figure.
struct SweepTable {
    std::string axis_name = "t";
    std::vector<double> axis;
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> columns; // columns[c][i], same length as axis
    std::vector<std::string> metadata;        // emitted as header comment lines
};

std::vector<double> parse_grid(const std::string& spec); // "MIN:MAX:STEPS"

SweepTable sweep_bounds(const SpectralSummary& s, const std::vector<double>& t_grid,
                        const std::vector<BoundName>& bounds,
                        int lambda_m_choice = 1, double loose_eps = 1.0,
                        const Tolerances& tol = default_tolerances());

struct MsweepRow {
    double t;
    std::vector<double> inf_values; // inf_b Lambda_m for m = 1..m_max (log domain)
    int m_opt;                      // argmin m
};

struct MsweepResult {
    std::vector<MsweepRow> rows;
    double t_hat_c; // printed alongside: the analytic crossover estimate
};

MsweepResult msweep(const SpectralSummary& s, double t_min, double t_max,
                    double t_step, int m_max,
                    const Tolerances& tol = default_tolerances());

// CSV with "# key: value" header comments (version, command line, seed).
void write_csv(std::ostream& os, const SweepTable& table, const std::string& command_line);
void write_msweep_csv(std::ostream& os, const MsweepResult& r, const std::string& command_line);
void write_validation_csv(std::ostream& os, const std::vector<ValidationRow>& rows,
                          std::uint64_t seed, const std::string& command_line);

// Same tables in gnuplot-friendly layout (whitespace-separated, '#' header).
void write_gnuplot(std::ostream& os, const SweepTable& table, const std::string& command_line);

} // namespace quadtail
