#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "quadtail/bounds.hpp"
#include "quadtail/spectral.hpp"
#include "quadtail/symmetric_matrix.hpp"

namespace quadtail {

// Counter-based generator: out(i) = mix64(seed + (i+1) * golden). Stateless,
// so sample i is the same no matter which thread or call order produced it.
std::uint64_t counter_rng(std::uint64_t seed, std::uint64_t i);

// j-th standard normal of the stream (Box-Muller over counter pairs).
double normal_at(std::uint64_t seed, std::uint64_t j);

// One draw of Delta = sum_i lambda_i (xi_i^2 - 1); sample_index selects the
// disjoint block of normals [sample_index*n, sample_index*n + n).
double sample_delta(const std::vector<double>& eigenvalues, std::uint64_t seed,
                    std::uint64_t sample_index);

struct TailEstimate {
    double t = 0;
    std::size_t n_samples = 0;
    std::size_t n_exceed = 0;
    double p_hat = 0;
    double p_upper = 0; // one-sided Hoeffding upper confidence bound
    double conf = 0.999;
    std::uint64_t seed = 0;

    double radius() const; // sqrt(ln(1/(1-conf)) / (2 n_samples))
};

TailEstimate empirical_tail(const std::vector<double>& eigenvalues, double t,
                            std::size_t n_samples, std::uint64_t seed,
                            double conf = 0.999);

enum class EnsembleKind { GOE_LIKE, WISHART_PSD, DIAGONAL, FIXED };

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::GOE_LIKE;
    std::size_t n = 2;
    std::uint64_t seed = 0;
    std::vector<double> eigenvalues; // DIAGONAL only
};

SymmetricMatrix generate_ensemble(const EnsembleSpec& spec);

struct ValidationRow {
    std::string bound_name;
    double t = 0;
    double bound_value = 0;
    double p_hat = 0;
    double p_upper = 0;
    double margin = 0;          // bound_value - (p_hat - radius)
    std::string verdict;        // PASS / FAIL / SKIP
};

// Which bounds participate in a default validation run for this matrix.
// PSD-only bounds are skipped (not failed) on indefinite input;
// LARGE_DEVIATION is a comparison curve, never validated against samples.
std::vector<BoundName> default_validation_bounds(const SpectralSummary& s);

// Draws once, counts exceedances per t, evaluates each requested bound, and
// verdicts PASS iff bound >= p_hat - radius (the lower confidence bound, so
// sampling noise cannot fail a true bound). lambda_m_choice is the m used
// for the LAMBDA_M column.
std::vector<ValidationRow> validate_bounds(const SpectralSummary& s,
                                           const std::vector<double>& t_grid,
                                           const std::vector<BoundName>& bounds,
                                           std::size_t n_samples,
                                           std::uint64_t seed,
                                           int lambda_m_choice = 1,
                                           double conf = 0.999);

} // namespace quadtail
