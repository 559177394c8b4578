#include "quadtail/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quadtail/errors.hpp"

namespace quadtail {

namespace {
constexpr double kTwoPi = 6.28318530717958647692528676655900577;
}

std::uint64_t counter_rng(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = seed + (i + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double normal_at(std::uint64_t seed, std::uint64_t j) {
    const std::uint64_t p = j >> 1;
    // top 53 bits -> (0,1); the 2^-54 offset keeps u1 away from log(0)
    const double u1 =
        double(counter_rng(seed, 2 * p) >> 11) * 0x1p-53 + 0x1p-54;
    const double u2 = double(counter_rng(seed, 2 * p + 1) >> 11) * 0x1p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = kTwoPi * u2;
    return radius * ((j & 1) == 0 ? std::cos(angle) : std::sin(angle));
}

double sample_delta(const std::vector<double>& eigenvalues, std::uint64_t seed,
                    std::uint64_t sample_index) {
    const std::size_t n = eigenvalues.size();
    double d = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double z = normal_at(seed, sample_index * n + k);
        d += eigenvalues[k] * (z * z - 1.0);
    }
    return d;
}

double TailEstimate::radius() const {
    return std::sqrt(std::log(1.0 / (1.0 - conf)) / (2.0 * double(n_samples)));
}

TailEstimate empirical_tail(const std::vector<double>& eigenvalues, double t,
                            std::size_t n_samples, std::uint64_t seed,
                            double conf) {
    if (!(t > 0.0)) throw domain_error("tail parameter t must be positive");
    if (n_samples < 10000) throw domain_error("need at least 10^4 samples");
    if (!(conf > 0.0 && conf < 1.0))
        throw domain_error("confidence level must lie in (0,1)");
    if (eigenvalues.empty()) throw domain_error("eigenvalue list must be non-empty");

    std::size_t exceed = 0;
    for (std::size_t i = 0; i < n_samples; ++i)
        if (sample_delta(eigenvalues, seed, i) > t) ++exceed;

    TailEstimate e;
    e.t = t;
    e.n_samples = n_samples;
    e.n_exceed = exceed;
    e.p_hat = double(exceed) / double(n_samples);
    e.conf = conf;
    e.seed = seed;
    e.p_upper = std::min(1.0, e.p_hat + e.radius());
    return e;
}

SymmetricMatrix generate_ensemble(const EnsembleSpec& spec) {
    const std::size_t n = spec.n;
    if (n < 1) throw domain_error("ensemble dimension must be >= 1");
    switch (spec.kind) {
        case EnsembleKind::DIAGONAL: {
            if (spec.eigenvalues.size() != n)
                throw domain_error("DIAGONAL ensemble needs exactly n eigenvalues");
            return SymmetricMatrix::diagonal(spec.eigenvalues);
        }
        case EnsembleKind::FIXED:
            throw domain_error("FIXED ensembles come from matrix files, not a generator");
        case EnsembleKind::GOE_LIKE: {
            std::vector<double> raw(n * n);
            for (std::size_t k = 0; k < n * n; ++k)
                raw[k] = normal_at(spec.seed, k);
            return SymmetricMatrix(n, std::move(raw)); // ctor symmetrizes
        }
        case EnsembleKind::WISHART_PSD: {
            std::vector<double> b(n * n);
            for (std::size_t k = 0; k < n * n; ++k)
                b[k] = normal_at(spec.seed, k);
            std::vector<double> raw(n * n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    double s = 0.0;
                    for (std::size_t k = 0; k < n; ++k)
                        s += b[k * n + i] * b[k * n + j];
                    raw[i * n + j] = raw[j * n + i] = s / double(n);
                }
            return SymmetricMatrix(n, std::move(raw));
        }
    }
    throw domain_error("unknown ensemble kind");
}

std::vector<BoundName> default_validation_bounds(const SpectralSummary& s) {
    static const BoundName all[] = {
        BoundName::HW,         BoundName::LM_CLASSIC, BoundName::LM_AUGMENTED,
        BoundName::LM_OPTIMAL, BoundName::LAMBDA_M,   BoundName::M_INF,
        BoundName::TWIN,       BoundName::CHI2,       BoundName::CHI2_PSD,
        BoundName::HW_RELAXED, BoundName::LM_RELAXED,
    };
    std::vector<BoundName> out;
    for (BoundName b : all)
        if (s.is_psd || !requires_psd(b)) out.push_back(b);
    return out;
}

std::vector<ValidationRow> validate_bounds(const SpectralSummary& s,
                                           const std::vector<double>& t_grid,
                                           const std::vector<BoundName>& bounds,
                                           std::size_t n_samples,
                                           std::uint64_t seed,
                                           int lambda_m_choice, double conf) {
    if (bounds.empty()) throw domain_error("bound list must not be empty");
    if (t_grid.empty()) throw domain_error("t grid must not be empty");
    for (double t : t_grid)
        if (!(t > 0.0)) throw domain_error("t grid must be positive");
    if (n_samples < 10000) throw domain_error("need at least 10^4 samples");
    if (!(conf > 0.0 && conf < 1.0))
        throw domain_error("confidence level must lie in (0,1)");

    // one shared sampling pass; each t only re-counts exceedances
    std::vector<double> deltas(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i)
        deltas[i] = sample_delta(s.eigenvalues, seed, i);

    const double radius =
        std::sqrt(std::log(1.0 / (1.0 - conf)) / (2.0 * double(n_samples)));
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const Tolerances& tol = default_tolerances();

    std::vector<ValidationRow> rows;
    rows.reserve(t_grid.size() * bounds.size());
    for (double t : t_grid) {
        std::size_t exceed = 0;
        for (double d : deltas)
            if (d > t) ++exceed;
        const double p_hat = double(exceed) / double(n_samples);
        const double p_lower = p_hat - radius;
        for (BoundName b : bounds) {
            ValidationRow row;
            row.bound_name = to_string(b);
            row.t = t;
            row.p_hat = p_hat;
            row.p_upper = std::min(1.0, p_hat + radius);
            const bool skip = b == BoundName::LARGE_DEVIATION ||
                              (requires_psd(b) && !s.is_psd);
            if (skip) {
                // LARGE_DEVIATION is a comparison curve (CDF lower bound),
                // never certified against samples
                row.bound_value = nan;
                row.margin = nan;
                row.verdict = "SKIP";
            } else {
                const BoundValue v =
                    evaluate_bound(s, t, b, lambda_m_choice, 1.0, tol);
                row.bound_value = v.probability;
                row.margin = v.probability - p_lower;
                row.verdict = row.margin >= 0.0 ? "PASS" : "FAIL";
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace quadtail
