#pragma once

#include <map>
#include <optional>
#include <string>

#include "quadtail/scalar.hpp"
#include "quadtail/spectral.hpp"
#include "quadtail/tolerances.hpp"

namespace quadtail {

enum class BoundName {
    HW,
    LM_CLASSIC,
    LM_AUGMENTED,
    LM_OPTIMAL,
    LAMBDA_M,
    LAMBDA_M_LOOSE,
    M_INF,
    TWIN,
    CHI2,
    CHI2_PSD,
    HW_RELAXED,
    LM_RELAXED,
    LARGE_DEVIATION,
};

const char* to_string(BoundName name);
std::optional<BoundName> bound_from_string(std::string name); // case-insensitive

// One evaluated tail bound on Pr(Delta > t). log_value is the raw exponent
// (kept unclamped: asymptote tests push t/alpha to 1e8); probability is
// min(1, exp(log_value)). params records every optimized parameter so runs
// are reproducible from the output alone.
struct BoundValue {
    BoundName name;
    double log_value = 0;
    double probability = 1;
    std::map<std::string, double> params;
    bool degenerate = false; // zero matrix: Delta == 0, tail is 0 for t > 0
};

BoundValue make_bound_value(BoundName name, double log_value,
                            std::map<std::string, double> params = {});

// --- min{t^2/beta, t/alpha} family -------------------------------------

// exp(-kappa min{t^2/beta, t/alpha}). Without an explicit kappa the PSD
// constant kappa_psd is used when s.is_psd, else kappa.
BoundValue hw_bound(const SpectralSummary& s, double t);
BoundValue hw_bound(const SpectralSummary& s, double t, double kappa);

// --- improved LM family (PSD only) -------------------------------------

// Exponent of the two-branch bound: for 2/3 < a <= 1 and rho = alpha t/beta,
//   rho <= c: -t^2 / (beta (1 + sqrt(1 + 2 a rho))^2)
//   rho  > c: -b t/(2 alpha) + b^2 beta (2a-1) / (4 (1-a) alpha^2)
// with b = (3a-2)/(a(2a-1)), c = (3a-2)/(2(1-a)^2), c = inf at a = 1.
// The first branch is written in its rationalized form; it equals the
// classic closed form -((sqrt(beta+2 alpha t)-sqrt(beta))/(2 alpha))^2 at a=1.
double lm_exponent(const SpectralSummary& s, double t, double a);

BoundValue lm_classic(const SpectralSummary& s, double t);

// Closed-form approximation to the optimal a: (4 rho + 3 - sqrt(8 rho + 9)) / (4 rho),
// evaluated in the rationalized form 4(rho+1)/(4 rho + 3 + sqrt(8 rho + 9)).
double a_hat_opt(double rho);

// Unique root of
//   12 rho a^5 + (36-40 rho) a^4 + (48 rho-99) a^3 + (104-24 rho) a^2 + (4 rho-48) a + 8
// in (2/3, a_hat_opt(rho)], by bisection after validating the sign change.
double a_opt_quintic(double rho, const Tolerances& tol = default_tolerances());

BoundValue lm_augmented(const SpectralSummary& s, double t);
BoundValue lm_optimal(const SpectralSummary& s, double t,
                      const Tolerances& tol = default_tolerances());

// Flag-gated curiosities: same optimized-a machinery with rho replaced by
// t/(n alpha). Weaker than M_INF everywhere we looked, so they are excluded
// from the default comparison sets.
BoundValue lm_augmented_relaxed(const SpectralSummary& s, double t);
BoundValue lm_optimal_relaxed(const SpectralSummary& s, double t,
                              const Tolerances& tol = default_tolerances());

// --- Schatten-norm family ------------------------------------------------

// Lambda_m(t, b) = (n/2) sum_{k=2..m} b^k/k
//                  - kappa_m(b) min{ t^(1+1/m)/||A||_{m+1}^(1+1/m), t/alpha },
// kappa_m(b) = m/(2(m+1)) min{ ((m+1) theta_m(b))^(-1/m), b }.
double lambda_m(const SpectralSummary& s, double t, int m, double b,
                const Tolerances& tol = default_tolerances());

// inf over b in (0,1) of Lambda_m(t, b); never positive since the b->0 limit is 0.
BoundValue lambda_m_bound(const SpectralSummary& s, double t, int m,
                          const Tolerances& tol = default_tolerances());

// Minimization-free version: pick b solving (n/2) sum_{k=2..m} b^k/k = ln(1+eps),
// bound is (1+eps) exp(-kappa_m(b) min{...}).
BoundValue lambda_m_loose(const SpectralSummary& s, double t, int m, double eps,
                          const Tolerances& tol = default_tolerances());

// --- dimension + operator norm only --------------------------------------

// (1 + t/(n alpha))^(n/2) e^(-t/(2 alpha)), the m->inf limit of the family above.
BoundValue m_inf_bound(std::size_t n, double alpha, double t);

// exp(-kappa' min{eta1, eta2}) with
//   eta1 = (sqrt(beta^2+4 gamma t)-beta)(beta^2+8 gamma t-beta sqrt(beta^2+4 gamma t))/(12 gamma^2)
//   eta2 = t/alpha - (3 beta/(4 alpha)) min{1/alpha, (sqrt(beta^2+4 gamma t)-beta)/(2 gamma)}
// eta1 is assembled through q = 4 gamma t/(sqrt(beta^2+4 gamma t)+beta) so the
// small-t regime keeps full precision.
BoundValue twin_bound(const SpectralSummary& s, double t);
struct TwinComponents {
    double eta1, eta2;
};
TwinComponents twin_components(const SpectralSummary& s, double t);

// Tail of lambda_max(A) x^T x: 1 - F_chi2_n((trace+t)/lambda_max) when
// lambda_max > 0, F_chi2_n of the (possibly negative) argument when
// lambda_max < 0. lambda_max == 0 on a nonzero matrix is a domain error.
BoundValue chi2_bound(const SpectralSummary& s, double t,
                      const Tolerances& tol = default_tolerances());

// PSD specialization 1 - F_chi2_n(1 + t/alpha).
BoundValue chi2_bound_psd(const SpectralSummary& s, double t,
                          const Tolerances& tol = default_tolerances());

// Relaxations through ||A||_2 <= sqrt(n) ||A|| (PSD):
BoundValue hw_relaxed(std::size_t n, double alpha, double t);
BoundValue lm_relaxed(std::size_t n, double alpha, double t);

// (1/sqrt(e)) (e (1+r)/n)^(n/2) e^(-r/2), r = t/alpha; valid for 1 + r >= n.
// A comparison curve (lower bound on the CDF), not a certified tail bound.
BoundValue large_deviation_bound(std::size_t n, double alpha, double t);

// Unique t > 0 with (1 + t/(n alpha))^(n/2) e^{-(1/2-kappa) t/alpha} = 1,
// to 1e-9 * alpha. Requires 0 < kappa < 1/2.
double t_hat_c(std::size_t n, double alpha, double kappa,
               const Tolerances& tol = default_tolerances());

// Tail-parameter change of variables t <-> t' = 2 sqrt(beta t) + 2 alpha t.
double lm_reparameterize_forward(double beta, double alpha, double t);
double lm_reparameterize_inverse(double beta, double alpha, double t_prime);

// True for bounds whose derivation needs a PSD matrix; sweeps and the
// validation harness skip (rather than fail) these on indefinite input.
bool requires_psd(BoundName name);

// Uniform dispatcher behind sweeps and validation. lambda_m_choice is the m
// for LAMBDA_M / LAMBDA_M_LOOSE; loose_eps feeds only the latter.
BoundValue evaluate_bound(const SpectralSummary& s, double t, BoundName name,
                          int lambda_m_choice = 1, double loose_eps = 1.0,
                          const Tolerances& tol = default_tolerances());

} // namespace quadtail
