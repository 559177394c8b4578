#pragma once

#include <functional>
#include <utility>

#include "quadtail/tolerances.hpp"

namespace quadtail {

// theta_m(b) = sum_{i>=0} b^i / (i+m+1), the sharp coefficient in the
// degree-m polynomial upper bound of -ln(1-x). Domain 0 <= b < 1, m >= 1.
//
// Evaluated by the direct series whenever b^(m+1) < 1/2 and by the closed
// form (-ln(1-b) - sum_{k=1..m} b^k/k) / b^(m+1) otherwise: the closed form
// cancels catastrophically exactly when b^(m+1) is small against -ln(1-b),
// while the series needs few terms exactly when b is not close to 1.
double theta_m(double b, int m, const Tolerances& tol = default_tolerances());

// Same series summed term by term with no early exit; cross-check oracle.
double theta_m_series(double b, int m, int terms);

// Constants behind the min-form tail bounds. All solved/evaluated once.
struct HwConstants {
    double b_star;      // unique root of 2 b theta_1(b) = 1
    double kappa;       // b_star / 4
    double b_star_twin; // unique root of (4/sqrt(3)) b sqrt(theta_2(b)) = 1
    double kappa_prime; // b_star_twin / 3
    double kappa_psd;   // (9 - sqrt(17)) / 32
    double a0;          // (7 - sqrt(17)) / 4
};

const HwConstants& hw_constants();

struct Bracket {
    double lo, hi, f_lo, f_hi;
};

// Makes a Bracket after checking lo < hi and f_lo * f_hi <= 0.
Bracket make_bracket(const std::function<double(double)>& f, double lo, double hi);

// Bisection to |x - root| <= tol (plus a relative floor so huge brackets
// still terminate). Throws domain_error on an invalid bracket.
double solve_root(const std::function<double(double)>& f, Bracket bracket,
                  double tol = default_tolerances().root_tol);

// 64-point coarse pre-scan (so a non-global basin is not silently picked)
// followed by golden-section to argument tolerance tol. Returns {argmin, min}.
std::pair<double, double> minimize_1d(const std::function<double(double)>& f,
                                      double lo, double hi,
                                      double tol = default_tolerances().minimize_tol);

// Regularized lower incomplete gamma P(a, x): series for x < a+1, Lentz
// continued fraction otherwise. Iteration cap 500, per-step tolerance
// series_tol. Relative accuracy ~1e-12.
double gamma_p(double a, double x, const Tolerances& tol = default_tolerances());

// Natural log of the regularized upper incomplete gamma Q(a, x), exact in
// log domain far into the tail where 1 - P(a, x) would round to zero.
double log_gamma_q(double a, double x, const Tolerances& tol = default_tolerances());

// Chi-square CDF with n degrees of freedom, F(x) = P(n/2, x/2).
double chi2_cdf(int n, double x, const Tolerances& tol = default_tolerances());

// Survival 1 - F(x), and its log, without the subtractive rounding loss.
double chi2_sf(int n, double x, const Tolerances& tol = default_tolerances());
double log_chi2_sf(int n, double x, const Tolerances& tol = default_tolerances());

// Even-n closed form F(x) = 1 - sum_{i<n/2} x^i e^{-x/2} / (2^i i!), with the
// sum accumulated from log-domain terms so large x cannot overflow.
double chi2_cdf_even(int n, double x);
double log_chi2_sf_even(int n, double x);

} // namespace quadtail
