#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "quadtail/tolerances.hpp"

namespace quadtail {

// Coefficient list, coeffs[j] multiplies r^j.
struct Poly {
    std::vector<double> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double operator()(double r) const; // Horner
};

// Drops trailing coefficients with |c| <= 1e-15 * max|c|.
Poly trim(Poly p);

// P1: coefficients of (1 + r/n)^(n/2), binomials assembled in log domain.
Poly poly1(int n);

// P2: coefficients of (1/sqrt(e)) sum_{i<n/2} (1+r)^i / (2^i i!).
Poly poly2(int n);

// P1 - P2. The head coefficients of the true difference shrink like
// e^{-1/2}/(2^h h!) (h = n/2) while the raw coefficients stay O(1), so the
// naive float subtraction loses every correct sign beyond n ~ 22. Instead
// each coefficient is assembled from the identity
//   sum_{i>=j} C(i,j)/(2^i i!) = e^{1/2} / (2^j j!)
// as  c_j = (prod_{k<j}(1-2k/n) - 1)/(2^j j!)  +  e^{-1/2} T_j,
// with T_j = sum_{i>=h} C(i,j)/(2^i i!) a positive tail: one cleanly signed
// term plus one positive term, no cancellation at any n.
Poly diff_poly(int n);

// Count of adjacent strict sign flips among coefficients with
// |c| > zero_tol; zero_tol < 0 selects the default 1e-13 * max|c|.
// Note the diff_poly head coefficients are genuinely ~1e-80 * max|c| at
// n = 100 yet carry exact signs; pass zero_tol = 0 for those.
int sign_changes(const Poly& p, double zero_tol = -1.0);

// Sign of p(r) robust to overflow: Horner when the largest term fits a
// double, otherwise the positive and negative masses are compared through
// log-sum-exp. Returns +1, 0, or -1.
int eval_sign(const Poly& p, double r);

// The two positive roots of diff_poly(n) for even n >= 8: r_n in (0,1) and
// r'_n > 1. Bisection runs on ln r (r_n decays like ~1e-39 by n = 100 and
// r'_n grows past 1e20, so a linear-space tolerance means nothing).
struct Crossings {
    double r_n, r_n_prime;
};
Crossings find_crossings(int n, const Tolerances& tol = default_tolerances());

// Taylor shift: coefficients of x -> p(x + s), by repeated synthetic division.
Poly poly_shift(const Poly& p, double s);

enum class Dominance { CHI2_ALWAYS, M_INF_INSIDE_INTERVAL };

struct CrossoverReport {
    int n = 0;
    int sign_change_count = 0;
    std::optional<double> r_n;
    std::optional<double> r_n_prime;
    Dominance dominance = Dominance::CHI2_ALWAYS;
};

struct DominanceRow {
    double r;
    double log_m_inf;
    double log_chi2;
    bool m_inf_sharper_direct; // by comparing the two log bounds
    bool m_inf_sharper_roots;  // by the root interval verdict
};

// Cross-validates the polynomial verdict against direct evaluation of the
// two bounds at each grid point. Even n only for the polynomial part; odd n
// gets the direct comparison alone.
CrossoverReport crossover_report(int n, const Tolerances& tol = default_tolerances());
std::vector<DominanceRow> dominance_table(int n, const std::vector<double>& r_grid,
                                          const Tolerances& tol = default_tolerances());

} // namespace quadtail
