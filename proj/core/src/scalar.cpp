#include "quadtail/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "quadtail/errors.hpp"

namespace quadtail {

double theta_m_series(double b, int m, int terms) {
    double s = 0, p = 1;
    for (int i = 0; i < terms; ++i) {
        s += p / (i + m + 1);
        p *= b;
    }
    return s;
}

double theta_m(double b, int m, const Tolerances& tol) {
    if (m < 1) throw domain_error("theta_m requires m >= 1");
    if (!(b >= 0.0 && b < 1.0)) throw domain_error("theta_m requires 0 <= b < 1");
    if (b == 0.0) return 1.0 / (m + 1);

    const double bm1 = std::pow(b, m + 1);
    if (bm1 < 0.5) {
        double s = 0, p = 1;
        for (int i = 0; i < 100000; ++i) {
            const double term = p / (i + m + 1);
            s += term;
            if (term < tol.series_tol * s) return s;
            p *= b;
        }
        throw numerical_error("theta_m series did not converge");
    }
    double head = 0, p = b;
    for (int k = 1; k <= m; ++k) {
        head += p / k;
        p *= b;
    }
    return (-std::log1p(-b) - head) / bm1;
}

const HwConstants& hw_constants() {
    static const HwConstants c = [] {
        HwConstants h;
        auto f1 = [](double b) { return 2.0 * b * theta_m(b, 1) - 1.0; };
        h.b_star = solve_root(f1, make_bracket(f1, 1e-6, 1.0 - 1e-9), 1e-15);
        h.kappa = h.b_star / 4.0;
        auto f2 = [](double b) {
            return (4.0 / std::sqrt(3.0)) * b * std::sqrt(theta_m(b, 2)) - 1.0;
        };
        h.b_star_twin = solve_root(f2, make_bracket(f2, 1e-6, 1.0 - 1e-9), 1e-15);
        h.kappa_prime = h.b_star_twin / 3.0;
        h.kappa_psd = (9.0 - std::sqrt(17.0)) / 32.0;
        h.a0 = (7.0 - std::sqrt(17.0)) / 4.0;
        return h;
    }();
    return c;
}

Bracket make_bracket(const std::function<double(double)>& f, double lo, double hi) {
    if (!(lo < hi)) throw domain_error("bracket requires lo < hi");
    const double f_lo = f(lo), f_hi = f(hi);
    if (!std::isfinite(f_lo) || !std::isfinite(f_hi))
        throw numerical_error("bracket endpoint evaluated non-finite");
    if (f_lo * f_hi > 0.0) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "no sign change on [%.6g, %.6g]: f = %.6g, %.6g", lo, hi,
                      f_lo, f_hi);
        throw domain_error(buf);
    }
    return Bracket{lo, hi, f_lo, f_hi};
}

double solve_root(const std::function<double(double)>& f, Bracket br, double tol) {
    if (br.f_lo == 0.0) return br.lo;
    if (br.f_hi == 0.0) return br.hi;
    double lo = br.lo, hi = br.hi, f_lo = br.f_lo;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double width = hi - lo;
        if (width <= std::max(tol, 4.0 * std::numeric_limits<double>::epsilon() *
                                       std::abs(mid)))
            return mid;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if ((f_lo < 0) == (f_mid < 0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::pair<double, double> minimize_1d(const std::function<double(double)>& f,
                                      double lo, double hi, double tol) {
    if (!(lo < hi)) throw domain_error("minimize_1d requires lo < hi");
    constexpr int kScan = 64;
    double best_x = lo, best_f = std::numeric_limits<double>::infinity();
    std::vector<double> xs(kScan + 1), fs(kScan + 1);
    for (int i = 0; i <= kScan; ++i) {
        const double x = lo + (hi - lo) * i / kScan;
        const double fx = f(x);
        xs[i] = x;
        fs[i] = fx;
        if (std::isfinite(fx) && fx < best_f) {
            best_f = fx;
            best_x = x;
        }
    }
    if (!std::isfinite(best_f))
        throw numerical_error("minimize_1d: objective non-finite on whole scan");

    int k = 0;
    for (int i = 0; i <= kScan; ++i)
        if (xs[i] == best_x) k = i;
    double a = xs[std::max(0, k - 1)], b = xs[std::min(kScan, k + 1)];

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2 || !std::isfinite(f2)) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    double xm = 0.5 * (a + b);
    double fm = f(xm);
    // Keep the scan winner if refinement somehow did not improve on it.
    if (!(fm <= best_f)) {
        xm = best_x;
        fm = best_f;
    }
    return {xm, fm};
}

namespace {

// Lower series: P(a,x) = x^a e^-x / Gamma(a) * sum_{k>=0} x^k / (a(a+1)...(a+k)).
// Returns log of the sum factor; caller assembles.
double gamma_p_series_log_terms(double a, double x, double series_tol, double* sum_out) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k <= 500; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::abs(term) < std::abs(sum) * series_tol) {
            *sum_out = sum;
            return 0.0;
        }
    }
    throw numerical_error("incomplete gamma series did not converge");
}

// Modified Lentz continued fraction for Q(a,x), valid for x >= a+1.
// Returns the CF value h with Q(a,x) = e^(-x + a ln x - lgamma(a)) * h.
double gamma_q_cf(double a, double x, double series_tol) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < series_tol) return h;
    }
    throw numerical_error("incomplete gamma continued fraction did not converge");
}

} // namespace

double gamma_p(double a, double x, const Tolerances& tol) {
    if (!(a > 0.0)) throw domain_error("gamma_p requires a > 0");
    if (x < 0.0) throw domain_error("gamma_p requires x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) {
        double sum = 0;
        gamma_p_series_log_terms(a, x, tol.series_tol, &sum);
        const double lg = -x + a * std::log(x) - std::lgamma(a);
        return sum * std::exp(lg);
    }
    const double h = gamma_q_cf(a, x, tol.series_tol);
    const double lg = -x + a * std::log(x) - std::lgamma(a);
    return 1.0 - h * std::exp(lg);
}

double log_gamma_q(double a, double x, const Tolerances& tol) {
    if (!(a > 0.0)) throw domain_error("log_gamma_q requires a > 0");
    if (x < 0.0) throw domain_error("log_gamma_q requires x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) {
        double sum = 0;
        gamma_p_series_log_terms(a, x, tol.series_tol, &sum);
        const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        if (p >= 1.0) return -std::numeric_limits<double>::infinity();
        return std::log1p(-p);
    }
    const double h = gamma_q_cf(a, x, tol.series_tol);
    return -x + a * std::log(x) - std::lgamma(a) + std::log(h);
}

double chi2_cdf(int n, double x, const Tolerances& tol) {
    if (n < 1) throw domain_error("chi-square requires n >= 1");
    if (x <= 0.0) return 0.0;
    return gamma_p(0.5 * n, 0.5 * x, tol);
}

double chi2_sf(int n, double x, const Tolerances& tol) {
    return std::exp(log_chi2_sf(n, x, tol));
}

double log_chi2_sf(int n, double x, const Tolerances& tol) {
    if (n < 1) throw domain_error("chi-square requires n >= 1");
    if (x <= 0.0) return 0.0;
    return log_gamma_q(0.5 * n, 0.5 * x, tol);
}

double chi2_cdf_even(int n, double x) {
    const double ls = log_chi2_sf_even(n, x);
    return -std::expm1(ls);
}

double log_chi2_sf_even(int n, double x) {
    if (n < 2 || n % 2 != 0) throw domain_error("even-n form requires even n >= 2");
    if (x <= 0.0) return 0.0;
    // Q(x) = e^(-x/2) sum_{i<n/2} (x/2)^i / i!; accumulate via logsumexp.
    const int h = n / 2;
    const double y = 0.5 * x;
    const double ly = std::log(y);
    double lmax = -std::numeric_limits<double>::infinity();
    std::vector<double> lt(h);
    for (int i = 0; i < h; ++i) {
        lt[i] = i * ly - std::lgamma(i + 1.0);
        lmax = std::max(lmax, lt[i]);
    }
    double s = 0;
    for (int i = 0; i < h; ++i) s += std::exp(lt[i] - lmax);
    return -y + lmax + std::log(s);
}

} // namespace quadtail
