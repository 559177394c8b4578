#include "quadtail/crossover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quadtail/errors.hpp"
#include "quadtail/scalar.hpp"

namespace quadtail {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double lchoose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void check_even(int n) {
    if (n < 2 || n > 200 || n % 2 != 0)
        throw domain_error("n must be even and in 2..200");
}

double logaddexp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

} // namespace

double Poly::operator()(double r) const {
    double acc = 0.0;
    for (int j = degree(); j >= 0; --j) acc = acc * r + coeffs[j];
    return acc;
}

Poly trim(Poly p) {
    double mx = 0.0;
    for (double c : p.coeffs) mx = std::max(mx, std::abs(c));
    const double tol = 1e-15 * mx;
    while (p.coeffs.size() > 1 && std::abs(p.coeffs.back()) <= tol)
        p.coeffs.pop_back();
    return p;
}

Poly poly1(int n) {
    check_even(n);
    const int h = n / 2;
    Poly p;
    p.coeffs.resize(h + 1);
    const double ln_n = std::log(double(n));
    for (int j = 0; j <= h; ++j)
        p.coeffs[j] = std::exp(lchoose(h, j) - j * ln_n);
    return p;
}

Poly poly2(int n) {
    check_even(n);
    const int h = n / 2;
    const double ln2 = std::log(2.0);
    Poly p;
    p.coeffs.resize(h);
    for (int j = 0; j < h; ++j) {
        double sum = 0.0;
        for (int i = j; i < h; ++i)
            sum += std::exp(lchoose(i, j) - i * ln2 - std::lgamma(i + 1.0));
        p.coeffs[j] = std::exp(-0.5) * sum;
    }
    return p;
}

Poly diff_poly(int n) {
    check_even(n);
    const int h = n / 2;
    const double ln2 = std::log(2.0);
    Poly d;
    d.coeffs.resize(h + 1);
    for (int j = 0; j <= h; ++j) {
        if (j == h) {
            // leading coefficient is exactly 1/n^h (the subtrahend has
            // degree h-1); the general assembly below would cancel here
            d.coeffs[j] = std::exp(-h * std::log(double(n)));
            continue;
        }
        // T_j = sum_{i>=h} C(i,j)/(2^i i!), a strictly positive tail with
        // term ratio 1/(2(i+1-j)) <= 1/2
        double term = std::exp(-std::lgamma(j + 1.0) - std::lgamma(h - j + 1.0) -
                               h * ln2);
        double tail = term;
        for (int i = h;; ++i) {
            term /= 2.0 * (i + 1 - j);
            tail += term;
            if (term < 1e-17 * tail) break;
        }
        // (prod_{k<j}(1 - 2k/n) - 1) / (2^j j!), cleanly negative; zero when
        // j < 2 because the product is empty or starts at k=0
        double head = 0.0;
        if (j >= 2) {
            double lsum = 0.0;
            for (int k = 1; k < j; ++k) lsum += std::log1p(-2.0 * k / n);
            head = std::expm1(lsum) * std::exp(-j * ln2 - std::lgamma(j + 1.0));
        }
        d.coeffs[j] = head + std::exp(-0.5) * tail;
    }
    return d;
}

int sign_changes(const Poly& p, double zero_tol) {
    double mx = 0.0;
    for (double c : p.coeffs) mx = std::max(mx, std::abs(c));
    if (mx == 0.0) throw domain_error("sign counting needs a nonzero polynomial");
    const double tol = zero_tol < 0.0 ? 1e-13 * mx : zero_tol;
    int count = 0, prev = 0;
    for (double c : p.coeffs) {
        if (std::abs(c) <= tol) continue;
        const int s = c > 0.0 ? 1 : -1;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

int eval_sign(const Poly& p, double r) {
    if (!(r >= 0.0)) throw domain_error("eval_sign expects r >= 0");
    if (r == 0.0) {
        const double c = p.coeffs.empty() ? 0.0 : p.coeffs[0];
        return c > 0.0 ? 1 : (c < 0.0 ? -1 : 0);
    }
    const double lr = std::log(r);
    double lmax = kNegInf;
    for (int j = 0; j <= p.degree(); ++j)
        if (p.coeffs[j] != 0.0)
            lmax = std::max(lmax, std::log(std::abs(p.coeffs[j])) + j * lr);
    if (lmax == kNegInf) return 0;
    if (lmax > -600.0 && lmax < 600.0) {
        const double v = p(r);
        return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    }
    // terms out of double range: compare positive and negative mass in logs
    double lpos = kNegInf, lneg = kNegInf;
    for (int j = 0; j <= p.degree(); ++j) {
        const double c = p.coeffs[j];
        if (c > 0.0)
            lpos = logaddexp(lpos, std::log(c) + j * lr);
        else if (c < 0.0)
            lneg = logaddexp(lneg, std::log(-c) + j * lr);
    }
    if (lpos == lneg) return 0;
    return lpos > lneg ? 1 : -1;
}

Crossings find_crossings(int n, const Tolerances& tol) {
    if (n < 8 || n > 200 || n % 2 != 0)
        throw domain_error("crossings exist only for even n >= 8");
    const Poly d = diff_poly(n);
    if (eval_sign(d, 1.0) >= 0)
        throw numerical_error("difference polynomial is not negative at r = 1");

    // r_n and r'_n span many orders of magnitude as n grows, so all
    // bracketing and bisection happens in ln r (tolerance is relative in r).
    auto bisect_ln = [&](double lo_ln, double hi_ln, int s_lo) {
        while (hi_ln - lo_ln > tol.root_tol) {
            const double mid = 0.5 * (lo_ln + hi_ln);
            const int s = eval_sign(d, std::exp(mid));
            if (s == 0) return std::exp(mid);
            if (s == s_lo)
                lo_ln = mid;
            else
                hi_ln = mid;
        }
        return std::exp(0.5 * (lo_ln + hi_ln));
    };

    double w = 1.0;
    while (eval_sign(d, std::exp(-w)) < 0) {
        w *= 2.0;
        if (w > 1e6) throw numerical_error("no sign change found below r = 1");
    }
    const double r_n = bisect_ln(-w, w == 1.0 ? 0.0 : -w / 2.0, +1);

    double hi_ln = std::log(2.0);
    double lo_ln = 0.0;
    while (eval_sign(d, std::exp(hi_ln)) < 0) {
        lo_ln = hi_ln;
        hi_ln *= 2.0;
        if (hi_ln > 1e6) throw numerical_error("no sign change found above r = 1");
    }
    const double r_n_prime = bisect_ln(lo_ln, hi_ln, -1);

    if (!(r_n < 1.0 && 1.0 < r_n_prime))
        throw numerical_error("crossing points do not straddle r = 1");
    return {r_n, r_n_prime};
}

Poly poly_shift(const Poly& p, double s) {
    Poly q = p;
    const int d = q.degree();
    for (int i = 0; i < d; ++i)
        for (int j = d - 1; j >= i; --j) q.coeffs[j] += s * q.coeffs[j + 1];
    return q;
}

CrossoverReport crossover_report(int n, const Tolerances& tol) {
    check_even(n);
    CrossoverReport rep;
    rep.n = n;
    rep.sign_change_count = sign_changes(diff_poly(n), 0.0);
    if (rep.sign_change_count == 2) {
        const auto c = find_crossings(n, tol);
        rep.r_n = c.r_n;
        rep.r_n_prime = c.r_n_prime;
        rep.dominance = Dominance::M_INF_INSIDE_INTERVAL;
    } else if (rep.sign_change_count == 0) {
        rep.dominance = Dominance::CHI2_ALWAYS;
    } else {
        throw numerical_error("unexpected sign-change count in difference polynomial");
    }
    return rep;
}

std::vector<DominanceRow> dominance_table(int n, const std::vector<double>& r_grid,
                                          const Tolerances& tol) {
    if (n < 2) throw domain_error("n must be >= 2");
    std::optional<Crossings> roots;
    int count = -1; // -1: no polynomial claim (odd n)
    if (n % 2 == 0 && n <= 200) {
        const auto rep = crossover_report(n, tol);
        count = rep.sign_change_count;
        if (rep.r_n) roots = Crossings{*rep.r_n, *rep.r_n_prime};
    }
    std::vector<DominanceRow> rows;
    rows.reserve(r_grid.size());
    for (double r : r_grid) {
        if (!(r > 0.0)) throw domain_error("r grid must be positive");
        DominanceRow row;
        row.r = r;
        row.log_m_inf = 0.5 * n * std::log1p(r / n) - 0.5 * r;
        row.log_chi2 = log_chi2_sf(n, 1.0 + r, tol);
        row.m_inf_sharper_direct = row.log_m_inf < row.log_chi2;
        if (roots)
            row.m_inf_sharper_roots = roots->r_n < r && r < roots->r_n_prime;
        else if (count == 0)
            row.m_inf_sharper_roots = false;
        else
            row.m_inf_sharper_roots = row.m_inf_sharper_direct;
        rows.push_back(row);
    }
    return rows;
}

} // namespace quadtail
