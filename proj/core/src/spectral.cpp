#include "quadtail/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "quadtail/errors.hpp"

namespace quadtail {

namespace {

double off_diag_norm(const std::vector<double>& a, std::size_t n) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(2.0 * s);
}

} // namespace

std::vector<double> eigendecompose(const SymmetricMatrix& m) {
    const std::size_t n = m.n();
    std::vector<double> a = m.data();
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    const double fro = m.frobenius();
    const double thresh = 1e-12 * std::max(fro, 1e-300);

    if (n == 1) {
        return {a[0]};
    }

    // Cyclic Jacobi: sweep upper-triangle (p,q) pairs, rotating each away.
    bool converged = off_diag_norm(a, n) <= thresh;
    int sweep = 0;
    for (; sweep < 100 && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double tau = (aqq - app) / (2.0 * apq);
                // smaller-magnitude root of t^2 + 2 tau t - 1 = 0
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p];
                    const double vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        converged = off_diag_norm(a, n) <= thresh;
    }
    if (!converged) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "Jacobi eigensolver did not converge in 100 sweeps "
                      "(off-diagonal norm %.3e, threshold %.3e)",
                      off_diag_norm(a, n), thresh);
        throw numerical_error(buf);
    }

    std::vector<double> eig(n);
    double alpha = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        eig[i] = a[i * n + i];
        alpha = std::max(alpha, std::abs(eig[i]));
    }

    // Validate every eigenpair: ||A v_i - eig_i v_i|| <= 1e-9 ||A||.
    const double rtol = 1e-9 * alpha;
    for (std::size_t i = 0; i < n; ++i) {
        double res = 0;
        for (std::size_t r = 0; r < n; ++r) {
            double av = 0;
            for (std::size_t k = 0; k < n; ++k) av += m(r, k) * v[k * n + i];
            const double d = av - eig[i] * v[r * n + i];
            res += d * d;
        }
        if (std::sqrt(res) > rtol) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "eigenpair %zu residual %.3e exceeds %.3e", i,
                          std::sqrt(res), rtol);
            throw numerical_error(buf);
        }
    }

    std::sort(eig.begin(), eig.end(), std::greater<double>());
    return eig;
}

SpectralSummary SpectralSummary::from_eigenvalues(std::vector<double> eig) {
    if (eig.empty()) throw domain_error("eigenvalue list must be non-empty");
    for (double v : eig)
        if (!std::isfinite(v)) throw domain_error("eigenvalues must be finite");
    std::sort(eig.begin(), eig.end(), std::greater<double>());

    SpectralSummary s;
    s.n = eig.size();
    s.alpha = std::max(std::abs(eig.front()), std::abs(eig.back()));
    s.lambda_max = eig.front();
    double b = 0, g = 0, tr = 0;
    for (double v : eig) {
        b += v * v;
        g += std::abs(v) * v * v;
        tr += v;
    }
    s.beta = b;
    s.gamma = g;
    s.trace = tr;
    const double psd_tol = 1e-10 * s.alpha;
    s.is_psd = true;
    for (double v : eig)
        if (v < -psd_tol) s.is_psd = false;
    s.eigenvalues = std::move(eig);
    return s;
}

double SpectralSummary::schatten(int p) const {
    if (p < 1) throw domain_error("Schatten order must be >= 1");
    if (alpha == 0.0) return 0.0;
    // Factor out the largest modulus so the sum stays in [1, n].
    double s = 0;
    for (double v : eigenvalues) s += std::pow(std::abs(v) / alpha, p);
    return alpha * std::pow(s, 1.0 / p);
}

SpectralSummary spectral_summary(const SymmetricMatrix& m) {
    return SpectralSummary::from_eigenvalues(eigendecompose(m));
}

} // namespace quadtail
