#include "quadtail/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "quadtail/errors.hpp"

namespace quadtail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_t_positive(double t) {
    if (!std::isfinite(t) || !(t > 0.0))
        throw domain_error("tail parameter t must be positive and finite");
}

void check_t_nonnegative(double t) {
    if (!std::isfinite(t) || t < 0.0)
        throw domain_error("tail parameter t must be nonnegative and finite");
}

void check_alpha(double alpha) {
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw domain_error("operator norm alpha must be nonnegative and finite");
}

BoundValue degenerate_value(BoundName name) {
    BoundValue v;
    v.name = name;
    v.log_value = -kInf;
    v.probability = 0.0;
    v.degenerate = true;
    return v;
}

void require_psd(const SpectralSummary& s, const char* what) {
    if (!s.is_psd)
        throw domain_error(std::string(what) + " requires positive-semidefinite input");
}

// Two-branch exponent on raw (alpha, beta); all domain checks live in callers.
double lm_exponent_ab(double alpha, double beta, double t, double a) {
    const double rho = alpha * t / beta;
    const double c =
        (a == 1.0) ? kInf : (3.0 * a - 2.0) / (2.0 * (1.0 - a) * (1.0 - a));
    if (rho <= c) {
        const double root = std::sqrt(1.0 + 2.0 * a * rho);
        return -(t * t) / (beta * (1.0 + root) * (1.0 + root));
    }
    const double b = (3.0 * a - 2.0) / (a * (2.0 * a - 1.0));
    return -b * t / (2.0 * alpha) +
           b * b * beta * (2.0 * a - 1.0) / (4.0 * (1.0 - a) * alpha * alpha);
}

double kappa_m_of(double b, int m, const Tolerances& tol) {
    const double th = theta_m(b, m, tol);
    const double first = std::pow((m + 1) * th, -1.0 / m);
    return (0.5 * m / (m + 1)) * std::min(first, b);
}

double schatten_min_term(const SpectralSummary& s, double t, int m) {
    const double sm1 = s.schatten(m + 1);
    return std::min(std::pow(t / sm1, 1.0 + 1.0 / m), t / s.alpha);
}

} // namespace

const char* to_string(BoundName name) {
    switch (name) {
        case BoundName::HW: return "HW";
        case BoundName::LM_CLASSIC: return "LM_CLASSIC";
        case BoundName::LM_AUGMENTED: return "LM_AUGMENTED";
        case BoundName::LM_OPTIMAL: return "LM_OPTIMAL";
        case BoundName::LAMBDA_M: return "LAMBDA_M";
        case BoundName::LAMBDA_M_LOOSE: return "LAMBDA_M_LOOSE";
        case BoundName::M_INF: return "M_INF";
        case BoundName::TWIN: return "TWIN";
        case BoundName::CHI2: return "CHI2";
        case BoundName::CHI2_PSD: return "CHI2_PSD";
        case BoundName::HW_RELAXED: return "HW_RELAXED";
        case BoundName::LM_RELAXED: return "LM_RELAXED";
        case BoundName::LARGE_DEVIATION: return "LARGE_DEVIATION";
    }
    return "?";
}

std::optional<BoundName> bound_from_string(std::string name) {
    for (char& ch : name) {
        ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        if (ch == '-') ch = '_';
    }
    static const std::pair<const char*, BoundName> table[] = {
        {"HW", BoundName::HW},
        {"LM_CLASSIC", BoundName::LM_CLASSIC},
        {"LM_AUGMENTED", BoundName::LM_AUGMENTED},
        {"LM_OPTIMAL", BoundName::LM_OPTIMAL},
        {"LAMBDA_M", BoundName::LAMBDA_M},
        {"LAMBDA_M_LOOSE", BoundName::LAMBDA_M_LOOSE},
        {"M_INF", BoundName::M_INF},
        {"TWIN", BoundName::TWIN},
        {"CHI2", BoundName::CHI2},
        {"CHI2_PSD", BoundName::CHI2_PSD},
        {"HW_RELAXED", BoundName::HW_RELAXED},
        {"LM_RELAXED", BoundName::LM_RELAXED},
        {"LARGE_DEVIATION", BoundName::LARGE_DEVIATION},
    };
    for (const auto& [k, v] : table)
        if (name == k) return v;
    return std::nullopt;
}

BoundValue make_bound_value(BoundName name, double log_value,
                            std::map<std::string, double> params) {
    BoundValue v;
    v.name = name;
    v.log_value = log_value;
    v.probability = log_value >= 0.0 ? 1.0 : std::exp(log_value);
    v.params = std::move(params);
    return v;
}

BoundValue hw_bound(const SpectralSummary& s, double t, double kappa) {
    check_t_positive(t);
    if (!(kappa > 0.0)) throw domain_error("kappa must be positive");
    if (s.alpha == 0.0) return degenerate_value(BoundName::HW);
    const double c = std::min(t * t / s.beta, t / s.alpha);
    return make_bound_value(BoundName::HW, -kappa * c, {{"kappa", kappa}});
}

BoundValue hw_bound(const SpectralSummary& s, double t) {
    check_t_positive(t);
    if (s.alpha == 0.0) return degenerate_value(BoundName::HW);
    const auto& hc = hw_constants();
    return hw_bound(s, t, s.is_psd ? hc.kappa_psd : hc.kappa);
}

double lm_exponent(const SpectralSummary& s, double t, double a) {
    check_t_positive(t);
    if (!(a > 2.0 / 3.0 && a <= 1.0))
        throw domain_error("branch parameter a must lie in (2/3, 1]");
    require_psd(s, "the two-branch exponential bound");
    if (s.alpha == 0.0) return -kInf;
    return lm_exponent_ab(s.alpha, s.beta, t, a);
}

BoundValue lm_classic(const SpectralSummary& s, double t) {
    check_t_positive(t);
    require_psd(s, "the classic square-root bound");
    if (s.alpha == 0.0) return degenerate_value(BoundName::LM_CLASSIC);
    return make_bound_value(BoundName::LM_CLASSIC, lm_exponent_ab(s.alpha, s.beta, t, 1.0),
                            {{"a", 1.0}});
}

double a_hat_opt(double rho) {
    if (!(rho > 0.0)) throw domain_error("rho must be positive");
    return 4.0 * (rho + 1.0) / (4.0 * rho + 3.0 + std::sqrt(8.0 * rho + 9.0));
}

double a_opt_quintic(double rho, const Tolerances& tol) {
    if (!(rho > 0.0)) throw domain_error("rho must be positive");
    auto q = [rho](double a) {
        return ((((12.0 * rho * a + (36.0 - 40.0 * rho)) * a +
                  (48.0 * rho - 99.0)) *
                     a +
                 (104.0 - 24.0 * rho)) *
                    a +
                (4.0 * rho - 48.0)) *
                   a +
               8.0;
    };
    const double lo = 2.0 / 3.0;
    const double hi = a_hat_opt(rho);
    const double f_hi = q(hi);
    // q(2/3) = -8 rho/81 in exact arithmetic; the float evaluation of the
    // quintic cancels to noise there for small rho, so use the closed form.
    const double f_lo = -8.0 * rho / 81.0;
    // The true endpoint value shrinks like ~3.7e-3 rho^3, so below the Horner
    // noise floor the computed sign is meaningless; there the root and the
    // endpoint agree to far better than any root tolerance, so return hi.
    const double noise = 16.0 * std::numeric_limits<double>::epsilon() *
                         (12.0 * rho + std::abs(36.0 - 40.0 * rho) +
                          std::abs(48.0 * rho - 99.0) + 104.0 + 24.0 * rho +
                          48.0 + 4.0 * rho + 8.0);
    if (f_hi < -noise)
        throw numerical_error("quintic has no sign change on (2/3, a_hat]");
    if (f_hi <= noise) return hi;
    return solve_root(q, Bracket{lo, hi, f_lo, f_hi}, tol.root_tol);
}

BoundValue lm_augmented(const SpectralSummary& s, double t) {
    check_t_positive(t);
    require_psd(s, "the augmented square-root bound");
    if (s.alpha == 0.0) return degenerate_value(BoundName::LM_AUGMENTED);
    const double rho = s.alpha * t / s.beta;
    const double a = a_hat_opt(rho);
    return make_bound_value(BoundName::LM_AUGMENTED, lm_exponent_ab(s.alpha, s.beta, t, a),
                            {{"a", a}, {"rho", rho}});
}

BoundValue lm_optimal(const SpectralSummary& s, double t, const Tolerances& tol) {
    check_t_positive(t);
    require_psd(s, "the optimal square-root bound");
    if (s.alpha == 0.0) return degenerate_value(BoundName::LM_OPTIMAL);
    const double rho = s.alpha * t / s.beta;
    const double a = a_opt_quintic(rho, tol);
    return make_bound_value(BoundName::LM_OPTIMAL, lm_exponent_ab(s.alpha, s.beta, t, a),
                            {{"a", a}, {"rho", rho}});
}

BoundValue lm_augmented_relaxed(const SpectralSummary& s, double t) {
    check_t_positive(t);
    require_psd(s, "the relaxed augmented square-root bound");
    if (s.alpha == 0.0) return degenerate_value(BoundName::LM_AUGMENTED);
    const double beta_hat = double(s.n) * s.alpha * s.alpha;
    const double rho = t / (double(s.n) * s.alpha);
    const double a = a_hat_opt(rho);
    return make_bound_value(BoundName::LM_AUGMENTED,
                            lm_exponent_ab(s.alpha, beta_hat, t, a),
                            {{"a", a}, {"rho", rho}, {"relaxed", 1.0}});
}

BoundValue lm_optimal_relaxed(const SpectralSummary& s, double t,
                              const Tolerances& tol) {
    check_t_positive(t);
    require_psd(s, "the relaxed optimal square-root bound");
    if (s.alpha == 0.0) return degenerate_value(BoundName::LM_OPTIMAL);
    const double beta_hat = double(s.n) * s.alpha * s.alpha;
    const double rho = t / (double(s.n) * s.alpha);
    const double a = a_opt_quintic(rho, tol);
    return make_bound_value(BoundName::LM_OPTIMAL,
                            lm_exponent_ab(s.alpha, beta_hat, t, a),
                            {{"a", a}, {"rho", rho}, {"relaxed", 1.0}});
}

double lambda_m(const SpectralSummary& s, double t, int m, double b,
                const Tolerances& tol) {
    check_t_positive(t);
    if (m < 1 || m > 200) throw domain_error("m must lie in 1..200");
    if (!(b > 0.0 && b < 1.0)) throw domain_error("b must lie in (0,1)");
    if (s.alpha == 0.0) return -kInf;
    double head = 0.0, p = b * b;
    for (int k = 2; k <= m; ++k) {
        head += p / k;
        p *= b;
    }
    head *= 0.5 * double(s.n);
    return head - kappa_m_of(b, m, tol) * schatten_min_term(s, t, m);
}

BoundValue lambda_m_bound(const SpectralSummary& s, double t, int m,
                          const Tolerances& tol) {
    check_t_positive(t);
    if (m < 1 || m > 200) throw domain_error("m must lie in 1..200");
    if (s.alpha == 0.0) return degenerate_value(BoundName::LAMBDA_M);
    auto f = [&](double b) { return lambda_m(s, t, m, b, tol); };
    auto [b_opt, val] = minimize_1d(f, 1e-9, 1.0 - 1e-9, tol.minimize_tol);
    // the b->0 limit of the objective is 0, so the infimum is never positive
    val = std::min(val, 0.0);
    return make_bound_value(BoundName::LAMBDA_M, val,
                            {{"m", double(m)}, {"b", b_opt}});
}

BoundValue lambda_m_loose(const SpectralSummary& s, double t, int m, double eps,
                          const Tolerances& tol) {
    check_t_positive(t);
    if (m < 2 || m > 200) throw domain_error("the minimization-free bound requires 2 <= m <= 200");
    if (!(eps > 0.0)) throw domain_error("eps must be positive");
    if (s.alpha == 0.0) return degenerate_value(BoundName::LAMBDA_M_LOOSE);
    const double target = std::log1p(eps);
    auto head = [&](double b) {
        double sum = 0.0, p = b * b;
        for (int k = 2; k <= m; ++k) {
            sum += p / k;
            p *= b;
        }
        return 0.5 * double(s.n) * sum;
    };
    const double hi = 1.0 - 1e-12;
    if (head(hi) < target)
        throw domain_error("eps too large: no b in (0,1) reaches ln(1+eps) for this n, m");
    auto g = [&](double b) { return head(b) - target; };
    const double b_t = solve_root(g, make_bracket(g, 1e-12, hi), tol.root_tol);
    const double km = kappa_m_of(b_t, m, tol);
    return make_bound_value(
        BoundName::LAMBDA_M_LOOSE, target - km * schatten_min_term(s, t, m),
        {{"m", double(m)}, {"b", b_t}, {"eps", eps}, {"kappa", km}});
}

BoundValue m_inf_bound(std::size_t n, double alpha, double t) {
    if (n < 1) throw domain_error("n must be >= 1");
    check_alpha(alpha);
    check_t_nonnegative(t);
    if (alpha == 0.0) return degenerate_value(BoundName::M_INF);
    const double r = t / alpha;
    const double lv = 0.5 * double(n) * std::log1p(r / double(n)) - 0.5 * r;
    return make_bound_value(BoundName::M_INF, lv, {{"r", r}});
}

TwinComponents twin_components(const SpectralSummary& s, double t) {
    check_t_positive(t);
    if (!(s.gamma > 0.0))
        throw domain_error("the cubic-moment bound requires gamma > 0");
    const double beta = s.beta, gamma = s.gamma, alpha = s.alpha;
    const double disc = std::sqrt(beta * beta + 4.0 * gamma * t);
    const double q = 4.0 * gamma * t / (disc + beta); // = sqrt(beta^2+4 gamma t) - beta
    const double eta1 = q * (8.0 * gamma * t - beta * q) / (12.0 * gamma * gamma);
    const double eta2 = t / alpha - (3.0 * beta / (4.0 * alpha)) *
                                        std::min(1.0 / alpha, q / (2.0 * gamma));
    return {eta1, eta2};
}

BoundValue twin_bound(const SpectralSummary& s, double t) {
    check_t_positive(t);
    if (s.alpha == 0.0) return degenerate_value(BoundName::TWIN);
    const auto tc = twin_components(s, t);
    const double k = hw_constants().kappa_prime;
    return make_bound_value(BoundName::TWIN, -k * std::min(tc.eta1, tc.eta2),
                            {{"eta1", tc.eta1}, {"eta2", tc.eta2}});
}

BoundValue chi2_bound(const SpectralSummary& s, double t, const Tolerances& tol) {
    check_t_positive(t);
    if (s.alpha == 0.0) return degenerate_value(BoundName::CHI2);
    const double lmax = s.lambda_max;
    if (lmax == 0.0)
        throw domain_error("the chi-square comparison requires a nonzero largest eigenvalue");
    const double arg = (s.trace + t) / lmax;
    const int n = static_cast<int>(s.n);
    double lv;
    if (lmax > 0.0) {
        lv = log_chi2_sf(n, arg, tol);
    } else if (arg <= 0.0) {
        lv = -kInf;
    } else {
        const double p = chi2_cdf(n, arg, tol);
        lv = p > 0.0 ? std::log(p) : -kInf;
    }
    return make_bound_value(BoundName::CHI2, lv,
                            {{"lambda_max", lmax}, {"arg", arg}});
}

BoundValue chi2_bound_psd(const SpectralSummary& s, double t,
                          const Tolerances& tol) {
    check_t_positive(t);
    require_psd(s, "the norm-only chi-square comparison");
    if (s.alpha == 0.0) return degenerate_value(BoundName::CHI2_PSD);
    const double arg = 1.0 + t / s.alpha;
    return make_bound_value(BoundName::CHI2_PSD,
                            log_chi2_sf(static_cast<int>(s.n), arg, tol),
                            {{"arg", arg}});
}

BoundValue hw_relaxed(std::size_t n, double alpha, double t) {
    if (n < 1) throw domain_error("n must be >= 1");
    check_alpha(alpha);
    check_t_nonnegative(t);
    if (alpha == 0.0) return degenerate_value(BoundName::HW_RELAXED);
    const double kp = hw_constants().kappa_psd;
    const double c =
        std::min(t * t / (double(n) * alpha * alpha), t / alpha);
    return make_bound_value(BoundName::HW_RELAXED, -kp * c, {{"kappa", kp}});
}

BoundValue lm_relaxed(std::size_t n, double alpha, double t) {
    if (n < 1) throw domain_error("n must be >= 1");
    check_alpha(alpha);
    check_t_nonnegative(t);
    if (alpha == 0.0) return degenerate_value(BoundName::LM_RELAXED);
    // (sqrt(1+u)-1)^2 via u/(sqrt(1+u)+1) so small t keeps full precision
    const double u = 2.0 * t / (double(n) * alpha);
    const double w = u / (std::sqrt(1.0 + u) + 1.0);
    return make_bound_value(BoundName::LM_RELAXED, -0.25 * double(n) * w * w, {});
}

BoundValue large_deviation_bound(std::size_t n, double alpha, double t) {
    if (n < 1) throw domain_error("n must be >= 1");
    check_alpha(alpha);
    check_t_nonnegative(t);
    if (alpha == 0.0) return degenerate_value(BoundName::LARGE_DEVIATION);
    const double r = t / alpha;
    if (1.0 + r < double(n))
        throw domain_error("comparison curve is defined only for 1 + t/alpha >= n");
    const double lv = -0.5 +
                      0.5 * double(n) * (1.0 + std::log1p(r) - std::log(double(n))) -
                      0.5 * r;
    return make_bound_value(BoundName::LARGE_DEVIATION, lv, {{"r", r}});
}

double t_hat_c(std::size_t n, double alpha, double kappa, const Tolerances&) {
    if (n < 1) throw domain_error("n must be >= 1");
    if (!(alpha > 0.0)) throw domain_error("alpha must be positive");
    if (!(kappa > 0.0 && kappa < 0.5))
        throw domain_error("kappa must lie in (0, 1/2)");
    const double nd = double(n);
    auto g = [&](double r) {
        return 0.5 * nd * std::log1p(r / nd) - (0.5 - kappa) * r;
    };
    // g rises from 0 (slope kappa), peaks at r* = 2 kappa n/(1-2 kappa),
    // then decreases without bound: bracket the unique positive root from r*.
    const double r_star = 2.0 * kappa * nd / (1.0 - 2.0 * kappa);
    double hi = std::max(2.0 * r_star, nd);
    while (g(hi) > 0.0) {
        hi *= 2.0;
        if (hi > 1e300) throw numerical_error("crossing point bracket diverged");
    }
    const double r_hat = solve_root(g, make_bracket(g, r_star, hi), 1e-9);
    return alpha * r_hat;
}

double lm_reparameterize_forward(double beta, double alpha, double t) {
    if (!(beta > 0.0) || !(alpha > 0.0) || !(t > 0.0))
        throw domain_error("positive arguments required");
    return 2.0 * std::sqrt(beta * t) + 2.0 * alpha * t;
}

double lm_reparameterize_inverse(double beta, double alpha, double t_prime) {
    if (!(beta > 0.0) || !(alpha > 0.0) || !(t_prime > 0.0))
        throw domain_error("positive arguments required");
    const double u =
        t_prime / (std::sqrt(beta + 2.0 * alpha * t_prime) + std::sqrt(beta));
    return u * u;
}

bool requires_psd(BoundName name) {
    switch (name) {
        case BoundName::LM_CLASSIC:
        case BoundName::LM_AUGMENTED:
        case BoundName::LM_OPTIMAL:
        case BoundName::CHI2_PSD:
        case BoundName::HW_RELAXED:
        case BoundName::LM_RELAXED:
            return true;
        default:
            return false;
    }
}

BoundValue evaluate_bound(const SpectralSummary& s, double t, BoundName name,
                          int lambda_m_choice, double loose_eps,
                          const Tolerances& tol) {
    switch (name) {
        case BoundName::HW: return hw_bound(s, t);
        case BoundName::LM_CLASSIC: return lm_classic(s, t);
        case BoundName::LM_AUGMENTED: return lm_augmented(s, t);
        case BoundName::LM_OPTIMAL: return lm_optimal(s, t, tol);
        case BoundName::LAMBDA_M: return lambda_m_bound(s, t, lambda_m_choice, tol);
        case BoundName::LAMBDA_M_LOOSE:
            return lambda_m_loose(s, t, lambda_m_choice, loose_eps, tol);
        case BoundName::M_INF: return m_inf_bound(s.n, s.alpha, t);
        case BoundName::TWIN: return twin_bound(s, t);
        case BoundName::CHI2: return chi2_bound(s, t, tol);
        case BoundName::CHI2_PSD: return chi2_bound_psd(s, t, tol);
        case BoundName::HW_RELAXED: return hw_relaxed(s.n, s.alpha, t);
        case BoundName::LM_RELAXED: return lm_relaxed(s.n, s.alpha, t);
        case BoundName::LARGE_DEVIATION:
            return large_deviation_bound(s.n, s.alpha, t);
    }
    throw domain_error("unknown bound name");
}

} // namespace quadtail
