#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "doctest.h"

#include "quadtail/bounds.hpp"
#include "quadtail/crossover.hpp"
#include "quadtail/errors.hpp"
#include "quadtail/montecarlo.hpp"
#include "quadtail/scalar.hpp"

using namespace quadtail;

namespace {

double lfact(int k) { return std::lgamma(k + 1.0); }

// naive coefficient-wise subtraction; reliable only while the true heads are
// not buried under cancellation (n <= ~16)
Poly naive_diff(int n) {
    const Poly p1 = poly1(n), p2 = poly2(n);
    Poly d;
    d.coeffs.resize(p1.coeffs.size());
    for (std::size_t j = 0; j < d.coeffs.size(); ++j) {
        d.coeffs[j] = p1.coeffs[j];
        if (j < p2.coeffs.size()) d.coeffs[j] -= p2.coeffs[j];
    }
    return d;
}

} // namespace

TEST_CASE("first polynomial family") {
    const Poly p2n = poly1(2);
    REQUIRE(p2n.coeffs.size() == 2);
    CHECK(p2n.coeffs[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p2n.coeffs[1] == doctest::Approx(0.5).epsilon(1e-15));

    const Poly p8 = poly1(8);
    const double want8[5] = {1.0, 0.5, 6.0 / 64, 4.0 / 512, 1.0 / 4096};
    REQUIRE(p8.coeffs.size() == 5);
    for (int j = 0; j < 5; ++j)
        CHECK(p8.coeffs[j] == doctest::Approx(want8[j]).epsilon(1e-14));

    // direct power oracle
    for (int n : {2, 6, 20, 64, 100}) {
        const Poly p = poly1(n);
        for (int i = 0; i <= 100; ++i) {
            const double r = 50.0 * i / 100.0;
            CHECK(p(r) ==
                  doctest::Approx(std::pow(1.0 + r / n, n / 2.0)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(poly1(7), domain_error);
    CHECK_THROWS_AS(poly1(202), domain_error);
}

TEST_CASE("second polynomial family") {
    const Poly p2 = poly2(2);
    REQUIRE(p2.coeffs.size() == 1);
    CHECK(p2.coeffs[0] == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));

    for (int n = 2; n <= 100; n += 2) {
        const Poly p = poly2(n);
        REQUIRE(p.degree() == n / 2 - 1);
        CHECK(p.coeffs[0] < 1.0);                       // constant term < 1
        if (p.coeffs.size() > 1) CHECK(p.coeffs[1] < 0.5); // linear term < 1/2
    }

    // defining-sum oracle
    for (int n : {4, 10, 40, 100}) {
        const Poly p = poly2(n);
        const int h = n / 2;
        std::uint64_t ctr = 0;
        for (int i = 0; i < 100; ++i) {
            const double r =
                50.0 * (counter_rng(42, ctr++) >> 11) * 0x1p-53;
            double sum = 0;
            for (int k = 0; k < h; ++k)
                sum += std::exp(k * std::log1p(r) - k * std::log(2.0) - lfact(k));
            sum *= std::exp(-0.5);
            CHECK(p(r) == doctest::Approx(sum).epsilon(1e-10));
        }
    }
}

TEST_CASE("difference polynomial: exact small-n coefficients") {
    const double ie = std::exp(-0.5); // 1/sqrt(e)

    const Poly d2 = diff_poly(2);
    REQUIRE(d2.coeffs.size() == 2);
    CHECK(d2.coeffs[0] == doctest::Approx(1.0 - ie).epsilon(1e-15));
    CHECK(d2.coeffs[1] == doctest::Approx(0.5).epsilon(1e-15));

    const Poly d4 = diff_poly(4);
    REQUIRE(d4.coeffs.size() == 3);
    CHECK(d4.coeffs[0] == doctest::Approx(1.0 - 1.5 * ie).epsilon(1e-14));
    CHECK(d4.coeffs[1] == doctest::Approx(0.5 - 0.5 * ie).epsilon(1e-14));
    CHECK(d4.coeffs[2] == doctest::Approx(1.0 / 16).epsilon(1e-14));

    const Poly d6 = diff_poly(6);
    REQUIRE(d6.coeffs.size() == 4);
    CHECK(d6.coeffs[0] == doctest::Approx(1.0 - 13.0 / 8 * ie).epsilon(1e-14));
    CHECK(d6.coeffs[1] == doctest::Approx(0.5 - 0.75 * ie).epsilon(1e-14));
    CHECK(d6.coeffs[2] == doctest::Approx(1.0 / 12 - ie / 8).epsilon(1e-13));
    CHECK(d6.coeffs[3] == doctest::Approx(1.0 / 216).epsilon(1e-14));

    // n=8 sign pattern (+, +, -, -, +)
    const Poly d8 = diff_poly(8);
    REQUIRE(d8.coeffs.size() == 5);
    CHECK(d8.coeffs[0] > 0);
    CHECK(d8.coeffs[1] > 0);
    CHECK(d8.coeffs[2] < 0);
    CHECK(d8.coeffs[3] < 0);
    CHECK(d8.coeffs[4] > 0);
}

TEST_CASE("difference polynomial: stable assembly matches naive subtraction") {
    for (int n : {2, 4, 6, 8, 10, 12, 14, 16}) {
        const Poly d = diff_poly(n);
        const Poly nd = naive_diff(n);
        REQUIRE(d.coeffs.size() == nd.coeffs.size());
        for (std::size_t j = 0; j < d.coeffs.size(); ++j)
            CHECK(d.coeffs[j] == doctest::Approx(nd.coeffs[j]).epsilon(1e-12));
    }
}

TEST_CASE("sign counting") {
    CHECK(sign_changes(Poly{{1, 2, 3}}) == 0);
    CHECK(sign_changes(Poly{{1, -1, 1}}) == 2);
    CHECK(sign_changes(Poly{{-1, 0, 2, 5, -3}}) == 2); // zero skipped
    CHECK(sign_changes(Poly{{1, -1e-20, 1}}, -1.0) == 0); // default tol drops tiny
    CHECK(sign_changes(Poly{{1, -1e-20, 1}}, 0.0) == 2);  // strict keeps it
    CHECK_THROWS_AS(sign_changes(Poly{{0.0, 0.0}}), domain_error);

    for (int n : {2, 4, 6})
        CHECK(sign_changes(diff_poly(n), 0.0) == 0);
    for (int n = 8; n <= 100; n += 2)
        CHECK(sign_changes(diff_poly(n), 0.0) == 2);
}

TEST_CASE("sign evaluation is overflow-proof") {
    CHECK(eval_sign(Poly{{1, -1}}, 0.0) == 1);
    CHECK(eval_sign(Poly{{1, -1}}, 2.0) == -1);
    CHECK(eval_sign(Poly{{-3, 1}}, 3.0) == 0);

    // far beyond double overflow: (r/2)^50 dominates at r = 1e300
    const Poly d100 = diff_poly(100);
    CHECK(eval_sign(d100, 1e300) == 1);
    CHECK(eval_sign(d100, 1e-300) == 1);
    CHECK(eval_sign(d100, 1.0) == -1);
}

TEST_CASE("root bracketing") {
    // interior-point evaluation being negative at 1 is the lemma the roots
    // hang on; spot-check the n=8 inequality in closed form:
    // P1(1) = (9/8)^4, P2(1) = e^{-1/2}(1 + 1 + 1/2 + 1/6)
    CHECK(std::pow(1.125, 4.0) < std::exp(-0.5) * (2.0 + 0.5 + 1.0 / 6));

    for (int n = 8; n <= 100; n += 2) {
        const Poly d = diff_poly(n);
        CHECK(eval_sign(d, 1.0) == -1); // P1(1) < P2(1)
        const auto [rn, rp] = find_crossings(n);
        CHECK(rn > 0.0);
        CHECK(rn < 1.0);
        CHECK(rp > 1.0);

        // residuals: straddle within one bisection step instead of comparing
        // magnitudes (coefficients span ~80 orders)
        CHECK(eval_sign(d, rn * (1 - 1e-9)) >= 0);
        CHECK(eval_sign(d, rn * (1 + 1e-9)) <= 0);
        CHECK(eval_sign(d, rp * (1 - 1e-9)) <= 0);
        CHECK(eval_sign(d, rp * (1 + 1e-9)) >= 0);

        CHECK(eval_sign(d, double(n)) == -1); // P1(n) < P2(n), so r'_n > n
        CHECK(rp > double(n));
    }

    const auto c8 = find_crossings(8);
    CHECK(c8.r_n == doctest::Approx(0.485345564526).epsilon(1e-9));
    CHECK(c8.r_n_prime == doctest::Approx(23.2248423153).epsilon(1e-9));
    const auto c10 = find_crossings(10);
    CHECK(c10.r_n == doctest::Approx(0.104482342696).epsilon(1e-9));
    CHECK(c10.r_n_prime == doctest::Approx(115.852374363).epsilon(1e-9));
    const auto c100 = find_crossings(100);
    CHECK(c100.r_n < c8.r_n);
    CHECK(c100.r_n_prime > c8.r_n_prime);

    CHECK_THROWS_AS(find_crossings(6), domain_error);
    CHECK_THROWS_AS(find_crossings(9), domain_error);
}

TEST_CASE("polynomial shift") {
    const Poly p{{8, 36, 20, -52, -48, 1}}; // x^5 - 48x^4 - 52x^3 + 20x^2 + 36x + 8
    const Poly sh = poly_shift(p, 50.0);
    const double want[6] = {6051808, 6862036, 522220, 15348, 202, 1};
    REQUIRE(sh.coeffs.size() == 6);
    for (int j = 0; j < 6; ++j)
        CHECK(sh.coeffs[j] == doctest::Approx(want[j]).epsilon(1e-10));
    CHECK(p(49.0) == doctest::Approx(-303155.0).epsilon(1e-12));

    const Poly same = poly_shift(p, 0.0);
    for (int j = 0; j < 6; ++j) CHECK(same.coeffs[j] == p.coeffs[j]);

    // shift identity on a random cubic: q(x) = p(x+s) evaluated both ways
    const Poly q{{1.5, -2.0, 0.25, 3.0}};
    const Poly qs = poly_shift(q, -1.75);
    for (double x : {-2.0, 0.0, 0.4, 3.0})
        CHECK(qs(x) == doctest::Approx(q(x - 1.75)).epsilon(1e-13));
}

TEST_CASE("constant term positive for every even n") {
    for (int n = 2; n <= 200; n += 2) CHECK(diff_poly(n).coeffs[0] > 0.0);
}

TEST_CASE("crossover reports") {
    for (int n : {2, 4, 6}) {
        const auto rep = crossover_report(n);
        CHECK(rep.sign_change_count == 0);
        CHECK(rep.dominance == Dominance::CHI2_ALWAYS);
        CHECK_FALSE(rep.r_n.has_value());
    }
    for (int n : {8, 30, 100}) {
        const auto rep = crossover_report(n);
        CHECK(rep.sign_change_count == 2);
        CHECK(rep.dominance == Dominance::M_INF_INSIDE_INTERVAL);
        REQUIRE(rep.r_n.has_value());
        REQUIRE(rep.r_n_prime.has_value());
        CHECK(*rep.r_n < 1.0);
        CHECK(*rep.r_n_prime > 1.0);
    }
    CHECK_THROWS_AS(crossover_report(9), domain_error);
}

TEST_CASE("polynomial verdict agrees with direct bound comparison") {
    for (int n = 2; n <= 40; n += 1) { // odd n exercises the direct-only path
        const bool even = n % 2 == 0;
        double lo = 1e-3, hi = even && n >= 8
                                   ? 2.0 * *crossover_report(n).r_n_prime
                                   : 10.0 * n;
        std::vector<double> grid;
        for (int i = 0; i < 100; ++i)
            grid.push_back(lo * std::pow(hi / lo, i / 99.0));
        const auto rows = dominance_table(n, grid);
        REQUIRE(rows.size() == grid.size());
        for (const auto& row : rows) {
            // the -r/2 term in both logs limits the direct comparison to a few
            // ulp of their magnitude; skip ties below that noise floor
            const double noise =
                1e-9 + 64.0 * std::numeric_limits<double>::epsilon() *
                           std::max(std::abs(row.log_m_inf), std::abs(row.log_chi2));
            if (std::abs(row.log_m_inf - row.log_chi2) < noise) continue;
            CHECK(row.m_inf_sharper_direct == row.m_inf_sharper_roots);
            CHECK(row.m_inf_sharper_direct == (row.log_m_inf < row.log_chi2));
        }
    }

    // n=8 at r=1: the dimension-norm bound wins (inside the root interval)
    const auto rows8 = dominance_table(8, {1.0});
    CHECK(rows8[0].m_inf_sharper_direct);
    // n=4: chi-square wins everywhere
    for (const auto& row : dominance_table(4, {0.1, 1.0, 5.0, 40.0}))
        CHECK_FALSE(row.m_inf_sharper_direct);
}
