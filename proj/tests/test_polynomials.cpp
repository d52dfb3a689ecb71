#include <doctest.h>

#include <cmath>
#include <numbers>

#include "imstrip/polynomials.hpp"
#include "oracles.hpp"

using namespace imstrip;
using std::numbers::pi;
const cplx I{0.0, 1.0};

TEST_SUITE_BEGIN("polynomials");

namespace {
std::vector<PolynomialFamily> all_families() {
    return {
        PolynomialFamily::meixner_pollaczek(1.0, pi / 3),
        PolynomialFamily::continuous_hahn(cplx(0.8, 0.5), cplx(1.1, -0.2)),
        PolynomialFamily::continuous_dual_hahn(0.6, 0.9, 1.3),
        PolynomialFamily::wilson(0.7, 0.9, 1.1, 1.3),
    };
}
} // namespace

TEST_CASE("degree zero is 1 for every family") {
    for (auto& fam : all_families())
        for (cplx s : {cplx(0.3), cplx(1.0, 0.4)})
            CHECK(std::abs(poly_eval(fam, 0, s) - 1.0) < 1e-13);
}

TEST_CASE("two-term expansions") {
    // MP n=1, a=1, phi=pi/2: P1(s) = 2s
    auto mp = PolynomialFamily::meixner_pollaczek(1.0, pi / 2);
    for (double s : {0.3, 1.7, -2.0})
        CHECK(std::abs(poly_eval(mp, 1, cplx(s)) - 2.0 * s) < 1e-13 * std::max(1.0, 2 * s));
    // Wilson n=1, (1,1,1,1), s=0: 8 (1 - 4/8) = 4
    auto wil = PolynomialFamily::wilson(1.0, 1.0, 1.0, 1.0);
    CHECK(std::abs(poly_eval(wil, 1, cplx(0.0)) - 4.0) < 1e-12);
}

TEST_CASE("exact degree by finite differences") {
    // forward differences in the family variable (s or s^2): order n is a
    // nonzero constant, order n+1 vanishes
    for (auto& fam : all_families()) {
        for (int n : {1, 3, 5}) {
            auto value = [&](int j) {
                double y = double(j);
                cplx s = fam.even() ? cplx(std::sqrt(y)) : cplx(y);
                return poly_eval(fam, n, s);
            };
            std::vector<cplx> w;
            double scale = 0;
            for (int j = 0; j <= n + 2; ++j) {
                w.push_back(value(j));
                scale = std::max(scale, std::abs(w.back()));
            }
            for (int order = 0; order < n; ++order)
                for (size_t j = 0; j + 1 + order < w.size(); ++j) w[j] = w[j + 1] - w[j];
            // w[0], w[1], w[2] now hold the order-n differences at three offsets
            CHECK(std::abs(w[0]) > 1e-9 * scale);
            CHECK(std::abs(w[1] - w[0]) <= 1e-9 * scale);
            CHECK(std::abs(w[2] - w[1]) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("meixner-pollaczek norms (resolved closed form) against a mass oracle") {
    // mass of w at a=1, phi=pi/2: int_0^inf s/sinh(pi s) ds = 1/4 = Gamma(2)/(2 sin phi)^2
    double mass = oracles::half_line(
        [](double s) { return s / std::sinh(pi * s); }, -30.0, 4.0);
    auto mp = PolynomialFamily::meixner_pollaczek(1.0, pi / 2);
    CHECK(std::abs(norm_squared(mp, 0) - mass) < 1e-10);
    CHECK(std::abs(norm_squared(mp, 0) - 0.25) < 1e-12);
    CHECK(std::abs(norm_squared(mp, 1) - 0.5) < 1e-12);
    // quadrature route agrees with the closed form
    auto G = gram_matrix(mp, 2, QuadratureConfig(1e-13, 1e-13, 11, 40.0));
    CHECK(std::abs(G[0][0].real() - norm_squared(mp, 0)) < 1e-10);
    CHECK(std::abs(G[1][1].real() - norm_squared(mp, 1)) < 1e-10);
}

TEST_CASE("gram matrices: orthogonality for all four families") {
    QuadratureConfig cfg(1e-13, 1e-13, 11, 45.0);
    for (auto& fam : all_families()) {
        auto G = gram_matrix(fam, 6, cfg);
        double maxdiag = 0;
        for (int n = 0; n < 6; ++n) maxdiag = std::max(maxdiag, std::abs(G[n][n]));
        for (int m = 0; m < 6; ++m) {
            CHECK(G[m][m].real() > 0);
            for (int n = 0; n < 6; ++n) {
                if (m != n) CHECK(std::abs(G[m][n]) <= 1e-8 * maxdiag);
                CHECK(std::abs(G[m][n] - std::conj(G[n][m])) < 1e-15 * maxdiag);
            }
        }
    }
}

TEST_CASE("gram N=1 equals the total weight mass") {
    auto mp = PolynomialFamily::meixner_pollaczek(1.0, pi / 3);
    auto G = gram_matrix(mp, 1);
    WeightSpec spec = mp.weight_spec();
    Integral mass = de_real_line([&](double s) { return cplx(weight_w(spec, s)); },
                                 QuadratureConfig(1e-13, 1e-13, 11, 40.0));
    CHECK(std::abs(G[0][0] - mass.value) < 1e-11);
}

TEST_CASE("parity: odd moments of even weights vanish") {
    WeightSpec wil = WeightSpec::wilson(0.7, 0.9, 1.1, 1.3);
    Integral odd = de_real_line([&](double s) { return cplx(s * weight_w(wil, s)); },
                                QuadratureConfig(1e-13, 1e-13, 11, 40.0));
    CHECK(std::abs(odd.value) < 1e-13);
}

TEST_CASE("eigen-relations at polynomial-identity precision") {
    for (auto& fam : all_families()) {
        auto samples = default_eigen_samples(fam);
        CHECK(eigen_defect(fam, 0, samples) < 1e-12);
        for (int n = 1; n <= 6; ++n) CHECK(eigen_defect(fam, n, samples) <= 1e-9);
    }
    // Wilson n=2 at (1,1,1,1): lambda_2 = 2 (2+3) = 10
    auto wil = PolynomialFamily::wilson(1.0, 1.0, 1.0, 1.0);
    CHECK(std::abs(wil.eigenvalue(2) - 10.0) < 1e-14);
    CHECK(eigen_defect(wil, 2, default_eigen_samples(wil)) <= 1e-9);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((void)PolynomialFamily::meixner_pollaczek(0.0, 1.0), ParameterError);
    CHECK_THROWS_AS((void)PolynomialFamily::continuous_hahn(cplx(0.0), cplx(1.0)),
                    ParameterError);
    CHECK_THROWS_AS((void)PolynomialFamily::continuous_dual_hahn(-0.5, 1.0, 1.0),
                    ParameterError);
    CHECK_THROWS_AS((void)poly_eval(all_families()[0], -1, cplx(0.0)), ParameterError);
    CHECK_THROWS_AS((void)gram_matrix(all_families()[0], 13), ParameterError);
}

TEST_SUITE_END();
