#include <doctest.h>

#include <cmath>
#include <map>
#include <memory>
#include <numbers>

#include "imstrip/transforms.hpp"
#include "oracles.hpp"

using namespace imstrip;
using std::numbers::pi;
const cplx I{0.0, 1.0};

TEST_SUITE_BEGIN("transforms");

namespace {

HalfLineFunction battery0() { return battery_half_line_default()[0].second; }

StripFunction memoized(const StripFunction& f) {
    auto memo = std::make_shared<std::map<std::pair<double, double>, cplx>>();
    StripFunction out = f;
    auto base = f.eval;
    out.eval = [base, memo](cplx s) {
        auto key = std::make_pair(s.real(), s.imag());
        auto it = memo->find(key);
        if (it != memo->end()) return it->second;
        cplx v = base(s);
        (*memo)[key] = v;
        return v;
    };
    return out;
}

} // namespace

TEST_CASE("mellin transform of x^{1/2} e^{-x} is Gamma(1/2+is)") {
    HalfLineFunction f;
    f.eval = [](double x) { return cplx(std::sqrt(x) * std::exp(-x)); };
    f.power_at_zero = 0.5;
    f.exp_rate_inf = 1.0;
    QuadratureConfig cfg(1e-13, 1e-13, 11);
    StripFunction M = mellin_forward(f, cfg);
    cplx got = M.eval(cplx(0.7, 0.0));
    cplx want = gamma(cplx(0.5, 0.7));
    CHECK(std::abs(got - want) < 1e-10 * std::abs(want));
}

TEST_CASE("mellin transform of the unit-interval indicator") {
    HalfLineFunction f;
    f.eval = [](double x) { return x <= 1.0 ? cplx(1.0) : cplx(0.0); };
    f.power_at_zero = 0.0;
    f.power_at_inf = 50.0; // compactly supported
    QuadratureConfig cfg(1e-11, 1e-11, 12);
    StripFunction M = mellin_forward(f, cfg);
    // inside the analyticity window Im s < 0: Mf(s) = 1/(is)
    cplx s(0.7, -0.4);
    cplx got = M.eval(s);
    cplx want = 1.0 / (I * s);
    CHECK(std::abs(got - want) < 5e-5 * std::abs(want));
    CHECK_THROWS_AS((void)M.eval(cplx(0.7, 0.4)), WindowError);
}

TEST_CASE("mellin unitarity and round trip") {
    // f = x^{1/2} e^{-x}: ||f||^2 in L2(dx/x) = 1/2 = (1/2pi) int |Gamma(1/2+is)|^2 ds
    HalfLineFunction f;
    f.eval = [](double x) { return cplx(std::sqrt(x) * std::exp(-x)); };
    f.power_at_zero = 0.5;
    f.exp_rate_inf = 1.0;
    QuadratureConfig cfg(1e-12, 1e-12, 11);
    Integral src = de_half_line([&](double x) { return std::norm(f.eval(x)) / x; }, cfg);
    CHECK(std::abs(src.value.real() - 0.5) < 1e-11);
    StripFunction M = mellin_forward(f, cfg);
    Integral tgt = de_finite([&](double s) { return std::norm(M.eval(cplx(s, 0.0))); }, -30.0,
                             30.0, cfg);
    CHECK(std::abs(tgt.value.real() / (2 * pi) - 0.5) < 1e-8);
    auto inv = mellin_inverse(M, cfg, 30.0);
    for (double x : {0.4, 1.1}) {
        CHECK(std::abs(inv(x) - f.eval(x)) < 1e-7);
    }
}

TEST_CASE("kl forward: zero, evenness, oracle value") {
    QuadratureConfig cfg(1e-12, 1e-12, 11);
    HalfLineFunction zero;
    zero.eval = [](double) { return cplx(0.0); };
    zero.exp_rate_zero = 1.0;
    zero.exp_rate_inf = 1.0;
    StripFunction K0 = kl_forward(zero, cfg, 6.0);
    CHECK(std::abs(K0.eval(cplx(0.9, 0.0))) < 1e-15);

    StripFunction Kg = kl_forward(battery0(), cfg, 6.0);
    CHECK(std::abs(Kg.eval(cplx(1.3, 0.0)) - Kg.eval(cplx(-1.3, 0.0))) < 1e-12);

    // independent brute-force oracle for Kg(0.5):
    // iterated Simpson of cos(0.5 t) G(cosh t), G(c) = int e^{-c x} g(x) dx / x
    auto G = [&](double c) {
        return oracles::half_line(
            [&](double x) { return std::exp(-c * x - x - 1.0 / x) / x; }, -8.0, 6.0, 1e-13);
    };
    double oracle =
        oracles::simpson([&](double t) { return std::cos(0.5 * t) * G(std::cosh(t)); }, 0.0, 7.5,
                         1e-11);
    CHECK(std::abs(Kg.eval(cplx(0.5, 0.0)).real() - oracle) < 1e-8);
}

TEST_CASE("kl plancherel and roundtrip on one battery function") {
    QuadratureConfig cfg(1e-12, 1e-12, 11);
    auto g = battery0();
    Integral src = de_half_line(
        [&](double x) { return std::norm(g.eval(x)) / x; },
        QuadratureConfig(1e-12, 1e-12, 11, 60.0));
    StripFunction Kg = kl_forward(g, cfg, 14.0);
    Integral tgt = de_finite(
        [&](double s) {
            return std::norm(Kg.eval(cplx(s, 0.0))) * 2.0 * s * std::sinh(pi * s) / (pi * pi);
        },
        0.0, 14.0, cfg);
    CHECK(std::abs(src.value.real() - tgt.value.real()) < 1e-5 * src.value.real());

    auto inv = kl_inverse(Kg, cfg, 14.0);
    for (double x : {0.3, 1.0, 4.0}) {
        CHECK(std::abs(inv(x) - g.eval(x)) < 1e-5 * std::abs(g.eval(x)) + 1e-9);
    }
}

TEST_CASE("kl intertwining: resolved sign passes, displayed sign fails") {
    QuadratureConfig cfg(1e-12, 1e-12, 11);
    double resolved = kl_intertwining_defect(battery0(), {0.5, 1.5, 3.0}, cfg);
    CHECK(resolved <= 1e-6);

    StripFunction Kg = kl_forward(battery0(), cfg, 7.0);
    HalfLineFunction g2 = battery0();
    auto base = battery0().eval;
    g2.eval = [base](double x) { return 2.0 / x * base(x); };
    g2.power_at_zero -= 1.0;
    StripFunction K2 = kl_forward(g2, cfg, 7.0);
    DifferenceOperator displayed = kl_operator();
    double worst = 0, scale = 0;
    for (double s : {0.5, 1.5, 3.0}) {
        worst = std::max(worst, std::abs(apply_raw(displayed, Kg.eval, cplx(s)) - K2.eval(cplx(s))));
        scale = std::max(scale, std::abs(K2.eval(cplx(s))));
    }
    CHECK(worst / scale > 0.1);
}

TEST_CASE("kl derivative image with the probed plus sign and unit constant") {
    QuadratureConfig cfg(1e-12, 1e-12, 11);
    HalfLineFunction g = battery0();
    HalfLineFunction gp = g;
    gp.eval = [](double x) { return cplx((-1.0 + 1.0 / (x * x)) * std::exp(-x - 1.0 / x)); };
    CHECK(kl_derivative_image_defect(g, gp, {0.5, 1.5, 3.0}, cfg) <= 1e-6);

    // minus variant fails by orders of magnitude
    StripFunction Kg = kl_forward(g, cfg, 7.0);
    HalfLineFunction q = g;
    auto b0 = g.eval, b1 = gp.eval;
    q.eval = [b0, b1](double x) { return b1(x) - b0(x) / x; };
    q.power_at_zero -= 1.0;
    StripFunction Kq = kl_forward(q, cfg, 7.0);
    double worst = 0, scale = 0;
    for (double s : {0.5, 1.5, 3.0}) {
        cplx minus_variant = 0.5 * (Kg.eval(cplx(s) + I) - Kg.eval(cplx(s) - I));
        worst = std::max(worst, std::abs(minus_variant - Kq.eval(cplx(s))));
        scale = std::max(scale, std::abs(Kq.eval(cplx(s))));
    }
    CHECK(worst / scale > 0.1);
}

TEST_CASE("wimp transform: parameter range, rho = 0 reduction, oracle value") {
    QuadratureConfig cfg(1e-12, 1e-12, 11);
    HalfLineFunction dummy = battery0();
    CHECK_THROWS_AS((void)wimp_forward(0.5, dummy, cfg, 6.0), ParameterError);

    // rho = 0 reduction through W_{0,nu}(x) = sqrt(x/pi) K_nu(x/2):
    // W_0 g(s) = (1/sqrt(2 pi)) K[h](s) with h(y) = g(2y)/sqrt(y)
    HalfLineFunction g32;
    g32.eval = [](double x) { return cplx(std::pow(x, 1.5) * std::exp(-x - 1.0 / x)); };
    g32.power_at_zero = 1.5;
    g32.power_at_inf = -1.5;
    g32.exp_rate_zero = 1.0;
    g32.exp_rate_inf = 1.0;
    StripFunction W0 = wimp_forward(0.0, g32, cfg, 6.0);
    HalfLineFunction gh;
    gh.eval = [&g32](double y) { return g32.eval(2.0 * y) / std::sqrt(y); };
    gh.power_at_zero = 1.0;
    gh.exp_rate_zero = 0.5;
    gh.exp_rate_inf = 2.0;
    StripFunction Kh = kl_forward(gh, cfg, 6.0);
    cplx lhs = W0.eval(cplx(0.8, 0.0));
    cplx rhs = Kh.eval(cplx(0.8, 0.0)) / std::sqrt(2.0 * pi);
    CHECK(std::abs(lhs - rhs) < 1e-9 * std::abs(rhs));

    // refinement oracle for W_{0.2} g at s = 1.0: direct double quadrature with
    // pointwise Whittaker values
    auto g = battery0();
    StripFunction W = wimp_forward(0.2, g, cfg, 6.0);
    double oracle = oracles::half_line(
                        [&](double x) {
                            return (whittaker_W(0.2, cplx(0.0, 1.0), x) * g.eval(x) / (x * x))
                                .real();
                        },
                        -8.0, 5.0, 1e-12)
                        ;
    CHECK(std::abs(W.eval(cplx(1.0, 0.0)).real() - oracle) < 1e-8 * std::abs(oracle));
}

TEST_CASE("wimp roundtrip and intertwining on one battery function") {
    QuadratureConfig cfg(1e-12, 1e-12, 11);
    auto g = battery0();
    StripFunction Wg = wimp_forward(0.2, g, cfg, 13.0);
    auto inv = wimp_inverse(0.2, Wg, cfg, 13.0);
    for (double x : {0.5, 1.3}) {
        CHECK(std::abs(inv(x) - g.eval(x)) < 1e-5 * std::abs(g.eval(x)) + 1e-9);
    }
    CHECK(wimp_intertwining_defect(0.2, g, {0.5, 1.5, 3.0}, cfg) <= 1e-6);
}

TEST_CASE("vilenkin: zero input, unitarity, JTJ cross-check, roundtrip") {
    const double alpha = 1.0, phi = 0.8;
    QuadratureConfig cfg(1e-11, 1e-11, 10);

    StripFunction zero{[](cplx) { return cplx(0.0); }, 50.0, DecayClass::super_exponential()};
    StripFunction Vz = vilenkin_forward(alpha, phi, zero, cfg);
    CHECK(std::abs(Vz.eval(cplx(0.4, 0.0))) < 1e-14);

    const StripFunction& g = battery_line_default()[0].second;
    QuadratureConfig outer(1e-10, 1e-10, 9, 14.0);
    Integral nsrc = de_real_line(
        [&](double s) { return std::norm(g.eval(cplx(s, 0.0))) * vilenkin_weight(alpha, s); },
        outer);
    StripFunction Vg = memoized(vilenkin_forward(alpha, phi, g, cfg));
    Integral ntgt = de_real_line(
        [&](double t) { return std::norm(Vg.eval(cplx(t, 0.0))) * vilenkin_weight(alpha, t); },
        outer);
    CHECK(std::abs(nsrc.value.real() - ntgt.value.real()) < 1e-5 * nsrc.value.real());

    cplx direct = Vg.eval(cplx(0.5, 0.0));
    cplx viajtj = vilenkin_forward_jtj(alpha, phi, g, 0.5, cfg);
    CHECK(std::abs(direct - viajtj) < 1e-5 * std::abs(direct));

    StripFunction back = vilenkin_inverse(alpha, phi, Vg, cfg);
    for (double s : {-0.6, 0.4}) {
        cplx b = back.eval(cplx(s, 0.0));
        cplx o = g.eval(cplx(s, 0.0));
        CHECK(std::abs(b - o) < 2e-5 * std::max(1.0, std::abs(o)));
    }
}

TEST_CASE("j_alpha transform basics and roundtrip") {
    const double alpha = 1.0;
    QuadratureConfig cfg(1e-12, 1e-12, 11, 50.0);
    StripFunction zero{[](cplx) { return cplx(0.0); }, 10.0, DecayClass::super_exponential()};
    auto Jz = j_alpha_forward(alpha, zero, cfg);
    CHECK(std::abs(Jz(cplx(0.0, 2.0))) < 1e-15);
    CHECK_THROWS_AS((void)Jz(cplx(0.3, -1.0)), DomainError);

    StripFunction f{[](cplx s) { return std::exp(-s * s); }, 10.0,
                    DecayClass::super_exponential()};
    auto F = j_alpha_forward(alpha, f, cfg);
    StripFunction back = j_alpha_inverse(alpha, [&](double p) { return F(cplx(0.0, p)); }, cfg);
    for (double t : {0.3, 1.0}) {
        cplx b = back.eval(cplx(t, 0.0));
        cplx o = f.eval(cplx(t, 0.0));
        CHECK(std::abs(b - o) < 1e-5);
    }
}

TEST_CASE("double mellin: indicator closed form, zero, support handling") {
    QuadratureConfig cfg(1e-12, 1e-12, 11);
    RealLineFunction ind;
    ind.eval = [](double) { return cplx(1.0); };
    ind.support_lo = 1.0;
    ind.support_hi = std::exp(1.0);
    DoubleMellinImage im = double_mellin_forward(ind, cfg);
    cplx s(0.7, 0.0);
    cplx want = (std::exp(I * s + 0.5) - 1.0) / (I * s + 0.5);
    CHECK(std::abs(im.g1.eval(s) - want) < 1e-10 * std::abs(want));
    CHECK(std::abs(im.g2.eval(s)) < 1e-15); // supported in (0, inf)

    RealLineFunction zero;
    zero.eval = [](double) { return cplx(0.0); };
    zero.support_lo = -1;
    zero.support_hi = 1;
    DoubleMellinImage z = double_mellin_forward(zero, cfg);
    CHECK(std::abs(z.g1.eval(s)) < 1e-15);
    CHECK(std::abs(z.g2.eval(s)) < 1e-15);
}

TEST_CASE("double mellin plancherel and inverse") {
    QuadratureConfig cfg(1e-12, 1e-12, 10);
    const RealLineFunction& f = battery_real_line_default()[1].second; // exp(-(x-1)^2)
    Integral nf = de_real_line([&](double x) { return cplx(std::norm(f.eval(x))); }, cfg);
    DoubleMellinImage im = double_mellin_forward(f, cfg);
    StripFunction g1 = memoized(im.g1), g2 = memoized(im.g2);
    QuadratureConfig cs(1e-12, 1e-12, 9, 38.0);
    Integral n1 = de_real_line([&](double s) { return cplx(std::norm(g1.eval(cplx(s, 0.0)))); }, cs);
    Integral n2 = de_real_line(
        [&](double s) {
            return cplx(std::norm(g2.eval(cplx(s, 0.0))) * std::exp(2.0 * pi * s));
        },
        cs);
    double tgt = (n1.value.real() + n2.value.real()) / (2 * pi);
    CHECK(std::abs(nf.value.real() - tgt) < 1e-6 * nf.value.real());

    auto inv = double_mellin_inverse(g1, g2, cfg, 38.0);
    for (double x : {-0.8, 0.5, 1.5}) {
        CHECK(std::abs(inv(x) - f.eval(x)) < 1e-6);
    }
}

TEST_CASE("transform pair metadata") {
    TransformPair kl = kl_pair();
    CHECK(kl.name == "kl");
    CHECK(kl.source_weight(2.0) == 0.5);
    CHECK(kl.target_weight(1.0) > 0);
    CHECK(std::abs(kl.source_mult(4.0) - 0.5) < 1e-15);
    TransformPair wp = wimp_pair(0.2);
    CHECK(wp.target_weight(0.7) > 0);
    TransformPair vp = vilenkin_pair(1.0, 0.8);
    CHECK(vp.source_weight(0.3) > 0);
}

TEST_SUITE_END();
