#include "imstrip/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "imstrip/csv.hpp"
#include "imstrip/extensions.hpp"
#include "imstrip/polynomials.hpp"
#include "imstrip/transforms.hpp"

namespace imstrip {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};
using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

double rel(cplx got, cplx want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// ------------------------------------------------------------ AC01 -- AC03 --

CheckResult check_ac01() {
    CheckResult r;
    r.id = "AC01";
    r.anchor = "Macdonald recurrence K_{nu-1}(x) - K_{nu+1}(x) = -(2 nu/x) K_nu(x)";
    r.tol = 1e-9;
    double worst = 0;
    for (double s : {0.5, 1.0, 2.5}) {
        for (double x : {0.5, 1.0, 5.0}) {
            cplx nu(0.0, s);
            cplx lhs = macdonald_K(nu - 1.0, x) - macdonald_K(nu + 1.0, x);
            cplx rhs = -2.0 * nu / x * macdonald_K(nu, x);
            worst = std::max(worst, rel(lhs, rhs));
        }
    }
    r.defect = worst;
    r.note = "3x3 grid nu=is, s in {0.5,1,2.5}, x in {0.5,1,5}";
    return r;
}

CheckResult check_ac02() {
    CheckResult r;
    r.id = "AC02";
    r.anchor = "K_nu(x) = sqrt(pi/2x) W_{0,nu}(2x)";
    r.tol = 1e-9;
    const std::pair<cplx, double> pts[] = {
        {cplx(0.0, 0.9), 1.1}, {cplx(0.0, 0.5), 0.7}, {cplx(0.0, 1.7), 2.5},
        {cplx(0.0, 0.3), 3.2}, {cplx(0.0, 1.2), 0.9},
    };
    double worst = 0, displayed = 0;
    for (auto& [nu, x] : pts) {
        cplx lhs = macdonald_K(nu, x);
        cplx rhs = std::sqrt(kPi / (2.0 * x)) * whittaker_W(0.0, nu, 2.0 * x);
        worst = std::max(worst, rel(rhs, lhs));
        displayed = std::max(displayed, rel(std::sqrt(kPi / (2.0 * x)) * whittaker_W(0.0, nu, x), lhs));
    }
    r.defect = worst;
    r.note = "5 points, series/cosh-integral route vs Kummer-integral route; the W argument "
             "doubling is pinned by probe (same-argument display fails by " +
             fmt(displayed) + ")";
    return r;
}

double whittaker_diff_eq_residual(double rho, double s, double x, bool printed_numerators) {
    cplx sigma(0.0, s);
    cplx w0 = whittaker_W(rho, sigma, x);
    cplx wm = whittaker_W(rho, sigma - 1.0, x);
    cplx wp = whittaker_W(rho, sigma + 1.0, x);
    cplx num_m = printed_numerators ? (1.0 - rho - sigma) : (0.5 - rho - sigma);
    cplx num_p = printed_numerators ? (1.0 - rho + sigma) : (0.5 - rho + sigma);
    cplx cm = num_m / ((-2.0 * sigma) * (1.0 - 2.0 * sigma));
    cplx cp = num_p / ((2.0 * sigma) * (1.0 + 2.0 * sigma));
    cplx lhs = cm * (wm - w0) + cp * (wp - w0);
    cplx rhs = w0 / x;
    return rel(lhs, rhs);
}

CheckResult check_ac03() {
    CheckResult r;
    r.id = "AC03";
    r.anchor = "Whittaker difference equation in the second index (numerators 1/2-rho-+sigma)";
    r.tol = 1e-8;
    double worst = 0, printed_worst = 0;
    for (double rho : {-1.0, 0.2}) {
        for (double s : {0.6, 1.1, 2.3}) {
            for (double x : {0.7, 1.5, 4.0}) {
                worst = std::max(worst, whittaker_diff_eq_residual(rho, s, x, false));
                printed_worst = std::max(printed_worst, whittaker_diff_eq_residual(rho, s, x, true));
            }
        }
    }
    r.defect = worst;
    r.note = "numerators resolved to (1/2-rho-+sigma) by probe (the quotient-built operator "
             "coefficients); the displayed (1-rho-+sigma) variant fails with residual " +
             fmt(printed_worst);
    return r;
}

// -------------------------------------------------------------- KL: AC04/05 --

CheckResult check_ac04() {
    CheckResult r;
    r.id = "AC04";
    r.anchor = "Kontorovich-Lebedev transform is unitary: Plancherel and round trip";
    r.tol = 1e-5;
    const double smax = 14.0;
    QuadratureConfig cfg(1e-12, 1e-12, 11);
    double worst = 0;
    std::string detail;
    for (auto& [name, g] : battery_half_line_default()) {
        QuadratureConfig ch = cfg;
        ch.truncation_radius = 60.0;
        Integral src = de_half_line(
            [&](double x) {
                cplx v = g.eval(x);
                return v * std::conj(v) / x;
            },
            ch);
        StripFunction Kg = kl_forward(g, cfg, smax);
        Integral tgt = de_finite(
            [&](double s) {
                cplx v = Kg.eval(cplx(s, 0.0));
                return v * std::conj(v) * 2.0 * s * std::sinh(kPi * s) / (kPi * kPi);
            },
            0.0, smax, cfg);
        double plancherel = std::abs(src.value.real() - tgt.value.real()) / src.value.real();

        auto inv = kl_inverse(Kg, cfg, smax);
        double num = 0, den = 0;
        for (int j = 0; j < 28; ++j) {
            double x = std::pow(10.0, -1.2 + 2.6 * double(j) / 27.0);
            cplx back = inv(x);
            cplx orig = g.eval(x);
            num += std::norm(back - orig);
            den += std::norm(orig);
        }
        double rms = std::sqrt(num / den);
        worst = std::max({worst, plancherel, rms});
        detail += name + ": plancherel " + fmt(plancherel) + ", roundtrip rms " + fmt(rms) + "; ";
    }
    r.defect = worst;
    r.note = detail + "28-point log grid in [10^-1.2, 10^1.4], spectral cutoff s <= 14";
    return r;
}

CheckResult check_ac05() {
    CheckResult r;
    r.id = "AC05";
    r.anchor = "KL intertwining: K((2/x)g)(s) = (1/is)(Kg(s-i) - Kg(s+i))";
    r.tol = 1e-6;
    QuadratureConfig cfg(1e-12, 1e-12, 11);
    std::vector<double> pts = {0.5, 1.5, 3.0};
    double worst = 0, printed = 0;
    for (auto& [name, g] : battery_half_line_default()) {
        worst = std::max(worst, kl_intertwining_defect(g, pts, cfg));
        // displayed sign: K((2/x)g) = (1/is)(Kg(s+i) - Kg(s-i))
        StripFunction Kg = kl_forward(g, cfg, 7.0);
        HalfLineFunction g2 = g;
        auto base = g.eval;
        g2.eval = [base](double x) { return 2.0 / x * base(x); };
        g2.power_at_zero = g.power_at_zero - 1.0;
        StripFunction K2 = kl_forward(g2, cfg, 7.0);
        DifferenceOperator printed_op = kl_operator();
        double w2 = 0, sc = 0;
        for (double s : pts) {
            cplx lhs = apply_raw(printed_op, Kg.eval, cplx(s));
            cplx rhs = K2.eval(cplx(s));
            w2 = std::max(w2, std::abs(lhs - rhs));
            sc = std::max(sc, std::abs(rhs));
        }
        printed = std::max(printed, w2 / sc);
    }
    r.defect = worst;
    r.note = "sign resolved by probe (minus the displayed operator); displayed sign leaves defect " +
             fmt(printed);
    return r;
}

CheckResult check_ac06() {
    CheckResult r;
    r.id = "AC06";
    r.anchor = "Wimp intertwining: W(x^{-1} g) = L W g at rho = 0.2";
    r.tol = 1e-6;
    QuadratureConfig cfg(1e-12, 1e-12, 11);
    std::vector<double> pts = {0.5, 1.5, 3.0};
    double worst = 0;
    for (auto& [name, g] : battery_half_line_default())
        worst = std::max(worst, wimp_intertwining_defect(0.2, g, pts, cfg));
    r.defect = worst;
    r.note = "battery of 3, s in {0.5, 1.5, 3}";
    return r;
}

// ------------------------------------------------------------------- AC07 ---

CheckResult check_ac07() {
    CheckResult r;
    r.id = "AC07";
    r.anchor = "shift operators with Re a_k > 0 are symmetric on H[w]";
    r.tol = 1.0; // defect is max of symmetry_defect / (10 x quadrature error estimate)
    QuadratureConfig cfg(1e-12, 1e-12, 11, 12.0);

    StripFunction f1{[](cplx s) { return std::exp(-s * s); }, 8.0, DecayClass::super_exponential()};
    StripFunction f2{[](cplx s) { return s * std::exp(-s * s); }, 8.0,
                     DecayClass::super_exponential()};
    StripFunction f3{[](cplx s) { return s * s * std::exp(-s * s); }, 8.0,
                     DecayClass::super_exponential()};

    struct Case {
        std::string name;
        DifferenceOperator op;
        WeightSpec spec;
        bool even_only;
    };
    std::vector<Case> cases;
    cases.push_back({"mp", mp_operator(1.0, kPi / 3), WeightSpec::meixner_pollaczek(1.0, kPi / 3),
                     false});
    cases.push_back({"hahn", hahn_operator(cplx(0.8, 0.5), cplx(1.1, -0.2)),
                     WeightSpec::continuous_hahn(cplx(0.8, 0.5), cplx(1.1, -0.2)), false});
    cases.push_back({"dual_hahn", dual_hahn_operator(0.6, 0.9, 1.3),
                     WeightSpec::continuous_dual_hahn(0.6, 0.9, 1.3), true});
    cases.push_back({"wilson", wilson_operator(0.7, 0.9, 1.1, 1.3),
                     WeightSpec::wilson(0.7, 0.9, 1.1, 1.3), true});
    cases.push_back({"kl", kl_operator(), WeightSpec::kontorovich_lebedev(), true});
    cases.push_back({"wimp", wimp_operator(0.2), WeightSpec::wimp(0.2), true});

    double worst = 0;
    std::string detail;
    for (auto& c : cases) {
        std::vector<StripFunction> fs = c.even_only ? std::vector<StripFunction>{f1, f3}
                                                    : std::vector<StripFunction>{f1, f2, f3};
        WeightSpec spec = c.spec;
        auto w = [spec](double s) { return weight_w(spec, s); };
        double case_worst = 0;
        for (size_t i = 0; i < fs.size(); ++i) {
            for (size_t j = i; j < fs.size(); ++j) {
                SymmetryDefect sd = symmetry_defect(c.op, fs[i], fs[j], w, cfg);
                case_worst = std::max(case_worst, sd.defect / (10.0 * sd.combined_error + 1e-300));
            }
        }
        worst = std::max(worst, case_worst);
        detail += c.name + " " + fmt(case_worst) + "; ";
    }
    r.defect = worst;
    r.note = "ratio defect/(10 x error estimate); " + detail;
    return r;
}

// ----------------------------------------------------------- AC08 / AC09 ----

CheckResult check_ac08() {
    CheckResult r;
    r.id = "AC08";
    r.anchor = "polynomial eigen-relations L p_n = lambda_n p_n, n <= 6";
    r.tol = 1e-9;
    std::vector<std::pair<std::string, PolynomialFamily>> fams = {
        {"mp", PolynomialFamily::meixner_pollaczek(1.0, kPi / 3)},
        {"hahn", PolynomialFamily::continuous_hahn(cplx(0.8, 0.5), cplx(1.1, -0.2))},
        {"dual_hahn", PolynomialFamily::continuous_dual_hahn(0.6, 0.9, 1.3)},
        {"wilson", PolynomialFamily::wilson(0.7, 0.9, 1.1, 1.3)},
    };
    double worst = 0;
    for (auto& [name, fam] : fams) {
        auto samples = default_eigen_samples(fam);
        for (int n = 0; n <= 6; ++n) worst = std::max(worst, eigen_defect(fam, n, samples));
    }

    // resolution probes, recorded for the report: the displayed Wilson eigenvalue
    // n(a+b+c+d-1) and the displayed Hahn law n(n+S) with series parameter n+S
    auto& wil = fams[3].second;
    auto wsamples = default_eigen_samples(wil);
    DifferenceOperator wop = wil.op();
    double wilson_linear = 0;
    {
        int n = 2;
        cplx lamlin = double(n) * (wil.p1 + wil.p2 + wil.p3 + wil.p4 - 1.0);
        auto pf = [&](cplx s) { return poly_eval(wil, n, s); };
        double ww = 0, sc = 1;
        for (auto& s : wsamples) {
            cplx lhs = apply_raw(wop, pf, s);
            cplx rhs = lamlin * pf(s);
            ww = std::max(ww, std::abs(lhs - rhs));
            sc = std::max(sc, std::abs(rhs));
        }
        wilson_linear = ww / sc;
    }
    double hahn_printed = 0;
    {
        cplx a(0.8, 0.5), b(1.1, -0.2);
        cplx S = a + std::conj(a) + b + std::conj(b);
        int n = 1;
        auto printed_poly = [&](cplx s) {
            return std::pow(kI, n) * pochhammer(a + std::conj(a), n) *
                   pochhammer(a + std::conj(b), n) *
                   hyp_pFq({cplx(-double(n)), double(n) + S, a + kI * s},
                           {a + std::conj(a), a + std::conj(b)}, cplx(1.0));
        };
        DifferenceOperator hop = hahn_operator(a, b);
        cplx lam = double(n) * (double(n) + S);
        double ww = 0, sc = 1;
        for (auto& s : default_eigen_samples(fams[1].second)) {
            cplx lhs = apply_raw(hop, printed_poly, s);
            cplx rhs = lam * printed_poly(s);
            ww = std::max(ww, std::abs(lhs - rhs));
            sc = std::max(sc, std::abs(rhs));
        }
        hahn_printed = ww / sc;
    }
    r.defect = worst;
    r.note = "laws: mp n sin(phi) [operator resolved to half the quotient-built one], hahn "
             "n(n+S-1), dual hahn n, wilson n(n+S-1); displayed wilson n(S-1) leaves defect " +
             fmt(wilson_linear) + ", displayed hahn variant leaves defect " + fmt(hahn_printed);
    return r;
}

CheckResult check_ac09() {
    CheckResult r;
    r.id = "AC09";
    r.anchor = "Meixner-Pollaczek norms: Gram diagonal = Gamma(n+2a)/((2 sin phi)^{2a} n!)";
    r.tol = 1e-8;
    PolynomialFamily fam = PolynomialFamily::meixner_pollaczek(1.0, kPi / 3);
    QuadratureConfig cfg(1e-13, 1e-13, 11, 45.0);
    auto G = gram_matrix(fam, 7, cfg);
    double maxdiag = 0;
    for (int n = 0; n < 7; ++n) maxdiag = std::max(maxdiag, std::abs(G[n][n]));
    double worst = 0, offworst = 0;
    for (int n = 0; n < 7; ++n) {
        double closed = norm_squared(fam, n);
        worst = std::max(worst, std::abs(G[n][n].real() - closed) / closed);
        for (int m = 0; m < 7; ++m)
            if (m != n) offworst = std::max(offworst, std::abs(G[m][n]) / maxdiag);
    }
    double printed_ratio = std::pow(2.0 * std::sin(kPi / 3), 2.0 * 1.0 - 1.0);
    r.defect = std::max(worst, offworst);
    r.note = "diag defect " + fmt(worst) + ", offdiag/maxdiag " + fmt(offworst) +
             "; exponent 2a on (2 sin phi) resolved by the mass-integral probe - the displayed "
             "first power is off by " +
             fmt(printed_ratio);
    return r;
}

// --------------------------------------------------- Vilenkin block (AC10+) --

CheckResult check_ac10() {
    CheckResult r;
    r.id = "AC10";
    r.anchor = "Vilenkin transform is unitary and carries L to multiplication by 2 s sinh(phi)";
    r.tol = 1e-5;
    const double alpha = 1.0, phi = 0.8;
    QuadratureConfig cfg(1e-11, 1e-11, 10);
    QuadratureConfig outer(1e-10, 1e-10, 9, 14.0);
    double worst = 0;
    std::string detail;
    for (auto& [name, g] : battery_line_default()) {
        Integral nsrc = de_real_line(
            [&](double s) {
                cplx v = g.eval(cplx(s, 0.0));
                return v * std::conj(v) * vilenkin_weight(alpha, s);
            },
            outer);
        StripFunction Vg = vilenkin_forward(alpha, phi, g, cfg);
        Integral ntgt = de_real_line(
            [&](double t) {
                cplx v = Vg.eval(cplx(t, 0.0));
                return v * std::conj(v) * vilenkin_weight(alpha, t);
            },
            outer);
        double norm_defect =
            std::abs(nsrc.value.real() - ntgt.value.real()) / nsrc.value.real();
        double inter = vilenkin_intertwining_defect(alpha, phi, g, {0.3, 0.9, 1.7}, cfg);
        worst = std::max({worst, norm_defect, inter});
        detail += name + ": norm " + fmt(norm_defect) + ", intertwine " + fmt(inter) + "; ";
    }
    r.defect = worst;
    r.note = detail + "forward measure resolved to mu(s)ds = |Gamma(a/2+is)|^2 ds/(2 pi Gamma(a)) "
                      "by the unitarity probe";
    return r;
}

CheckResult check_ac11() {
    CheckResult r;
    r.id = "AC11";
    r.anchor = "reproducing identities J Phi_a = Psi_{ia} and <Phi_a,Phi_b> = ((a+b)/2)^{-alpha}";
    r.tol = 1e-6;
    const double alpha = 1.0, a = 1.0, b = 2.0;
    QuadratureConfig cfg(1e-12, 1e-12, 11, 50.0);
    Integral ip = de_real_line(
        [&](double s) {
            cplx pa = std::exp((alpha / 2 + kI * s) * std::log(a));
            cplx pb = std::exp((alpha / 2 - kI * s) * std::log(b));
            return pa * pb * std::exp(2.0 * log_gamma(cplx(alpha / 2, s)).real()) /
                   (2.0 * kPi * std::tgamma(alpha));
        },
        cfg);
    double d1 = rel(ip.value, std::pow((a + b) / 2.0, -alpha));

    StripFunction Phi_a{[a, alpha](cplx s) { return std::exp((alpha / 2 + kI * s) * std::log(a)); },
                        1.0, DecayClass::polynomial(0.75)};
    auto J = j_alpha_forward(alpha, Phi_a, cfg);
    double d2 = 0;
    for (cplx z : {cplx(0.0, 2.0), cplx(-0.7, 1.8)}) {
        cplx got = J(z);
        cplx want = std::pow((z + kI * a) / (2.0 * kI), -alpha);
        d2 = std::max(d2, rel(got, want));
    }
    r.defect = std::max(d1, d2);
    r.note = "inner product defect " + fmt(d1) + ", reproducing-vector defect " + fmt(d2) +
             " at z in {2i, -0.7+1.8i}";
    return r;
}

CheckResult check_ac12() {
    CheckResult r;
    r.id = "AC12";
    r.anchor = "Mellin pair: (1/2pi) int Gamma(is)Gamma(alpha-is) x^{-is} ds = Gamma(alpha)(1+x)^{-alpha}";
    r.tol = 1e-8;
    const double alpha = 1.5, x = 0.8;
    QuadratureConfig cfg(1e-13, 1e-13, 11, 50.0);
    // contour Im s = -alpha/2, i.e. is = alpha/2 + iu
    Integral inv = de_real_line(
        [&](double u) {
            double g2 = std::exp(2.0 * log_gamma(cplx(alpha / 2, u)).real());
            return g2 * std::exp(cplx(0.0, -u * std::log(x)));
        },
        cfg);
    cplx got = std::pow(x, -alpha / 2) / (2.0 * kPi) * inv.value;
    cplx want = std::tgamma(alpha) * std::pow(1.0 + x, -alpha);
    r.defect = rel(got, want);
    // the same contour integral with the displayed kernel x^{is-1}
    Integral disp = de_real_line(
        [&](double u) {
            double g2 = std::exp(2.0 * log_gamma(cplx(alpha / 2, u)).real());
            return g2 * std::exp(cplx(0.0, u * std::log(x)));
        },
        cfg);
    cplx got_displayed = std::pow(x, alpha / 2 - 1.0) / (2.0 * kPi) * disp.value;
    r.note = "inverse-Mellin kernel x^{-is} resolved by probe; the displayed x^{is-1} kernel "
             "yields Gamma(alpha) x^{alpha-1} (1+x)^{-alpha} (defect " +
             fmt(rel(got_displayed, want)) + " against the displayed right-hand side)";
    return r;
}

// ----------------------------------------------------------- sec6 (AC13+) ---

CheckResult check_ac13() {
    CheckResult r;
    r.id = "AC13";
    r.anchor = "Delta_{sigma+n} orthogonal in L2(R, dx/2pi); D Delta_sigma = 2 sin(phi) sigma Delta_sigma";
    r.tol = 1.0; // max of (gram off/maxdiag)/1e-8 and eigen residual/1e-6
    ExtensionParams p(0.3, 0.4, 1.0);
    QuadratureConfig cfg(1e-12, 1e-12, 11, 1e9);
    cplx G[5][5];
    double maxdiag = 0;
    for (int i = 0; i < 5; ++i) {
        for (int j = i; j < 5; ++j) {
            int m = i - 2, n = j - 2;
            Integral r2 = de_real_line(
                [&](double x) {
                    return delta_eval(p, m, x) * std::conj(delta_eval(p, n, x)) / (2.0 * kPi);
                },
                cfg);
            G[i][j] = r2.value;
            G[j][i] = std::conj(r2.value);
        }
        maxdiag = std::max(maxdiag, std::abs(G[i][i]));
    }
    double off = 0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (i != j) off = std::max(off, std::abs(G[i][j]) / maxdiag);
    double diag_err = std::abs(maxdiag - 1.0 / (2.0 * std::sin(p.phi))) * 2.0 * std::sin(p.phi);

    double eig = 0;
    for (double tau : {0.3, 0.0, -0.2}) {
        for (double phi : {0.7, 1.0, 2.0}) {
            for (double x : {-1.0, 0.0, 2.0}) {
                ExtensionParams q(tau, 0.4, phi);
                auto f = [&](double xx) { return delta_eval(q, 0.0, xx); };
                cplx got = d_operator_apply(q, f, x);
                cplx want = 2.0 * std::sin(phi) * q.sigma * delta_eval(q, 0.0, x);
                eig = std::max(eig, std::abs(got - want) / std::max(1.0, std::abs(want)));
            }
        }
    }
    r.defect = std::max(off / 1e-8, eig / 1e-6);
    r.note = "gram offdiag/maxdiag " + fmt(off) + " (tol 1e-8), diagonal vs 1/(2 sin phi) err " +
             fmt(diag_err) + ", D eigen residual " + fmt(eig) +
             " (tol 1e-6, finite-difference derivative route) on the 3x3x3 grid";
    return r;
}

CheckResult check_ac14() {
    CheckResult r;
    r.id = "AC14";
    r.anchor = "Psi^(n) pairs orthogonal in L2(ds) + L2(e^{2 pi s} ds); eigenvalues 2 sin(phi)(sigma+n)";
    r.tol = 1.0; // max of (gram off/maxdiag)/1e-5 and eigen defect/1e-5
    ExtensionParams p(0.2, 0.3, 1.2);
    QuadratureConfig cfg(1e-9, 1e-9, 8, 30.0);

    // memoized per-n evaluations: quadrature levels nest, so nodes repeat
    std::map<std::pair<int, double>, std::pair<cplx, cplx>> memo;
    auto psi = [&](int n, double s) {
        auto key = std::make_pair(n, s);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        auto v = psi_eval(p, n, cplx(s, 0.0));
        memo[key] = v;
        return v;
    };

    cplx G[3][3];
    double maxdiag = 0;
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            int m = i - 1, n = j - 1;
            Integral r2 = de_real_line(
                [&](double s) {
                    auto vm = psi(m, s);
                    auto vn = psi(n, s);
                    return vm.first * std::conj(vn.first) +
                           vm.second * std::conj(vn.second) * std::exp(2.0 * kPi * s);
                },
                cfg);
            G[i][j] = r2.value;
            G[j][i] = std::conj(r2.value);
        }
        maxdiag = std::max(maxdiag, std::abs(G[i][i]));
    }
    double off = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) off = std::max(off, std::abs(G[i][j]) / maxdiag);

    double eig = 0;
    {
        ExtensionParams q(0.0, 0.25, kPi / 2);
        eig = std::max(eig, sec6_eigen_defect(q, 0, {cplx(0.3), cplx(1.0)}));
    }
    for (int n : {-1, 0, 1})
        eig = std::max(eig, sec6_eigen_defect(p, n, {cplx(0.4), cplx(1.1)}));

    r.defect = std::max(off / 1e-5, eig / 1e-5);
    r.note = "gram offdiag/maxdiag " + fmt(off) + " (tol 1e-5), eigen defect " + fmt(eig) +
             " (tol 1e-5); eigenvalue spacing 2 sin(phi) holds identically by the law";
    return r;
}

CheckResult check_ac15() {
    CheckResult r;
    r.id = "AC15";
    r.anchor = "double Mellin transform is unitary onto L2(ds/2pi) + L2(e^{2 pi s} ds/2pi)";
    r.tol = 1e-6;
    QuadratureConfig cfg(1e-12, 1e-12, 10);
    double worst = 0;
    std::string detail;
    for (auto& [name, f] : battery_real_line_default()) {
        Integral nf = de_real_line(
            [&](double x) {
                cplx v = f.eval(x);
                return v * std::conj(v);
            },
            cfg);
        DoubleMellinImage im = double_mellin_forward(f, cfg);
        QuadratureConfig cs(1e-12, 1e-12, 9, 38.0);
        Integral n1 = de_real_line(
            [&](double s) {
                cplx v = im.g1.eval(cplx(s, 0.0));
                return v * std::conj(v);
            },
            cs);
        Integral n2 = de_real_line(
            [&](double s) {
                cplx v = im.g2.eval(cplx(s, 0.0));
                return v * std::conj(v) * std::exp(2.0 * kPi * s);
            },
            cs);
        double tgt = (n1.value.real() + n2.value.real()) / (2.0 * kPi);
        double d = std::abs(nf.value.real() - tgt) / nf.value.real();
        worst = std::max(worst, d);
        detail += name + ": " + fmt(d) + "; ";
    }
    r.defect = worst;
    r.note = detail;
    return r;
}

// ------------------------------------------------------------ suite driver --

struct CheckSpec {
    std::string id;
    double budget_s;
    CheckResult (*run)();
};

const std::vector<std::pair<std::string, std::vector<CheckSpec>>>& suite_table() {
    static const std::vector<std::pair<std::string, std::vector<CheckSpec>>> table = {
        {"specfun",
         {{"AC01", 1, check_ac01}, {"AC02", 2, check_ac02}, {"AC03", 10, check_ac03}}},
        {"symmetry", {{"AC07", 60, check_ac07}}},
        {"kl", {{"AC04", 60, check_ac04}, {"AC05", 60, check_ac05}}},
        {"wimp", {{"AC06", 120, check_ac06}}},
        {"polynomials", {{"AC08", 5, check_ac08}, {"AC09", 60, check_ac09}}},
        {"vilenkin",
         {{"AC10", 300, check_ac10}, {"AC11", 30, check_ac11}, {"AC12", 10, check_ac12}}},
        {"sec6",
         {{"AC13", 60, check_ac13}, {"AC14", 300, check_ac14}, {"AC15", 30, check_ac15}}},
    };
    return table;
}

CheckResult run_one(const CheckSpec& spec, const VerifyOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult res;
    try {
        res = spec.run();
    } catch (const std::exception& e) {
        res.id = spec.id;
        res.anchor = "check aborted";
        res.defect = std::numeric_limits<double>::infinity();
        res.tol = 0;
        res.note = std::string("error: ") + e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    res.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    auto ov = opt.tol_override.find(spec.id);
    if (ov != opt.tol_override.end()) res.tol = ov->second;
    res.pass = res.defect <= res.tol;
    if (opt.enforce_budget && res.ms > spec.budget_s * 1000.0) {
        res.pass = false;
        res.note += " [budget " + fmt(spec.budget_s) + " s exceeded]";
    }
    if (!opt.timings) res.ms = 0;
    return res;
}

} // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> v;
    for (auto& [name, _] : suite_table()) v.push_back(name);
    v.push_back("all");
    return v;
}

bool is_suite(const std::string& name) {
    for (auto& n : suite_names())
        if (n == name) return true;
    return false;
}

SuiteReport run_suite(const std::string& name, const VerifyOptions& opt) {
    if (!is_suite(name)) throw ParameterError("unknown suite: " + name);
    std::vector<CheckSpec> specs;
    for (auto& [sname, list] : suite_table())
        if (name == "all" || name == sname)
            specs.insert(specs.end(), list.begin(), list.end());

    SuiteReport rep;
    rep.suite = name;
    int jobs = opt.jobs;
    if (jobs <= 0) jobs = std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 8u);
    if (jobs <= 1 || specs.size() == 1) {
        for (auto& s : specs) rep.checks.push_back(run_one(s, opt));
    } else {
        std::vector<std::future<CheckResult>> futs;
        for (auto& s : specs)
            futs.push_back(std::async(std::launch::async, [&s, &opt] { return run_one(s, opt); }));
        for (auto& f : futs) rep.checks.push_back(f.get());
    }
    std::sort(rep.checks.begin(), rep.checks.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
    rep.pass = true;
    for (auto& c : rep.checks) rep.pass = rep.pass && c.pass;
    return rep;
}

std::string report_to_json(const SuiteReport& r) {
    ordered_json j;
    j["suite"] = r.suite;
    j["checks"] = ordered_json::array();
    for (auto& c : r.checks) {
        ordered_json jc;
        jc["id"] = c.id;
        jc["anchor"] = c.anchor;
        jc["defect"] = c.defect;
        jc["tol"] = c.tol;
        jc["pass"] = c.pass;
        jc["ms"] = c.ms;
        jc["note"] = c.note;
        j["checks"].push_back(jc);
    }
    j["pass"] = r.pass;
    return j.dump(2) + "\n";
}

SuiteReport report_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    SuiteReport r;
    r.suite = j.at("suite").get<std::string>();
    for (auto& jc : j.at("checks")) {
        CheckResult c;
        c.id = jc.at("id").get<std::string>();
        c.anchor = jc.at("anchor").get<std::string>();
        c.defect = jc.at("defect").get<double>();
        c.tol = jc.at("tol").get<double>();
        c.pass = jc.at("pass").get<bool>();
        c.ms = jc.at("ms").get<double>();
        c.note = jc.value("note", "");
        r.checks.push_back(c);
    }
    r.pass = j.at("pass").get<bool>();
    return r;
}

std::string report_to_text(const SuiteReport& r) {
    std::ostringstream os;
    os << "suite " << r.suite << "\n";
    for (auto& c : r.checks) {
        os << "  " << c.id << "  " << (c.pass ? "PASS" : "FAIL") << "  defect=" << fmt(c.defect)
           << "  tol=" << fmt(c.tol);
        if (c.ms > 0) os << "  (" << fmt(c.ms / 1000.0) << " s)";
        os << "\n      " << c.anchor << "\n";
        if (!c.note.empty()) os << "      " << c.note << "\n";
    }
    os << (r.pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

} // namespace imstrip
