#include "imstrip/extensions.hpp"

#include <cmath>
#include <numbers>

namespace imstrip {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};
} // namespace

ExtensionParams::ExtensionParams(double tau_, double sigma_, double phi_)
    : tau(tau_), sigma(sigma_), phi(phi_) {
    if (!(phi > 0.0 && phi < kPi))
        throw ParameterError("ExtensionParams: phi must be strictly inside (0, pi)");
}

// Principal logs are continuous along the real x-line here: 1 + x e^{+-i phi}
// never meets (-inf, 0] for phi in (0, pi), and both logs vanish at x = 0,
// which is exactly the Delta(0) = 1 branch.
cplx delta_eval(const ExtensionParams& p, double sigma_shift, double x) {
    cplx sg(p.sigma + sigma_shift);
    cplx it(0.0, p.tau);
    cplx lp = std::log(1.0 + x * std::exp(kI * p.phi));
    cplx lm = std::log(1.0 + x * std::exp(-kI * p.phi));
    return std::exp((-0.5 - it - sg) * lp + (-0.5 - it + sg) * lm);
}

cplx delta_derivative(const ExtensionParams& p, double sigma_shift, double x) {
    cplx sg(p.sigma + sigma_shift);
    cplx it(0.0, p.tau);
    cplx ep = std::exp(kI * p.phi), em = std::exp(-kI * p.phi);
    cplx logd = (-0.5 - it - sg) * ep / (1.0 + x * ep) + (-0.5 - it + sg) * em / (1.0 + x * em);
    return delta_eval(p, sigma_shift, x) * logd;
}

double theta_substitution(double phi, double x) {
    if (!(phi > 0.0 && phi < kPi)) throw ParameterError("theta_substitution: phi outside (0, pi)");
    return 2.0 * std::arg(1.0 + x * std::exp(kI * phi));
}

double theta_derivative(double phi, double x) {
    return 2.0 * std::sin(phi) / (1.0 + 2.0 * x * std::cos(phi) + x * x);
}

cplx d_operator_apply(const ExtensionParams& p, const std::function<cplx(double)>& f, double x) {
    // Richardson-extrapolated central differences for f'
    double scale = std::max(1.0, std::abs(x));
    double h = 1e-2 * scale;
    auto d = [&](double hh) { return (f(x + hh) - f(x - hh)) / (2.0 * hh); };
    cplx d1 = d(h), d2 = d(h / 2), d4 = d(h / 4);
    cplx r1 = (4.0 * d2 - d1) / 3.0, r2 = (4.0 * d4 - d2) / 3.0;
    cplx rr = (16.0 * r2 - r1) / 15.0;
    if (std::abs(r2 - r1) > 1e-5 * std::max(1.0, std::abs(rr)))
        throw StepError("d_operator_apply: derivative extrapolation unstable");
    cplx fp = rr;
    return kI * (x * x + 2.0 * std::cos(p.phi) * x + 1.0) * fp +
           kI * (1.0 + 2.0 * kI * p.tau) * (x + std::cos(p.phi)) * f(x);
}

cplx d_operator_apply_delta(const ExtensionParams& p, double sigma_shift, double x) {
    cplx fp = delta_derivative(p, sigma_shift, x);
    cplx fv = delta_eval(p, sigma_shift, x);
    return kI * (x * x + 2.0 * std::cos(p.phi) * x + 1.0) * fp +
           kI * (1.0 + 2.0 * kI * p.tau) * (x + std::cos(p.phi)) * fv;
}

std::pair<cplx, cplx> psi_eval(const ExtensionParams& p, int n, cplx s) {
    cplx a = 0.5 + kI * s;
    cplx bb = 0.5 - (p.sigma + double(n)) + kI * p.tau;
    cplx c = 1.0 + 2.0 * kI * p.tau;
    // Beta poles at s = i/2 + i k and s = -i(1/2+k) + 2 tau
    cplx ba = 0.5 + kI * s, bbeta = 0.5 + 2.0 * kI * p.tau - kI * s;
    if (detail::near_nonpositive_int(ba, 1e-8) || detail::near_nonpositive_int(bbeta, 1e-8))
        throw PoleError("psi_eval: s at a Beta-factor pole");
    cplx B = beta(ba, bbeta);
    ContinuationPath path1 = ContinuationPath::unit_circle_about_one(p.phi, -1);
    ContinuationPath path2 = ContinuationPath::unit_circle_about_one(kPi - p.phi, +1);
    cplx F1 = hyp2F1_continued(a, bb, c, path1);
    cplx F2 = hyp2F1_continued(a, bb, c, path2);
    return {B * F1, B * F2};
}

double sec6_eigen_defect(const ExtensionParams& p, int n, const std::vector<cplx>& samples) {
    DifferenceOperator L = sec6_operator(p.tau, p.phi);
    cplx lam = 2.0 * std::sin(p.phi) * (p.sigma + double(n));
    double worst = 0, scale = 1;
    for (const cplx& s : samples) {
        auto c0 = psi_eval(p, n, s);
        auto cu = psi_eval(p, n, s + kI);
        auto cd = psi_eval(p, n, s - kI);
        cplx up = L.up(s), dg = L.diag(s), dn = L.down(s);
        cplx r1 = up * cu.first + dg * c0.first + dn * cd.first - lam * c0.first;
        cplx r2 = up * cu.second + dg * c0.second + dn * cd.second - lam * c0.second;
        worst = std::max({worst, std::abs(r1), std::abs(r2)});
        scale = std::max({scale, std::abs(lam * c0.first), std::abs(lam * c0.second)});
    }
    return worst / scale;
}

ResidueReport psi_residue_report(const ExtensionParams& p, int n) {
    ResidueReport rep;
    const int M = 64;
    const double r = 0.04;
    auto contour_residue = [&](cplx center) {
        cplx acc1 = 0.0, acc2 = 0.0;
        for (int k = 0; k < M; ++k) {
            double th = 2.0 * kPi * double(k) / double(M);
            cplx z = center + r * std::exp(kI * th);
            auto v = psi_eval(p, n, z);
            cplx dz = kI * r * std::exp(kI * th);
            acc1 += v.first * dz;
            acc2 += v.second * dz;
        }
        return std::make_pair(acc1 / (2.0 * kPi * kI) * (2.0 * kPi / double(M)),
                              acc2 / (2.0 * kPi * kI) * (2.0 * kPi / double(M)));
    };
    auto r1 = contour_residue(cplx(0.0, 0.5));
    rep.res1_f1 = r1.first;
    rep.res1_f2 = r1.second;
    auto r2 = contour_residue(cplx(2.0 * p.tau, -0.5));
    rep.res2_f1 = r2.first;
    rep.res2_f2 = r2.second;
    rep.ratio = rep.res2_f1 / rep.res2_f2;
    rep.reference = -std::exp(2.0 * kPi * (p.tau + kI * p.sigma));
    return rep;
}

} // namespace imstrip
