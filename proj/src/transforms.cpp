#include "imstrip/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>

namespace imstrip {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

double gamma_abs2(cplx z) { return std::exp(2.0 * log_gamma(z).real()); }

// |Gamma(i y)|^{-2} = y sinh(pi y) / pi, |Gamma(2 i s)|^{-2} = 2 s sinh(2 pi s) / pi
double inv_gamma_is_abs2(double s) { return s * std::sinh(kPi * s) / kPi; }
double inv_gamma_2is_abs2(double s) { return 2.0 * s * std::sinh(2.0 * kPi * s) / kPi; }

// ---------------------------------------------------------------------------
// Fixed half-line grid for the inner Laplace transforms of a battery function:
// nodes never change once built, so every downstream spectral evaluation is
// deterministic.
struct XGrid {
    std::vector<double> x, jac; // exp-sinh nodes and jacobian*h weights
};

XGrid make_xgrid(int level = 8) {
    XGrid g;
    const double h = 0.5 / double(1 << level);
    const long kmax = long(5.1 / h);
    g.x.reserve(2 * kmax);
    for (long k = -kmax; k <= kmax; ++k) {
        double u = k * h;
        double x = std::exp(0.5 * kPi * std::sinh(u));
        double j = x * 0.5 * kPi * std::cosh(u) * h;
        if (!std::isfinite(x) || !std::isfinite(j) || j == 0.0) continue;
        g.x.push_back(x);
        g.jac.push_back(j);
    }
    return g;
}

// values of jac * f(x) * x^{power} on the grid, pruned where negligible
struct WeightedSamples {
    std::vector<double> x;
    std::vector<cplx> v;
};

WeightedSamples sample_on_grid(const XGrid& g, const HalfLineFunction& f, double power) {
    WeightedSamples out;
    double maxmag = 0;
    std::vector<double> mags;
    std::vector<cplx> raw(g.x.size());
    for (size_t k = 0; k < g.x.size(); ++k) {
        cplx val = f.eval(g.x[k]) * std::pow(g.x[k], power) * g.jac[k];
        raw[k] = val;
        double m = std::abs(val);
        mags.push_back(m);
        maxmag = std::max(maxmag, m);
    }
    for (size_t k = 0; k < g.x.size(); ++k) {
        if (mags[k] < 1e-22 * maxmag) continue;
        out.x.push_back(g.x[k]);
        out.v.push_back(raw[k]);
    }
    return out;
}

cplx laplace_on_samples(const WeightedSamples& s, double c) {
    cplx acc = 0.0;
    for (size_t k = 0; k < s.x.size(); ++k) {
        double e = c * s.x[k];
        if (e > 745.0) continue;
        acc += s.v[k] * std::exp(-e);
    }
    return acc;
}

} // namespace


namespace {

// Spectral-side integrals compose closures whose own quadrature noise sits
// near 1e-12; refining the outer rule past that level only burns time.
QuadratureConfig clamp_outer(QuadratureConfig c) {
    c.abs_tol = std::max(c.abs_tol, 1e-11);
    c.rel_tol = std::max(c.rel_tol, 3e-11);
    c.max_levels = std::min(c.max_levels, 9);
    return c;
}

} // namespace

// ------------------------------------------------------------------ Mellin --

StripFunction mellin_forward(const HalfLineFunction& f, const QuadratureConfig& cfg) {
    double lo_w = f.exp_rate_zero > 0 ? 10.0 : f.power_at_zero;
    double hi_w = f.exp_rate_inf > 0 ? 10.0 : f.power_at_inf;
    auto fn = f;
    QuadratureConfig c = cfg;
    if (c.truncation_radius == 0) c.truncation_radius = 80.0;
    StripFunction out;
    out.half_width = std::max(0.0, std::min(lo_w, hi_w) - 1e-9);
    out.decay = DecayClass::exponential(kPi / 2);
    out.eval = [fn, c, lo_w, hi_w](cplx s) -> cplx {
        if (-s.imag() <= -lo_w + 1e-12 || -s.imag() >= hi_w - 1e-12) {
            // convergence strip of int f(x) x^{is-1} dx: -power_at_inf < Im s < power_at_zero
            if (s.imag() >= lo_w - 1e-12 || s.imag() <= -hi_w + 1e-12)
                throw WindowError("mellin_forward: s outside the analyticity window");
        }
        Integral r = de_half_line(
            [&](double x) { return fn.eval(x) * std::exp((kI * s - 1.0) * std::log(x)); }, c);
        return r.value;
    };
    return out;
}

std::function<cplx(double)> mellin_inverse(const StripFunction& g, const QuadratureConfig& cfg,
                                           double s_max) {
    auto ge = g.eval;
    QuadratureConfig c = clamp_outer(cfg);
    return [ge, c, s_max](double x) -> cplx {
        if (!(x > 0)) throw DomainError("mellin_inverse: x must be > 0");
        Integral r = de_finite(
            [&](double s) { return ge(cplx(s, 0.0)) * std::exp(-kI * s * std::log(x)); }, -s_max,
            s_max, c);
        return r.value / (2.0 * kPi);
    };
}

// -------------------------------------------------- Kontorovich--Lebedev ----

namespace {

struct KLCache {
    std::vector<double> t;
    std::vector<cplx> b; // quadrature weight times G(cosh t)
};

std::shared_ptr<KLCache> build_kl_cache(const HalfLineFunction& g, double s_max) {
    if (!(g.exp_rate_zero > 0))
        throw ParameterError("kl_forward: input must decay exponentially at 0 (battery class)");
    XGrid grid = make_xgrid();
    WeightedSamples gs = sample_on_grid(grid, g, -1.0);
    double r0 = g.exp_rate_zero;
    double T = std::acosh(std::max(23.0 * 23.0 / r0, 3.0));
    auto cache = std::make_shared<KLCache>();
    auto xmap = [&](double u) { return 0.5 * T * (1.0 + std::tanh(0.5 * kPi * std::sinh(u))); };
    auto wmap = [&](double u) {
        double c = std::cosh(0.5 * kPi * std::sinh(u));
        return 0.5 * T * 0.5 * kPi * std::cosh(u) / (c * c);
    };
    double probe_prev = 0;
    for (int level = 6;; ++level) {
        double h = 0.5 / double(1 << level);
        cache->t.clear();
        cache->b.clear();
        double maxb = 0;
        long kmax = long(4.2 / h);
        std::vector<std::pair<double, cplx>> rows;
        for (long k = -kmax; k <= kmax; ++k) {
            double u = k * h;
            double t = xmap(u);
            double w = wmap(u) * h;
            if (!std::isfinite(t) || !std::isfinite(w) || w == 0.0) continue;
            cplx b = w * laplace_on_samples(gs, std::cosh(t));
            rows.push_back({t, b});
            maxb = std::max(maxb, std::abs(b));
        }
        for (auto& r : rows) {
            if (std::abs(r.second) * std::exp(std::min(r.first, 30.0)) < 1e-22 * maxb) continue;
            cache->t.push_back(r.first);
            cache->b.push_back(r.second);
        }
        double probe = 0;
        for (size_t k = 0; k < cache->t.size(); ++k)
            probe += (cache->b[k] * std::cos(s_max * cache->t[k])).real();
        if (level >= 8 && std::abs(probe - probe_prev) <= 1e-14 * std::max(maxb, std::abs(probe)))
            break;
        probe_prev = probe;
        if (level >= 11) break;
    }
    return cache;
}

} // namespace

StripFunction kl_forward(const HalfLineFunction& g, const QuadratureConfig& cfg,
                         double s_max_hint) {
    (void)cfg;
    auto cache = build_kl_cache(g, std::max(4.0, s_max_hint));
    StripFunction out;
    out.half_width = 2.0;
    out.decay = DecayClass::exponential(2.0);
    out.eval = [cache](cplx s) -> cplx {
        if (s.imag() == 0.0) { // kernel K_{is} on the real axis: cosh(i s t) = cos(s t)
            double y = s.real();
            cplx acc = 0.0;
            for (size_t k = 0; k < cache->t.size(); ++k)
                acc += cache->b[k] * std::cos(y * cache->t[k]);
            return acc;
        }
        cplx nu = kI * s;
        cplx acc = 0.0;
        for (size_t k = 0; k < cache->t.size(); ++k)
            acc += cache->b[k] * std::cosh(nu * cache->t[k]);
        return acc;
    };
    return out;
}

std::function<cplx(double)> kl_inverse(const StripFunction& f, const QuadratureConfig& cfg,
                                       double s_max) {
    auto fe = f.eval;
    QuadratureConfig c = clamp_outer(cfg);
    // the outer rule visits the same spectral nodes for every x: memoize f
    auto memo = std::make_shared<std::map<double, cplx>>();
    return [fe, c, s_max, memo](double x) -> cplx {
        MacdonaldSweep K(x, s_max);
        Integral r = de_finite(
            [&](double s) {
                auto it = memo->find(s);
                cplx fv;
                if (it != memo->end()) {
                    fv = it->second;
                } else {
                    fv = fe(cplx(s, 0.0));
                    (*memo)[s] = fv;
                }
                return fv * K.eval(cplx(0.0, s)) * (2.0 / kPi) * inv_gamma_is_abs2(s);
            },
            0.0, s_max, c);
        return r.value;
    };
}

// ------------------------------------------------------------------- Wimp ---

namespace {

// The Whittaker kernel in its U-integral form separates the spectral
// parameter:
//   int g(x) x^{-2} W_{rho,sigma}(x) dx
//     = (1/Gamma(1/2-rho+sigma)) sum_j a_j e^{sigma Lt_j} sum_k E_{jk} p_k e^{sigma Lx_k}
// with E_{jk} = e^{-x_k t_j} independent of sigma, so the double quadrature is
// frozen once per input and each evaluation costs two phase sweeps plus a
// matrix-vector product.
struct WimpKernel {
    double rho;
    std::vector<double> Lx; // log x_k
    std::vector<cplx> px;   // jac * g(x) * x^{-3/2} e^{-x/2}
    std::vector<double> Lt; // log(t_j (1+t_j))
    std::vector<double> at; // jac * t^{-1/2-rho} (1+t)^{-1/2+rho}
    std::vector<double> E;  // e^{-x_k t_j}, row-major in j
};

std::shared_ptr<WimpKernel> build_wimp_kernel(double rho, const HalfLineFunction& g) {
    if (!(rho < 0.5)) throw ParameterError("wimp_forward: need rho < 1/2");
    if (!(g.exp_rate_zero > 0))
        throw ParameterError("wimp_forward: input must decay exponentially at 0 (battery class)");
    auto ker = std::make_shared<WimpKernel>();
    ker->rho = rho;

    XGrid xg = make_xgrid(7);
    std::vector<double> xs;
    {
        std::vector<cplx> raw(xg.x.size());
        std::vector<double> bound(xg.x.size());
        double maxb = 0;
        for (size_t k = 0; k < xg.x.size(); ++k) {
            double x = xg.x[k];
            raw[k] = xg.jac[k] * g.eval(x) * std::pow(x, -1.5) * std::exp(-0.5 * x);
            bound[k] = std::abs(raw[k]) * std::max(1.0, std::pow(x, 1.3));
            maxb = std::max(maxb, bound[k]);
        }
        for (size_t k = 0; k < xg.x.size(); ++k) {
            if (bound[k] < 1e-20 * maxb) continue;
            xs.push_back(xg.x[k]);
            ker->Lx.push_back(std::log(xg.x[k]));
            ker->px.push_back(raw[k]);
        }
    }
    double xmin = xs.empty() ? 1.0 : xs.front();

    const int tlevel = 7;
    const double h = 0.5 / double(1 << tlevel);
    const double tcap = 745.0 / std::max(xmin, 1e-6);
    std::vector<double> ts;
    long jmax = long(5.1 / h);
    for (long j = -jmax; j <= jmax; ++j) {
        double u = j * h;
        double t = std::exp(0.5 * kPi * std::sinh(u));
        if (t > tcap) break;
        double jac = t * 0.5 * kPi * std::cosh(u) * h;
        if (!std::isfinite(jac) || jac == 0.0) continue;
        double a = jac * std::exp((-0.5 - rho) * std::log(t) + (-0.5 + rho) * std::log1p(t));
        if (!std::isfinite(a) || a == 0.0) continue;
        ts.push_back(t);
        ker->Lt.push_back(std::log(t) + std::log1p(t));
        ker->at.push_back(a);
    }
    size_t nx = xs.size(), nt = ts.size();
    ker->E.assign(nx * nt, 0.0f);
    for (size_t j = 0; j < nt; ++j)
        for (size_t k = 0; k < nx; ++k) {
            double e = xs[k] * ts[j];
            ker->E[j * nx + k] = e > 720.0 ? 0.0 : std::exp(-e);
        }
    return ker;
}

cplx wimp_kernel_eval(const WimpKernel& ker, cplx s) {
    cplx sigma = kI * s;
    if (sigma.real() < 0 || (sigma.real() == 0 && sigma.imag() < 0)) sigma = -sigma;
    size_t nx = ker.px.size(), nt = ker.at.size();
    std::vector<cplx> pxs(nx);
    for (size_t k = 0; k < nx; ++k) pxs[k] = ker.px[k] * std::exp(sigma * ker.Lx[k]);
    cplx acc = 0.0;
    for (size_t j = 0; j < nt; ++j) {
        const double* row = &ker.E[j * nx];
        double hr = 0, hi = 0;
        for (size_t k = 0; k < nx; ++k) {
            hr += row[k] * pxs[k].real();
            hi += row[k] * pxs[k].imag();
        }
        acc += ker.at[j] * std::exp(sigma * ker.Lt[j]) * cplx(hr, hi);
    }
    return std::exp(-log_gamma(0.5 - ker.rho + sigma)) * acc;
}

} // namespace

StripFunction wimp_forward(double rho, const HalfLineFunction& g, const QuadratureConfig& cfg,
                           double s_max_hint) {
    (void)cfg;
    (void)s_max_hint;
    auto ker = build_wimp_kernel(rho, g);
    StripFunction out;
    out.half_width = 2.0;
    out.decay = DecayClass::exponential(2.0);
    out.eval = [ker](cplx s) { return wimp_kernel_eval(*ker, s); };
    return out;
}

std::function<cplx(double)> wimp_inverse(double rho, const StripFunction& f,
                                         const QuadratureConfig& cfg, double s_max) {
    if (!(rho < 0.5)) throw ParameterError("wimp_inverse: need rho < 1/2");
    auto fe = f.eval;
    QuadratureConfig c = clamp_outer(cfg);
    auto memo = std::make_shared<std::map<double, cplx>>();
    return [fe, c, s_max, rho, memo](double x) -> cplx {
        WhittakerSweep W(rho, x, s_max);
        Integral r = de_finite(
            [&](double s) {
                auto it = memo->find(s);
                cplx fv;
                if (it != memo->end()) {
                    fv = it->second;
                } else {
                    fv = fe(cplx(s, 0.0)) *
                         (gamma_abs2(cplx(0.5 - rho, s)) * inv_gamma_2is_abs2(s) / (2.0 * kPi));
                    (*memo)[s] = fv;
                }
                return fv * W.eval(cplx(0.0, s));
            },
            0.0, s_max, c);
        return r.value;
    };
}

// --------------------------------------------------------------- Vilenkin ---

double vilenkin_weight(double alpha, double s) {
    return gamma_abs2(cplx(alpha / 2, s)) * std::exp(kPi * s) / (2.0 * kPi);
}

namespace {

void vilenkin_check(double alpha, double phi) {
    if (!(alpha > 0) || !(phi > 0)) throw ParameterError("vilenkin: need alpha > 0 and phi > 0");
}

double vilenkin_mu_density(double alpha, double s) {
    return gamma_abs2(cplx(alpha / 2, s)) / (2.0 * kPi * std::tgamma(alpha));
}

} // namespace

StripFunction vilenkin_forward(double alpha, double phi, const StripFunction& g,
                               const QuadratureConfig& cfg) {
    vilenkin_check(alpha, phi);
    double z0 = 1.0 - std::exp(-2.0 * phi);
    auto ge = g.eval;
    QuadratureConfig c = cfg;
    if (c.truncation_radius == 0)
        c.truncation_radius = std::min(g.decay.truncation_radius(1e-14), 30.0);
    TruncationPolicy pol;
    pol.max_terms = 30000;
    StripFunction out;
    out.half_width = 1.5;
    out.decay = DecayClass::super_exponential();
    out.eval = [=](cplx t) -> cplx {
        Integral r = de_real_line(
            [&](double s) {
                cplx kernel =
                    hyp_pFq({cplx(alpha / 2, -s), alpha / 2 + kI * t}, {cplx(alpha)}, z0, pol);
                return ge(cplx(s, 0.0)) * kernel * vilenkin_mu_density(alpha, s);
            },
            c);
        return std::pow(z0, alpha / 2) * std::exp(-phi * kI * t) * r.value;
    };
    return out;
}

StripFunction vilenkin_inverse(double alpha, double phi, const StripFunction& f,
                               const QuadratureConfig& cfg) {
    vilenkin_check(alpha, phi);
    double z0 = 1.0 - std::exp(-2.0 * phi);
    auto fe = f.eval;
    QuadratureConfig c = clamp_outer(cfg);
    if (c.truncation_radius == 0)
        c.truncation_radius = std::min(f.decay.truncation_radius(1e-14), 30.0);
    TruncationPolicy pol;
    pol.max_terms = 30000;
    StripFunction out;
    out.half_width = 1.5;
    out.decay = DecayClass::super_exponential();
    out.eval = [=](cplx s) -> cplx {
        Integral r = de_real_line(
            [&](double t) {
                cplx kernel =
                    hyp_pFq({alpha / 2 + kI * s, cplx(alpha / 2, -t)}, {cplx(alpha)}, z0, pol);
                return fe(cplx(t, 0.0)) * kernel * std::exp(phi * kI * t) *
                       vilenkin_weight(alpha, t);
            },
            c);
        return std::exp(-kPi * s) / std::tgamma(alpha) * std::pow(z0, alpha / 2) * r.value;
    };
    return out;
}

cplx vilenkin_forward_jtj(double alpha, double phi, const StripFunction& g, double t,
                          const QuadratureConfig& cfg) {
    vilenkin_check(alpha, phi);
    auto ge = g.eval;
    QuadratureConfig c = cfg;
    if (c.truncation_radius == 0)
        c.truncation_radius = std::min(g.decay.truncation_radius(1e-14), 30.0);
    // J h1 on the positive axis (real-log branch), h1 = e^{pi s/2} g
    auto J_h1 = [&](double z) -> cplx {
        Integral r = de_real_line(
            [&](double s) {
                return ge(cplx(s, 0.0)) *
                       std::exp(cplx(0.0, -s * std::log(z))) * // z^{-is}
                       vilenkin_mu_density(alpha, s);
            },
            c);
        return std::exp(kI * kPi * alpha / 4.0) * std::pow(2.0, alpha) *
               std::pow(z, -alpha / 2) * r.value;
    };
    auto F2 = [&](double z) -> cplx {
        double arg = (1.0 + z * std::exp(phi)) / (1.0 + z * std::exp(-phi));
        return std::pow(2.0 * std::sinh(phi), alpha / 2) *
               std::pow(1.0 + z * std::exp(-phi), -alpha) * J_h1(arg);
    };
    QuadratureConfig cz = cfg;
    cz.truncation_radius = 1e6;
    Integral rz = de_half_line(
        [&](double z) { return F2(z) * std::exp((alpha / 2 + kI * t - 1.0) * std::log(z)); }, cz);
    cplx jinv = std::exp(-kI * kPi * alpha / 4.0) * std::pow(2.0, -alpha) * std::tgamma(alpha) *
                std::exp(kPi * t / 2.0) *
                std::exp(-log_gamma(alpha / 2 + kI * t) - log_gamma(alpha / 2 - kI * t)) *
                rz.value;
    return std::exp(-kPi * t / 2.0) * jinv;
}

// ---------------------------------------------------------------- J_alpha ---

std::function<cplx(cplx)> j_alpha_forward(double alpha, const StripFunction& f,
                                          const QuadratureConfig& cfg) {
    if (!(alpha > 0)) throw ParameterError("j_alpha_forward: need alpha > 0");
    auto fe = f.eval;
    QuadratureConfig c = cfg;
    if (c.truncation_radius == 0) c.truncation_radius = 60.0;
    return [fe, alpha, c](cplx z) -> cplx {
        if (!(z.imag() > 0)) throw DomainError("j_alpha_forward: z must lie in the upper half-plane");
        cplx L = std::log(z / kI); // real on z = ip
        Integral r = de_real_line(
            [&](double s) {
                return fe(cplx(s, 0.0)) * std::exp(-(alpha / 2 + kI * double(s)) * L) *
                       gamma_abs2(cplx(alpha / 2, s));
            },
            c);
        return std::pow(2.0, alpha) / (2.0 * kPi * std::tgamma(alpha)) * r.value;
    };
}

StripFunction j_alpha_inverse(double alpha, const std::function<cplx(double)>& F_on_ip,
                              const QuadratureConfig& cfg) {
    if (!(alpha > 0)) throw ParameterError("j_alpha_inverse: need alpha > 0");
    QuadratureConfig c = cfg;
    if (c.truncation_radius == 0) c.truncation_radius = 1e9;
    StripFunction out;
    out.half_width = 0.0;
    out.decay = DecayClass::polynomial(1.0);
    out.eval = [F_on_ip, alpha, c](cplx t) -> cplx {
        Integral r = de_half_line(
            [&](double p) {
                return F_on_ip(p) * std::exp((alpha / 2 + kI * t - 1.0) * std::log(p));
            },
            c);
        return std::tgamma(alpha) * std::pow(2.0, -alpha) *
               std::exp(-log_gamma(alpha / 2 + kI * t) - log_gamma(alpha / 2 - kI * t)) * r.value;
    };
    return out;
}

// ----------------------------------------------------------- double Mellin --

namespace {

cplx half_mellin(const RealLineFunction& f, bool positive_side, cplx s,
                 const QuadratureConfig& cfg) {
    auto integrand = [&](double y) {
        double x = positive_side ? y : -y;
        return f.eval(x) * std::exp((kI * s - 0.5) * std::log(y));
    };
    if (f.support_lo != 0 || f.support_hi != 0) {
        double lo = positive_side ? std::max(0.0, f.support_lo) : std::max(0.0, -f.support_hi);
        double hi = positive_side ? std::max(0.0, f.support_hi) : std::max(0.0, -f.support_lo);
        if (!(hi > lo)) return cplx(0.0);
        return de_finite(integrand, lo, hi, cfg).value;
    }
    return de_half_line(integrand, cfg).value;
}

} // namespace

DoubleMellinImage double_mellin_forward(const RealLineFunction& f, const QuadratureConfig& cfg) {
    QuadratureConfig c = cfg;
    if (c.truncation_radius == 0) c.truncation_radius = 60.0;
    DoubleMellinImage out;
    out.g1.half_width = 0.45;
    out.g1.decay = DecayClass::exponential(0.6);
    out.g1.eval = [f, c](cplx s) { return half_mellin(f, true, s, c); };
    out.g2.half_width = 0.45;
    out.g2.decay = DecayClass::exponential(0.6);
    out.g2.eval = [f, c](cplx s) {
        return -kI * std::exp(-kPi * s) * half_mellin(f, false, s, c);
    };
    return out;
}

std::function<cplx(double)> double_mellin_inverse(const StripFunction& g1, const StripFunction& g2,
                                                  const QuadratureConfig& cfg, double s_max) {
    auto e1 = g1.eval, e2 = g2.eval;
    QuadratureConfig c = clamp_outer(cfg);
    return [e1, e2, c, s_max](double x) -> cplx {
        if (x == 0) throw DomainError("double_mellin_inverse: x must be nonzero");
        double ax = std::abs(x);
        if (x > 0) {
            Integral r = de_finite(
                [&](double s) { return e1(cplx(s, 0.0)) * std::exp((-kI * s - 0.5) * std::log(ax)); },
                -s_max, s_max, c);
            return r.value / (2.0 * kPi);
        }
        Integral r = de_finite(
            [&](double s) {
                cplx g2c = kI * std::exp(kPi * s) * e2(cplx(s, 0.0)); // back to the plain half-line transform
                return g2c * std::exp((-kI * s - 0.5) * std::log(ax));
            },
            -s_max, s_max, c);
        return r.value / (2.0 * kPi);
    };
}

// ---------------------------------------------------------- transform pairs --

TransformPair kl_pair() {
    TransformPair p;
    p.name = "kl";
    p.source_measure = "L2(R+, dx/x)";
    p.target_measure = "L2(R+, (2/pi)|Gamma(is)|^-2 ds)";
    p.source_weight = [](double x) { return 1.0 / x; };
    p.target_weight = [](double s) { return (2.0 / kPi) * inv_gamma_is_abs2(s); };
    p.intertwine = "mult by 2/x  <->  (1/is)(f(s-i) - f(s+i))  [sign resolved by probe]";
    p.target_op = kl_intertwined_operator();
    p.source_mult = [](double x) { return cplx(2.0 / x); };
    return p;
}

TransformPair wimp_pair(double rho) {
    TransformPair p;
    p.name = "wimp";
    p.source_measure = "L2(R+, dx/x^2)";
    p.target_measure = "L2(R+, (1/2pi)|Gamma(1/2-rho+is)/Gamma(2is)|^2 ds)";
    p.source_weight = [](double x) { return 1.0 / (x * x); };
    p.target_weight = [rho](double s) {
        return gamma_abs2(cplx(0.5 - rho, s)) * inv_gamma_2is_abs2(s) / (2.0 * kPi);
    };
    p.intertwine = "mult by 1/x  <->  wimp difference operator (numerators 1/2-rho-+sigma)";
    p.target_op = wimp_operator(rho);
    p.source_mult = [](double x) { return cplx(1.0 / x); };
    return p;
}

TransformPair vilenkin_pair(double alpha, double phi) {
    TransformPair p;
    p.name = "vilenkin";
    p.source_measure = "L2(R, w ds), w = (1/2pi)|Gamma(alpha/2+is)|^2 e^{pi s}";
    p.target_measure = p.source_measure;
    p.source_weight = [alpha](double s) { return vilenkin_weight(alpha, s); };
    p.target_weight = p.source_weight;
    p.intertwine = "mult by 2 s sinh(phi)  <->  vilenkin difference operator";
    p.target_op = vilenkin_operator(alpha, phi);
    p.source_mult = [phi](double s) { return cplx(2.0 * s * std::sinh(phi)); };
    return p;
}

// ------------------------------------------------------ intertwining checks --

double kl_intertwining_defect(const HalfLineFunction& g, const std::vector<double>& s_points,
                              const QuadratureConfig& cfg) {
    double smax = 4.0;
    for (double s : s_points) smax = std::max(smax, s + 3.0);
    StripFunction Kg = kl_forward(g, cfg, smax);
    HalfLineFunction g2 = g;
    auto base = g.eval;
    g2.eval = [base](double x) { return 2.0 / x * base(x); };
    g2.power_at_zero = g.power_at_zero - 1.0;
    g2.power_at_inf = g.power_at_inf + 1.0;
    StripFunction K2 = kl_forward(g2, cfg, smax);
    DifferenceOperator op = kl_intertwined_operator();
    double worst = 0, scale = 0;
    for (double s : s_points) {
        cplx lhs = apply_raw(op, Kg.eval, cplx(s));
        cplx rhs = K2.eval(cplx(s));
        worst = std::max(worst, std::abs(lhs - rhs));
        scale = std::max(scale, std::abs(rhs));
    }
    return worst / std::max(scale, 1e-30);
}

double kl_derivative_image_defect(const HalfLineFunction& g, const HalfLineFunction& g_prime,
                                  const std::vector<double>& s_points,
                                  const QuadratureConfig& cfg) {
    double smax = 4.0;
    for (double s : s_points) smax = std::max(smax, s + 3.0);
    StripFunction Kg = kl_forward(g, cfg, smax);
    HalfLineFunction q = g;
    auto base = g.eval, dbase = g_prime.eval;
    q.eval = [base, dbase](double x) { return dbase(x) - base(x) / x; };
    q.power_at_zero = g.power_at_zero - 1.0;
    q.power_at_inf = g.power_at_inf + 1.0;
    StripFunction Kq = kl_forward(q, cfg, smax);
    double worst = 0, scale = 0;
    for (double s : s_points) {
        cplx lhs = 0.5 * (Kg.eval(cplx(s) + kI) + Kg.eval(cplx(s) - kI));
        cplx rhs = Kq.eval(cplx(s));
        worst = std::max(worst, std::abs(lhs - rhs));
        scale = std::max(scale, std::abs(rhs));
    }
    return worst / std::max(scale, 1e-30);
}

double wimp_intertwining_defect(double rho, const HalfLineFunction& g,
                                const std::vector<double>& s_points, const QuadratureConfig& cfg) {
    double smax = 4.0;
    for (double s : s_points) smax = std::max(smax, s + 3.0);
    StripFunction Wg = wimp_forward(rho, g, cfg, smax);
    HalfLineFunction g2 = g;
    auto base = g.eval;
    g2.eval = [base](double x) { return base(x) / x; };
    g2.power_at_zero = g.power_at_zero - 1.0;
    g2.power_at_inf = g.power_at_inf + 1.0;
    StripFunction W2 = wimp_forward(rho, g2, cfg, smax);
    DifferenceOperator op = wimp_operator(rho);
    double worst = 0, scale = 0;
    for (double s : s_points) {
        cplx lhs = apply_raw(op, Wg.eval, cplx(s));
        cplx rhs = W2.eval(cplx(s));
        worst = std::max(worst, std::abs(lhs - rhs));
        scale = std::max(scale, std::abs(rhs));
    }
    return worst / std::max(scale, 1e-30);
}

double vilenkin_intertwining_defect(double alpha, double phi, const StripFunction& g,
                                    const std::vector<double>& t_points,
                                    const QuadratureConfig& cfg) {
    StripFunction Vg = vilenkin_forward(alpha, phi, g, cfg);
    StripFunction g2 = g;
    auto base = g.eval;
    g2.eval = [base, phi](cplx s) { return 2.0 * s * std::sinh(phi) * base(s); };
    StripFunction V2 = vilenkin_forward(alpha, phi, g2, cfg);
    DifferenceOperator op = vilenkin_operator(alpha, phi);
    double worst = 0, scale = 0;
    for (double t : t_points) {
        cplx lhs = apply_raw(op, Vg.eval, cplx(t));
        cplx rhs = V2.eval(cplx(t));
        worst = std::max(worst, std::abs(lhs - rhs));
        scale = std::max(scale, std::abs(rhs));
    }
    return worst / std::max(scale, 1e-30);
}

// --------------------------------------------------------------- batteries --

const std::vector<std::pair<std::string, HalfLineFunction>>& battery_half_line_default() {
    static const std::vector<std::pair<std::string, HalfLineFunction>> v = [] {
        std::vector<std::pair<std::string, HalfLineFunction>> b;
        HalfLineFunction f1;
        f1.eval = [](double x) { return cplx(std::exp(-x - 1.0 / x)); };
        f1.exp_rate_zero = 1.0;
        f1.exp_rate_inf = 1.0;
        b.push_back({"exp(-x-1/x)", f1});
        HalfLineFunction f2;
        f2.eval = [](double x) { return cplx(std::exp(-1.4 * x - 0.6 / x)); };
        f2.exp_rate_zero = 0.6;
        f2.exp_rate_inf = 1.4;
        b.push_back({"exp(-1.4x-0.6/x)", f2});
        HalfLineFunction f3;
        f3.eval = [](double x) { return cplx(std::sqrt(x) * std::exp(-x - 1.0 / x)); };
        f3.power_at_zero = 0.5;
        f3.power_at_inf = -0.5;
        f3.exp_rate_zero = 1.0;
        f3.exp_rate_inf = 1.0;
        b.push_back({"sqrt(x)exp(-x-1/x)", f3});
        return b;
    }();
    return v;
}

const std::vector<std::pair<std::string, StripFunction>>& battery_line_default() {
    static const std::vector<std::pair<std::string, StripFunction>> v = [] {
        std::vector<std::pair<std::string, StripFunction>> b;
        StripFunction g1;
        g1.half_width = 50.0;
        g1.decay = DecayClass::super_exponential();
        g1.eval = [](cplx s) { return std::exp(-s * s - kPi * s / 2.0); };
        b.push_back({"exp(-s^2-pi s/2)", g1});
        StripFunction g2;
        g2.half_width = 50.0;
        g2.decay = DecayClass::super_exponential();
        g2.eval = [](cplx s) { return (s + 0.3) * std::exp(-1.2 * s * s - kPi * s / 2.0); };
        b.push_back({"(s+0.3)exp(-1.2 s^2-pi s/2)", g2});
        return b;
    }();
    return v;
}

const std::vector<std::pair<std::string, RealLineFunction>>& battery_real_line_default() {
    static const std::vector<std::pair<std::string, RealLineFunction>> v = [] {
        std::vector<std::pair<std::string, RealLineFunction>> b;
        RealLineFunction f1;
        f1.eval = [](double x) { return cplx(std::exp(-x * x)); };
        b.push_back({"exp(-x^2)", f1});
        RealLineFunction f2;
        f2.eval = [](double x) { return cplx(std::exp(-(x - 1.0) * (x - 1.0))); };
        b.push_back({"exp(-(x-1)^2)", f2});
        return b;
    }();
    return v;
}

} // namespace imstrip
