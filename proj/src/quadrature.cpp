#include "imstrip/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace imstrip {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Variable transforms for the double-exponential trapezoid.
struct TanhSinhMap {
    double a, b;
    double x(double u) const {
        return 0.5 * (a + b) + 0.5 * (b - a) * std::tanh(0.5 * kPi * std::sinh(u));
    }
    double w(double u) const {
        double c = std::cosh(0.5 * kPi * std::sinh(u));
        return 0.5 * (b - a) * 0.5 * kPi * std::cosh(u) / (c * c);
    }
    double umax() const { return 4.2; }
    // finite interval: streak stopping is always allowed
    double coordinate(double) const { return std::numeric_limits<double>::infinity(); }
};

struct ExpSinhMap {
    double scale = 1.0;
    double x(double u) const { return scale * std::exp(0.5 * kPi * std::sinh(u)); }
    double w(double u) const { return x(u) * 0.5 * kPi * std::cosh(u); }
    double umax() const { return 5.1; }
    // only the +infinity side must reach the truncation radius before stopping
    double coordinate(double u) const {
        return u > 0 ? x(u) : std::numeric_limits<double>::infinity();
    }
};

struct LevelSum {
    cplx sum{0.0, 0.0};
    double l1 = 0;
    double max_term = 0;
};

template <class Map>
LevelSum sweep_level(const std::function<cplx(double)>& f, const Map& map, double h, bool odd_only,
                     double floor_abs, double min_coord) {
    LevelSum out;
    const int streak_needed = 8;
    auto visit = [&](double u, int& streak) -> bool {
        if (std::abs(u) > map.umax()) return false;
        double weight = map.w(u);
        if (!std::isfinite(weight) || weight == 0) return false;
        double xv = map.x(u);
        if (!std::isfinite(xv)) return false;
        cplx t = f(xv) * weight;
        double mag = std::abs(t);
        if (!std::isfinite(mag)) throw DomainError("integrand produced a non-finite value");
        out.sum += t;
        out.l1 += mag;
        out.max_term = std::max(out.max_term, mag);
        if (mag <= floor_abs && map.coordinate(u) >= min_coord) {
            if (++streak >= streak_needed) return false;
        } else {
            streak = 0;
        }
        return true;
    };
    if (!odd_only) {
        int s0 = 0;
        visit(0.0, s0);
    }
    const int k0 = 1, stride = odd_only ? 2 : 1;
    for (int dir : {+1, -1}) {
        int streak = 0;
        for (int k = k0;; k += stride)
            if (!visit(dir * k * h, streak)) break;
    }
    return out;
}

template <class Map>
Integral de_run(const std::function<cplx(double)>& f, const Map& map, const QuadratureConfig& cfg,
                double min_coord) {
    const double h0 = 0.5;

    LevelSum base = sweep_level(f, map, h0, false, 0.0, min_coord);
    double floor_abs = kEps * std::max(base.max_term, 1e-300);

    cplx I = base.sum * h0;
    double l1 = base.l1 * h0;
    Integral res;
    res.value = I;
    res.l1 = l1;
    res.error = std::abs(I) + l1;
    double prev_diff = std::numeric_limits<double>::infinity();
    double h = h0;
    for (int level = 1; level < std::max(2, cfg.max_levels); ++level) {
        h *= 0.5;
        LevelSum add = sweep_level(f, map, h, true, floor_abs, min_coord);
        cplx I_new = 0.5 * I + add.sum * h;
        double l1_new = 0.5 * l1 + add.l1 * h;
        double diff = std::abs(I_new - I);
        I = I_new;
        l1 = l1_new;
        res.levels = level;
        res.value = I;
        res.l1 = l1;
        res.error = diff + 10 * kEps * l1;
        floor_abs = kEps * std::max({add.max_term, base.max_term, 1e-300});
        if (level >= 2 && res.error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(I))) {
            res.converged = true;
            break;
        }
        // roundoff plateau: successive levels only shuffle the last bits
        if (level >= 4 && diff <= 20 * kEps * l1 && prev_diff <= 40 * kEps * l1) {
            res.converged = true;
            break;
        }
        prev_diff = diff;
    }
    return res;
}

} // namespace

DecayClass DecayClass::super_exponential() {
    DecayClass d;
    d.kind = Kind::SuperExponential;
    return d;
}
DecayClass DecayClass::exponential(double rate) { return exponential(rate, rate); }
DecayClass DecayClass::exponential(double rate_left, double rate_right) {
    if (rate_left <= 0 || rate_right <= 0)
        throw ParameterError("exponential decay rate must be > 0");
    DecayClass d;
    d.kind = Kind::Exponential;
    d.rate_left = rate_left;
    d.rate_right = rate_right;
    return d;
}
DecayClass DecayClass::polynomial(double power) {
    if (power <= 0.5) throw ParameterError("polynomial decay power must exceed 1/2");
    DecayClass d;
    d.kind = Kind::Polynomial;
    d.rate_left = d.rate_right = power;
    return d;
}

double DecayClass::truncation_radius(double budget) const {
    budget = std::max(budget, 1e-300);
    switch (kind) {
        case Kind::SuperExponential:
            return std::max(8.0, std::sqrt(std::log(1.0 / budget)) + 4.0);
        case Kind::Exponential: {
            double r = std::min(rate_left, rate_right);
            return std::log(1.0 / budget) / r + 2.0;
        }
        case Kind::Polynomial: {
            double p = std::min(rate_left, rate_right);
            return std::pow(1.0 / budget, 1.0 / std::max(p - 0.5, 0.25));
        }
    }
    return 10.0;
}

Integral de_finite(const std::function<cplx(double)>& f, double a, double b,
                   const QuadratureConfig& cfg) {
    if (!(b > a)) throw DomainError("de_finite: empty interval");
    TanhSinhMap map{a, b};
    return de_run(f, map, cfg, 0.0);
}

Integral de_half_line(const std::function<cplx(double)>& f, const QuadratureConfig& cfg,
                      double scale) {
    ExpSinhMap map{scale};
    return de_run(f, map, cfg, cfg.truncation_radius);
}

Integral de_real_line(const std::function<cplx(double)>& f, const QuadratureConfig& cfg,
                      double scale) {
    // Two half-line passes; nodes never land on s = 0, so even/odd removable
    // points of operator coefficients stay harmless.
    Integral pos = de_half_line(f, cfg, scale);
    Integral neg = de_half_line([&f](double x) { return f(-x); }, cfg, scale);
    Integral out;
    out.value = pos.value + neg.value;
    out.error = pos.error + neg.error;
    out.l1 = pos.l1 + neg.l1;
    out.levels = std::max(pos.levels, neg.levels);
    out.converged = pos.converged && neg.converged;
    return out;
}

Integral integrate_line(const StripFunction& f, double imag_offset, const QuadratureConfig& cfg) {
    if (std::abs(imag_offset) > f.half_width + 1e-15)
        throw StripError("integrate_line: offset exceeds the declared strip half-width");
    QuadratureConfig c = cfg;
    if (c.truncation_radius == 0)
        c.truncation_radius = f.decay.truncation_radius(0.1 * cfg.abs_tol);
    Integral r = de_real_line([&](double s) { return f.eval(cplx(s, imag_offset)); }, c);
    if (!r.converged && r.error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value)))
        throw ToleranceError("integrate_line: refinement exhausted max_levels");
    return r;
}

Integral integrate_half_line(const std::function<cplx(double)>& f, const QuadratureConfig& cfg) {
    Integral r = de_half_line(f, cfg);
    if (!r.converged && r.error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value)))
        throw ToleranceError("integrate_half_line: refinement exhausted max_levels");
    return r;
}

Integral inner_product(const StripFunction& f, const StripFunction& g,
                       const std::function<double(double)>& w, const QuadratureConfig& cfg) {
    QuadratureConfig c = cfg;
    if (c.truncation_radius == 0) {
        double rf = f.decay.truncation_radius(0.1 * cfg.abs_tol);
        double rg = g.decay.truncation_radius(0.1 * cfg.abs_tol);
        c.truncation_radius = std::min(rf, rg);
    }
    Integral r = de_real_line(
        [&](double s) { return f.eval(cplx(s, 0.0)) * std::conj(g.eval(cplx(s, 0.0))) * w(s); }, c);
    if (!r.converged && r.error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value)))
        throw ToleranceError("inner_product: refinement exhausted max_levels");
    return r;
}

} // namespace imstrip
