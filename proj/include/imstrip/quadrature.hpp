#ifndef IMSTRIP_QUADRATURE_HPP
#define IMSTRIP_QUADRATURE_HPP

#include <complex>
#include <functional>

#include "imstrip/errors.hpp"
#include "imstrip/specfun.hpp"

namespace imstrip {

struct DecayClass {
    enum class Kind { SuperExponential, Exponential, Polynomial };
    Kind kind = Kind::SuperExponential;
    // side-specific rates: exponential rate (>0) or polynomial power (>1/2)
    double rate_left = 0, rate_right = 0;

    static DecayClass super_exponential();
    static DecayClass exponential(double rate);
    static DecayClass exponential(double rate_left, double rate_right);
    static DecayClass polynomial(double power);

    // |s| beyond which the declared tail contributes less than `budget`
    // relative to unit scale.
    double truncation_radius(double budget) const;
};

// Evaluatable function on a horizontal strip |Im s| <= half_width with a
// declared decay class; the common currency of operators and transforms.
struct StripFunction {
    std::function<cplx(cplx)> eval;
    double half_width = 0;
    DecayClass decay;

    cplx operator()(cplx s) const { return eval(s); }
};

struct QuadratureConfig {
    double abs_tol = 1e-11;
    double rel_tol = 1e-11;
    int max_levels = 11;
    double truncation_radius = 0; // 0 = derive from decay / term floor

    QuadratureConfig() = default;
    QuadratureConfig(double at, double rt, int ml = 11, double tr = 0)
        : abs_tol(at), rel_tol(rt), max_levels(ml), truncation_radius(tr) {
        if (abs_tol <= 0 || rel_tol <= 0) throw ParameterError("quadrature tolerances must be > 0");
    }
};

struct Integral {
    cplx value{0.0, 0.0};
    double error = 0;  // conservative estimate: last level difference + roundoff floor
    double l1 = 0;     // integral of |f|
    int levels = 0;
    bool converged = false;
};

// Double-exponential cores. f takes the real integration variable.
Integral de_finite(const std::function<cplx(double)>& f, double a, double b,
                   const QuadratureConfig& cfg);
Integral de_half_line(const std::function<cplx(double)>& f, const QuadratureConfig& cfg,
                      double scale = 1.0);
Integral de_real_line(const std::function<cplx(double)>& f, const QuadratureConfig& cfg,
                      double scale = 1.0);

// Integral over s in R of f(s + i*offset). Throws StripError/ToleranceError per
// the module contract.
Integral integrate_line(const StripFunction& f, double imag_offset, const QuadratureConfig& cfg);

// Integral over (0, inf) with endpoint singularities up to x^{-1+delta}.
Integral integrate_half_line(const std::function<cplx(double)>& f, const QuadratureConfig& cfg);

// int f(s) conj(g(conj s)) w(s) ds over the real line.
Integral inner_product(const StripFunction& f, const StripFunction& g,
                       const std::function<double(double)>& w, const QuadratureConfig& cfg);

} // namespace imstrip

#endif
