#ifndef IMSTRIP_SPECFUN_HPP
#define IMSTRIP_SPECFUN_HPP

#include <complex>
#include <vector>

#include "imstrip/errors.hpp"

namespace imstrip {

using cplx = std::complex<double>;

// Series truncation: stop once `consecutive` successive terms fall below
// rel_floor * |running sum|; give up at max_terms.
struct TruncationPolicy {
    double rel_floor = 1e-16;
    int max_terms = 10000;
    int consecutive = 3;
};

// Path in the z-plane of a hypergeometric argument, starting at 0. Consecutive
// waypoints must keep `clearance` away from the singular point z = 1.
struct ContinuationPath {
    std::vector<cplx> waypoints; // first entry must be 0
    double clearance = 1e-3;

    static ContinuationPath straight_to(cplx z_end, double clearance = 1e-3);
    // z(theta) = 1 - exp(i*rot*2*theta), theta from 0 to theta_end.
    static ContinuationPath unit_circle_about_one(double theta_end, int rotation_sign,
                                                  int segments = 0);
};

// Complex gamma. Lanczos (g = 7, n = 9) core with reflection for Re z < 1/2;
// coefficient provenance is documented next to the table in specfun.cpp.
cplx gamma(cplx z);

// log Gamma; imaginary part is continuous along vertical lines Re z = const > 0.
cplx log_gamma(cplx z);

// (a)_n = a (a+1) ... (a+n-1)
cplx pochhammer(cplx a, long n);

// Gamma(x) Gamma(y) / Gamma(x+y)
cplx beta(cplx x, cplx y);

// Generalized hypergeometric series. Terminating series (some upper parameter a
// nonpositive integer) are summed exactly; otherwise the usual convergence
// constraints of the (p,q) signature apply.
cplx hyp_pFq(const std::vector<cplx>& a, const std::vector<cplx>& b, cplx z,
             const TruncationPolicy& policy = {});

// Analytic continuation of 2F1(a,b;c;.) from 0 along `path`, by Taylor-stepping
// the hypergeometric ODE. Agrees with the series wherever the path stays in the
// unit disk.
cplx hyp2F1_continued(cplx a, cplx b, cplx c, const ContinuationPath& path,
                      const TruncationPolicy& policy = {});

// 2F1 with automatic routing: series for |z| < 0.8, ODE continuation otherwise.
cplx hyp2F1(cplx a, cplx b, cplx c, cplx z, const TruncationPolicy& policy = {});

// Macdonald function K_nu(x), x > 0, complex order. Real for real x > 0 and
// purely imaginary nu; even in nu. Normalized so that
//   K_{nu-1} - K_{nu+1} = -(2 nu / x) K_nu   and   K_nu(x) = sqrt(pi/2x) W_{0,nu}(x).
cplx macdonald_K(cplx nu, double x);

// Whittaker function W_{rho,sigma}(x), x > 0, real rho < 1/2, complex sigma.
// Even in sigma; real for purely imaginary sigma.
cplx whittaker_W(double rho, cplx sigma, double x);

// Cross-check route: Barnes contour integral on the vertical line
// Re t = -(1/2+rho)/2, which separates the gamma pole ladders for rho < 1/2.
// Primary route near the degenerate 2*sigma integer case.
cplx whittaker_W_barnes(double rho, cplx sigma, double x);
cplx whittaker_W_kummer(double rho, cplx sigma, double x);

namespace detail {
bool near_nonpositive_int(cplx z, double tol = 1e-12);
cplx log_sin_pi(cplx z);
} // namespace detail

// Cached Macdonald evaluations for order sweeps at fixed argument:
// K_nu(x) = sum_k a_k cosh(nu t_k) over a frozen cosh-integral grid.
class MacdonaldSweep {
  public:
    MacdonaldSweep(double x, double max_imag_order);
    cplx eval(cplx nu) const;
    double argument() const { return x_; }

  private:
    double x_;
    std::vector<double> t_, a_;
};

// Same idea for W_{rho, sigma}(x) at fixed (rho, x): the Kummer integral with
// frozen amplitude and log-phase grids,
//   W(sigma) = e^{-x/2} x^rho / Gamma(1/2-rho+sigma) * sum_k A_k e^{sigma L_k}.
// Evaluation reflects sigma -> -sigma to keep the representation valid.
class WhittakerSweep {
  public:
    WhittakerSweep(double rho, double x, double max_imag_order);
    cplx eval(cplx sigma) const;

  private:
    double rho_, x_;
    std::vector<double> t_, L_;
    std::vector<double> A_;
};

} // namespace imstrip

#endif
