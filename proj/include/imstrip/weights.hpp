#ifndef IMSTRIP_WEIGHTS_HPP
#define IMSTRIP_WEIGHTS_HPP

#include <functional>
#include <string>
#include <vector>

#include "imstrip/quadrature.hpp"
#include "imstrip/specfun.hpp"

namespace imstrip {

// Parameters (c, {a_k}, {b_l}) of the gamma-quotient weight
//   mu(s) = e^{cs} prod Gamma(a_k + is) / prod Gamma(b_l + is),
// optionally divided by Gamma(2is) (the dual Hahn / Wilson / Wimp shape).
struct WeightSpec {
    double c = 0;
    std::vector<cplx> a;
    std::vector<cplx> b;
    bool gamma2is_div = false;

    static WeightSpec meixner_pollaczek(double a0, double phi);
    static WeightSpec continuous_hahn(cplx a0, cplx b0);
    static WeightSpec continuous_dual_hahn(cplx a0, cplx b0, cplx c0);
    static WeightSpec wilson(cplx a0, cplx b0, cplx c0, cplx d0);
    static WeightSpec kontorovich_lebedev(); // mu = 1/Gamma(is)
    static WeightSpec wimp(double rho);      // mu = Gamma(1/2-rho+is)/Gamma(2is)
};

cplx mu(const WeightSpec& spec, cplx s);
cplx nu(const WeightSpec& spec, cplx s);

// w(s) = (1/2pi) mu(s) nu(s) > 0 on the real line.
double weight_w(const WeightSpec& spec, double s);

// Closed product forms of the shift coefficients
//   A(s) = nu(s+i)/nu(s),   B(s) = mu(s-i)/mu(s).
cplx coeff_A(const WeightSpec& spec, cplx s);
cplx coeff_B(const WeightSpec& spec, cplx s);

struct DifferenceOperator {
    std::function<cplx(cplx)> up;   // coefficient of f(s+i)
    std::function<cplx(cplx)> diag; // coefficient of f(s)
    std::function<cplx(cplx)> down; // coefficient of f(s-i)
    std::string name;
};

// L f = A f(s+i) - (A+B) f + B f(s-i)
DifferenceOperator make_operator(const WeightSpec& spec, const std::string& name = "");

cplx apply(const DifferenceOperator& op, const StripFunction& f, cplx s);

// Operator image of a plain callable analytic near s +/- i (no strip metadata).
cplx apply_raw(const DifferenceOperator& op, const std::function<cplx(cplx)>& f, cplx s);

// |<L f, g>_w - <f, L g>_w| together with the combined quadrature error estimate.
struct SymmetryDefect {
    double defect = 0;
    double combined_error = 0;
};
SymmetryDefect symmetry_defect(const DifferenceOperator& op, const StripFunction& f,
                               const StripFunction& g, const std::function<double(double)>& w,
                               const QuadratureConfig& cfg);

// Sampled check of |f(s)| <= margin * Psi(s)^{-1/2} |s|^{-m-1/2-eps} on |Im s| <= 1.
struct WDecreasingReport {
    bool pass = true;
    struct Failure {
        cplx s;
        double value, bound;
    };
    std::vector<Failure> failures;
};
WDecreasingReport is_w_decreasing(const StripFunction& f, const WeightSpec& spec,
                                  double margin = 10.0);

// Asymptotic envelope Psi(s) of w(s): |s|^power * exp(2 c s + exp_rate * |s| ...)
// evaluated at real s with side-aware exponential part.
double envelope_psi(const WeightSpec& spec, double s);

// Functional-equation test of the up-shift coefficient: L(s) = conj(L(conj s - i)).
bool check_shift_symmetry_law(const std::function<cplx(cplx)>& L, int samples = 50,
                              double tol = 1e-10);

// Concrete operators, with the display typos resolved (see module tests for the
// probes that pin each resolution).
DifferenceOperator kl_operator();                                        // (1/is)(f(s+i) - f(s-i))
DifferenceOperator kl_intertwined_operator();                            // sign-resolved partner of 2/x
DifferenceOperator wimp_operator(double rho);                            // intertwines 1/x
DifferenceOperator vilenkin_operator(double alpha, double phi);
DifferenceOperator mp_operator(double a, double phi);                    // L P_n = n sin(phi) P_n
DifferenceOperator hahn_operator(cplx a, cplx b);
DifferenceOperator dual_hahn_operator(cplx a, cplx b, cplx c);
DifferenceOperator wilson_operator(cplx a, cplx b, cplx c, cplx d);
DifferenceOperator sec6_operator(double tau, double phi);

} // namespace imstrip

#endif
