#ifndef IMSTRIP_EXTENSIONS_HPP
#define IMSTRIP_EXTENSIONS_HPP

#include <utility>
#include <vector>

#include "imstrip/transforms.hpp"

namespace imstrip {

struct ExtensionParams {
    double tau = 0;
    double sigma = 0;
    double phi = 1; // strictly inside (0, pi)

    ExtensionParams(double tau_, double sigma_, double phi_);
};

// Delta_{sigma+shift}(x) = (1+x e^{i phi})^{-1/2-i tau-(sigma+shift)} (1+x e^{-i phi})^{-1/2-i tau+(sigma+shift)},
// branch fixed by Delta(0) = 1 and tracked continuously along R.
cplx delta_eval(const ExtensionParams& p, double sigma_shift, double x);
cplx delta_derivative(const ExtensionParams& p, double sigma_shift, double x);

// e^{i theta} = (1 + e^{i phi} x) / (1 + e^{-i phi} x); monotone, theta(0) = 0.
double theta_substitution(double phi, double x);
double theta_derivative(double phi, double x);

// D f = i (x^2 + 2 cos(phi) x + 1) f'(x) + i (1 + 2 i tau)(x + cos(phi)) f(x).
// Derivative by Richardson-extrapolated central differences; StepError when the
// extrapolation is unstable.
cplx d_operator_apply(const ExtensionParams& p, const std::function<cplx(double)>& f, double x);
// Closed-form derivative route for the Delta family. D Delta_s = 2 sin(phi) s Delta_s.
cplx d_operator_apply_delta(const ExtensionParams& p, double sigma_shift, double x);

// Psi^(n) pair: both components are
//   B(1/2+is, 1/2+2 i tau - is) * 2F1[1/2+is, 1/2-sigma+i tau-n; 1+2 i tau; z]
// continued from z=0 along z = 1-e^{-2 i theta}, theta in [0, phi]   (component 1)
// and along z = 1-e^{+2 i theta}, theta in [0, pi-phi]              (component 2).
std::pair<cplx, cplx> psi_eval(const ExtensionParams& p, int n, cplx s);

// max over samples and both components of
// |(L Psi_k^(n))(s) - 2 sin(phi)(sigma+n) Psi_k^(n)(s)|, normalized by scale.
double sec6_eigen_defect(const ExtensionParams& p, int n, const std::vector<cplx>& samples);

// Diagnostic: residues of Psi^(n) near s = i/2 and s = -i/2 + 2 tau by
// small-circle contour quadrature, with the ratio compared against -e^{2 pi (tau + i sigma)}.
struct ResidueReport {
    cplx res1_f1, res1_f2; // at s = i/2 (expected equal)
    cplx res2_f1, res2_f2; // at s = -i/2 + 2 tau
    cplx ratio;            // res2_f1 / res2_f2
    cplx reference;        // -e^{2 pi (tau + i sigma)}
};
ResidueReport psi_residue_report(const ExtensionParams& p, int n);

} // namespace imstrip

#endif
