#ifndef IMSTRIP_POLYNOMIALS_HPP
#define IMSTRIP_POLYNOMIALS_HPP

#include <vector>

#include "imstrip/weights.hpp"

namespace imstrip {

// The four neo-classical families. Dual Hahn and Wilson are even (polynomials
// in s^2).
struct PolynomialFamily {
    enum class Kind { MeixnerPollaczek, ContinuousHahn, ContinuousDualHahn, Wilson };
    Kind kind;
    double mp_a = 0, mp_phi = 0;
    cplx p1, p2, p3, p4; // family parameters as applicable

    static PolynomialFamily meixner_pollaczek(double a, double phi);
    static PolynomialFamily continuous_hahn(cplx a, cplx b);
    static PolynomialFamily continuous_dual_hahn(cplx a, cplx b, cplx c);
    static PolynomialFamily wilson(cplx a, cplx b, cplx c, cplx d);

    bool even() const {
        return kind == Kind::ContinuousDualHahn || kind == Kind::Wilson;
    }
    WeightSpec weight_spec() const;
    DifferenceOperator op() const;
    // Eigenvalue law: MP n sin(phi); Hahn n(n+a+conj a+b+conj b-1); dual Hahn n;
    // Wilson n(n+a+b+c+d-1).
    cplx eigenvalue(int n) const;
};

// Terminating hypergeometric evaluation; exact polynomial value.
cplx poly_eval(const PolynomialFamily& fam, int n, cplx s);

// Closed form for MP: Gamma(n+2a) / ((2 sin phi)^{2a} n!). Other families by
// Gram-diagonal quadrature.
double norm_squared(const PolynomialFamily& fam, int n,
                    const QuadratureConfig& cfg = QuadratureConfig());

// G[m][n] = <p_m, p_n>_w, Hermitian, N <= 12.
std::vector<std::vector<cplx>> gram_matrix(const PolynomialFamily& fam, int N,
                                           const QuadratureConfig& cfg = QuadratureConfig());

// max_j |L p_n(s_j) - lambda_n p_n(s_j)| / max(1, max_j |lambda_n p_n(s_j)|)
double eigen_defect(const PolynomialFamily& fam, int n, const std::vector<cplx>& sample_points);
std::vector<cplx> default_eigen_samples(const PolynomialFamily& fam);

} // namespace imstrip

#endif
