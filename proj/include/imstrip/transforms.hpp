#ifndef IMSTRIP_TRANSFORMS_HPP
#define IMSTRIP_TRANSFORMS_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "imstrip/weights.hpp"

namespace imstrip {

// Function on (0, inf) with endpoint behavior declared for quadrature windows:
// f = O(x^{power_at_zero}) e^{-exp_rate_zero/x} at 0+, O(x^{-power_at_inf}) e^{-exp_rate_inf x} at inf.
struct HalfLineFunction {
    std::function<cplx(double)> eval;
    double power_at_zero = 0;
    double power_at_inf = 0;
    double exp_rate_zero = 0;
    double exp_rate_inf = 0;

    cplx operator()(double x) const { return eval(x); }
};

// Function on the whole real line (double Mellin input).
struct RealLineFunction {
    std::function<cplx(double)> eval;
    double support_lo = 0, support_hi = 0; // both 0 = unbounded

    cplx operator()(double x) const { return eval(x); }
};

// ---------------------------------------------------------------- Mellin ----
// Mf(s) = int_0^inf f(x) x^{is-1} dx, evaluatable for
// -power_at_inf < Im s < power_at_zero (WindowError outside; boundary included
// only when the corresponding endpoint decay is exponential).
StripFunction mellin_forward(const HalfLineFunction& f, const QuadratureConfig& cfg);
std::function<cplx(double)> mellin_inverse(const StripFunction& g, const QuadratureConfig& cfg,
                                           double s_max = 40);

// ------------------------------------------------- Kontorovich--Lebedev ----
// Kg(s) = int_0^inf K_{is}(x) g(x) dx/x, entire in the order, cached for
// fast evaluation at any complex s with |Im s| <= 1 + margin.
StripFunction kl_forward(const HalfLineFunction& g, const QuadratureConfig& cfg,
                         double s_max_hint = 24);
// K^{-1} f(x) = (2/pi) int_0^inf f(s) K_{is}(x) ds / |Gamma(is)|^2
std::function<cplx(double)> kl_inverse(const StripFunction& f, const QuadratureConfig& cfg,
                                       double s_max = 16);

// ----------------------------------------------------------------- Wimp ----
// Wg(s) = int_0^inf g(x) W_{rho,is}(x) dx/x^2, rho < 1/2.
StripFunction wimp_forward(double rho, const HalfLineFunction& g, const QuadratureConfig& cfg,
                           double s_max_hint = 20);
std::function<cplx(double)> wimp_inverse(double rho, const StripFunction& f,
                                         const QuadratureConfig& cfg, double s_max = 14);

// ------------------------------------------------------------- Vilenkin ----
// Unitary on L^2(R, w ds), w(s) = (1/2pi)|Gamma(alpha/2+is)|^2 e^{pi s}. The
// forward integral carries mu(s) ds = (1/(2 pi Gamma(alpha)))|Gamma(alpha/2+is)|^2 ds,
// the measure the J-composition derivation produces (unitarity probes pin this).
StripFunction vilenkin_forward(double alpha, double phi, const StripFunction& g,
                               const QuadratureConfig& cfg);
StripFunction vilenkin_inverse(double alpha, double phi, const StripFunction& f,
                               const QuadratureConfig& cfg);
double vilenkin_weight(double alpha, double s);
// Alternative route J^{-1} T(r_phi) J for cross-checks, evaluated pointwise.
cplx vilenkin_forward_jtj(double alpha, double phi, const StripFunction& g, double t,
                          const QuadratureConfig& cfg);

// -------------------------------------------------------------- J_alpha ----
// J_alpha f(z) on the upper half-plane; branch of (z/i)^{-alpha/2-is} real on z = ip.
std::function<cplx(cplx)> j_alpha_forward(double alpha, const StripFunction& f,
                                          const QuadratureConfig& cfg);
// Recovers f from the boundary profile p -> F(ip), p > 0.
StripFunction j_alpha_inverse(double alpha, const std::function<cplx(double)>& F_on_ip,
                              const QuadratureConfig& cfg);

// --------------------------------------------------------- double Mellin ----
// g1(s) = int_0^inf f(x) x^{is-1/2} dx,  g2(s) = -i e^{-pi s} int_{-inf}^0 f(x) (-x)^{is-1/2} dx.
// Plancherel: int |f|^2 dx = (1/2pi)( int |g1|^2 ds + int |g2|^2 e^{2 pi s} ds ).
struct DoubleMellinImage {
    StripFunction g1, g2;
};
DoubleMellinImage double_mellin_forward(const RealLineFunction& f, const QuadratureConfig& cfg);
std::function<cplx(double)> double_mellin_inverse(const StripFunction& g1, const StripFunction& g2,
                                                  const QuadratureConfig& cfg, double s_max = 40);

// ------------------------------------------------------- transform pairs ----
// Metadata bundle used by the verification suites and the CLI.
struct TransformPair {
    std::string name;
    std::string source_measure, target_measure;
    std::function<double(double)> source_weight, target_weight;
    std::string intertwine;
    DifferenceOperator target_op;           // image of the source multiplication operator
    std::function<cplx(double)> source_mult;
};
TransformPair kl_pair();
TransformPair wimp_pair(double rho);
TransformPair vilenkin_pair(double alpha, double phi);

// max over sample points of |target_op(forward g)(s) - forward(source_mult * g)(s)|,
// normalized by the max magnitude of the right-hand side.
double kl_intertwining_defect(const HalfLineFunction& g, const std::vector<double>& s_points,
                              const QuadratureConfig& cfg);
double wimp_intertwining_defect(double rho, const HalfLineFunction& g,
                                const std::vector<double>& s_points, const QuadratureConfig& cfg);
double vilenkin_intertwining_defect(double alpha, double phi, const StripFunction& g,
                                    const std::vector<double>& t_points,
                                    const QuadratureConfig& cfg);
// Derivative image: K((d/dx - 1/x) g)(s) vs (1/2)(Kg(s+i) + Kg(s-i)), the
// probe-resolved form of the section-3.4 statement.
double kl_derivative_image_defect(const HalfLineFunction& g, const HalfLineFunction& g_prime,
                                  const std::vector<double>& s_points,
                                  const QuadratureConfig& cfg);

// ------------------------------------------------------------- batteries ----
const std::vector<std::pair<std::string, HalfLineFunction>>& battery_half_line_default();
const std::vector<std::pair<std::string, StripFunction>>& battery_line_default();
const std::vector<std::pair<std::string, RealLineFunction>>& battery_real_line_default();

} // namespace imstrip

#endif
