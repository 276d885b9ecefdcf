#pragma once

#include "helmdisp/scatdata.hpp"

namespace helmdisp::dispersion {

/// h1(y) = c0 + c1 y + c2 y^2 with
///   c0 = int |x u(x,0)|^2 dx            (computed as (1/4pi^2) int |F'|^2)
///   c1 = (1/pi) int Im(conj(F') F) xi / sqrt(k^2-xi^2) dxi
///   c2 = int |xi F|^2 / (k^2 - xi^2) dxi
struct DispersionPolynomial {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;
    double eval(double y) const { return c0 + c1 * y + c2 * y * y; }
};

DispersionPolynomial h1_polynomial(const scatdata::ScatteringDensity& F);

/// Windowed direct quadrature of int |x u(x,y)|^2 dx via eval_field.
double h1_direct(const scatdata::ScatteringDensity& F, double y, double window);

/// Full-line int |x u(x,y)|^2 dx on the Nyquist grid of the band-limited field:
/// one FFT of the sampled spectral density, then a trapezoid sum. Suited to
/// slowly decaying fields where an adaptive window is impractical.
double h1_direct_grid(const scatdata::ScatteringDensity& F, double y);

/// Constant in int |x|^{2b} |ǧ(x)|^2 dx = C_b iint |g(xi)-g(eta)|^2/|xi-eta|^{1+2b}.
/// Equals omega(b)/2.
double moment_rep_constant(double b);

/// Slow route: int_{|x|<=window} |x|^{2b} |u(x,y)|^2 dx with an octave-based
/// tail estimate. Throws std::runtime_error when the tail estimate exceeds
/// 1e-3 of the value.
double hb_direct(const scatdata::ScatteringDensity& F, double b, double y, double window);

/// Fast route through the spectral double integral:
///   h_b(y) = C_b [ iint_{(-k,k)^2} |W(xi)-W(eta)|^2/|xi-eta|^{1+2b}
///                  + 2 int |F|^2 ((k-xi)^{-2b}+(k+xi)^{-2b})/(2b) ]
/// with W(xi) = F(xi) e^{2 pi i y sqrt(k^2-xi^2)} and C_b = moment_rep_constant.
double hb_spectral(const scatdata::ScatteringDensity& F, double b, double y);

/// Density of the Fourier transform of h_b away from tau = 0.
double phi_hat(const scatdata::ScatteringDensity& F, double b, double tau);

struct SingularLimitResult {
    double value = 0.0;         // omega_b * int |xi|^{2b}|F|^2/(k^2-xi^2)^b dxi
    double extrapolated = 0.0;  // Richardson limit of |tau|^{1+2b}|Phi(tau)|
    bool unstable = false;
};

/// lim_{tau->0} |tau|^{1+2b} |Phi(tau)|, returned as the closed form with the
/// extrapolated small-tau diagnostic attached.
SingularLimitResult singular_limit(const scatdata::ScatteringDensity& F, double b);

struct UncertaintyResult {
    double product = 0.0;          // |y|^{-2b} h_b(y) h_b(0)
    double predicted_limit = 0.0;  // m_singular * m_spatial
    double deviation = 0.0;        // |product/predicted_limit - 1|
};

UncertaintyResult uncertainty_product(const scatdata::ScatteringDensity& F, double b, double y);

/// (1+|y|^b) ||F||_2^2 + || |x|^b u_0 ||_2^2
///   + k^2 (1+|y|^b) || |xi|^b F / sqrt(k^2-xi^2) ||_2^2
///   + (k|y|)^{2b} int |F|^2 (k^2-xi^2)^{-b}.
/// The last term carries the y^{2b} growth of the dispersion.
double hb_upper_bound_rhs(const scatdata::ScatteringDensity& F, double b, double y);
double hb_upper_bound_rhs(const scatdata::ScatteringDensity& F, double b, double y,
                          const scatdata::RegularityReport& rep);

}  // namespace helmdisp::dispersion
