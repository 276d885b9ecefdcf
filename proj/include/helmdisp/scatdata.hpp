#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace helmdisp::scatdata {

enum class NormMode { UnitL2, UnitIntegral };

/// Smooth non-negative bump, compactly supported on [-support_radius, support_radius].
struct BumpProfile {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    double support_radius = 0.5;
    NormMode mode = NormMode::UnitL2;
    double c_phi = 0.0;       // ||phi'||_2^2
    double integral = 0.0;    // int phi
    double l2_norm_sq = 0.0;  // int phi^2
};

/// The standard bump C exp(-1/(1 - (x/r)^2)) on (-r, r), r = 1/2, with C fixed
/// by the requested normalization. c_phi is precomputed by adaptive quadrature.
BumpProfile make_standard_bump(NormMode mode);

/// Square-integrable complex density on (-k, k), zero outside, with a declared
/// support margin: F == 0 on (-k, -k+margin) and (k-margin, k).
struct ScatteringDensity {
    double k = 1.0;
    std::function<std::complex<double>(double)> value;
    double support_margin = 0.0;
    std::function<std::complex<double>(double)> deriv;  // may be empty
    std::vector<double> breakpoints;                    // quadrature seeds
    double abs_mass = 0.0;                              // int |F|

    bool has_deriv() const { return static_cast<bool>(deriv); }
    std::complex<double> operator()(double xi) const;
};

/// F == 1 on (-a, a). No derivative evaluator (edges are jumps).
ScatteringDensity box_density(double k, double a);

/// F(xi) = 1 - (xi/a)^2 on (-a, a).
ScatteringDensity parabola_density(double k, double a);

/// F(xi) = amp * (1 - (xi/a)^2) e^{2 pi i beta xi} on (-a, a); beta != 0 makes
/// the h1 cross coefficient nonzero.
ScatteringDensity chirped_parabola_density(double k, double a, double beta, double amp = 1.0);

/// C-infinity bump exp(-1/(1-(xi/a)^2)) on (-a, a), scaled by amp.
ScatteringDensity bump_density(double k, double a, double amp = 1.0);

/// Truncated Dirac-comb scattering data: coefficients F(n) at integers |n| < k.
struct AtomicSpectrum {
    double k = 1.0;
    std::map<int, std::complex<double>> coeffs;

    AtomicSpectrum() = default;
    explicit AtomicSpectrum(double k_) : k(k_) {}
    void set(int n, std::complex<double> w);  // enforces |n| < k
};

/// Full comb F(n) = 1 for all integers |n| < k.
AtomicSpectrum unit_comb(double k);

/// F_eps(xi) = eps^{-1/2} sum_n F(n) phi((xi - n)/eps).
/// Requires 0 < eps <= 1 and scaled bumps pairwise disjoint.
ScatteringDensity mollify(const AtomicSpectrum& atoms, const BumpProfile& phi, double eps);

struct RegularityReport {
    double m_spatial = 0.0;   // int |x|^{2b} |u0|^2 dx (windowed)
    double m_spectral = 0.0;  // int |xi|^{2b} |F|^2 / (k^2 - xi^2) dxi
    double m_singular = 0.0;  // int |xi|^{2b} |F|^2 / (k^2 - xi^2)^b dxi
    double spatial_tail = 0.0;  // truncation tail estimate of m_spatial
    double spatial_window = 0.0;
    bool diverged = false;  // spectral quadrature failed to converge
};

RegularityReport regularity_report(const ScatteringDensity& F, double b);

}  // namespace helmdisp::scatdata
