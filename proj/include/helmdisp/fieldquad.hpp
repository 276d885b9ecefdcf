#pragma once

#include <complex>

#include <Eigen/Dense>

#include "helmdisp/scatdata.hpp"

namespace helmdisp::fieldquad {

/// u(x,y) = int_{-k}^{k} F(xi) e^{2 pi i (x xi + y sqrt(k^2-xi^2))} dxi,
/// integrated as xi = k sin(theta) so the endpoint square root is smooth.
/// Absolute error target 1e-8 (1 + int|F|); throws std::runtime_error when the
/// node budget is exceeded.
std::complex<double> eval_field(const scatdata::ScatteringDensity& F, double x, double y);

/// One field evaluation with its location; value is always finite.
struct FieldSample {
    double x = 0.0;
    double y = 0.0;
    std::complex<double> value{0.0, 0.0};
};

FieldSample sample_field(const scatdata::ScatteringDensity& F, double x, double y);

/// Leading stationary-phase form sqrt(k/y) F(kx/y) e^{i(2 pi k y - pi/4)}.
/// Requires y > 0 and |x| <= y/10.
std::complex<double> far_field(const scatdata::ScatteringDensity& F, double x, double y);

/// Sampled complex function on a strictly increasing node set.
struct GridFunction {
    Eigen::ArrayXd nodes;
    Eigen::ArrayXcd values;

    void validate() const;
    bool is_uniform(double tol = 1e-9) const;
    double spacing() const;  // first cell width
    std::complex<double> interp(double x) const;  // piecewise linear, clamped tails
};

struct FracSingularResult {
    double value = 0.0;
    bool discontinuity_warning = false;
};

/// D^b_sing f(xi) = ( int |f(xi)-f(t)|^2 / |xi-t|^{1+2b} dt )^{1/2} for the
/// piecewise-linear extension of f, constant beyond the node range (tails in
/// closed form). The |t-xi| < delta neighbourhood uses a local linear model.
FracSingularResult frac_deriv_singular(const GridFunction& f, double b, double xi);

struct FracFourierResult {
    GridFunction grid;
    double aliasing_fraction = 0.0;
    bool aliasing_warning = false;
};

/// D^b f = F^{-1}( |xi|^b F f ) on a uniform grid (frequencies in cycles).
/// Endpoints are tapered when the periodic wrap of the samples is discontinuous.
FracFourierResult frac_deriv_fourier(const GridFunction& f, double b);

/// m_y(xi) = e^{2 pi i y sqrt(k^2-xi^2)} for |xi| <= k and 1 outside (|xi| <= 4k).
std::complex<double> multiplier_value(double y, double k, double xi);

/// Singular-integral fractional derivative of m_y at xi in (-k, k).
double multiplier_frac_deriv(double y, double k, double b, double xi);

/// max over the grid of D^b m_y(xi) divided by
/// (k|y|)^b (k^2-xi^2)^{-b/2} + k (1 + |xi|^b |y|^{b/2}) / sqrt(k^2-xi^2).
double multiplier_bound_ratio(double y, double k, double b, const Eigen::ArrayXd& grid);

}  // namespace helmdisp::fieldquad
