#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace helmdisp::quad {

/// Gauss-Legendre nodes and weights on [-1,1].
struct GaussRule {
    Eigen::ArrayXd nodes;
    Eigen::ArrayXd weights;
};

/// Cached rule of order n (n <= 64).
const GaussRule& gauss_legendre(int n);

struct Options {
    double abs_tol = 1e-11;
    double rel_tol = 1e-11;
    int max_intervals = 200000;
    int init_panels = 8;                 // uniform seed panels between breakpoints
    std::vector<double> breakpoints;     // interior points the partition must hit
    int order = 15;                      // Gauss order per panel
};

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
    int intervals = 0;
};

/// Globally adaptive Gauss quadrature of f on [a,b].
Result integrate_ex(const std::function<double(double)>& f, double a, double b,
                    const Options& opt = {});

/// As integrate_ex, but throws std::runtime_error when the interval budget
/// runs out before the tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opt = {});

struct ResultC {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;
    bool converged = true;
    int intervals = 0;
};

ResultC integrate_c_ex(const std::function<std::complex<double>(double)>& f,
                       double a, double b, const Options& opt = {});

std::complex<double> integrate_c(const std::function<std::complex<double>(double)>& f,
                                 double a, double b, const Options& opt = {});

/// \int_a^b |x|^{2b} g(x) dx with the |x|^{2b} endpoint kink at 0 removed by
/// the substitution x = t^gamma on the sides touching zero.
double integrate_abs_moment(const std::function<double(double)>& g, double two_b,
                            double a, double b, const Options& opt = {});

}  // namespace helmdisp::quad
