#pragma once

namespace helmdisp::specfun {

/// Gamma(x) for real x away from the poles at 0, -1, -2, ...
/// Relative error below 1e-12 on |x| <= 30. Throws std::domain_error at a pole.
double gamma_real(double x);

/// log |Gamma(x)|, same pole handling.
double log_gamma_abs(double x);

/// Riemann zeta on s > 1. Throws std::domain_error for s <= 1.
double zeta(double s);

/// omega_b = 2 (2 pi)^{-2b} Gamma(2b) / (Gamma(b) |Gamma(-b)|), 0 < b < 1.
/// Evaluated in log space.
double omega(double b);

}  // namespace helmdisp::specfun
