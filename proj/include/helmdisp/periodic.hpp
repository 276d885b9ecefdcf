#pragma once

#include <string>
#include <vector>

#include "helmdisp/scatdata.hpp"

namespace helmdisp::periodic {

/// b = 1 decomposition of the mollified-comb dispersion.
struct PeriodicDecomposition {
    double singular_value = 0.0;  // c_phi/(4 pi^2 eps^2) sum |F(n)|^2
    double stable_value = 0.0;    // y^2 sum |F(n)|^2 n^2/(k^2-n^2)
    double total = 0.0;           // h1[F_eps](y)
    double eps = 0.0;
    double b = 1.0;
};

/// Requires a UnitL2 bump. total - singular_value -> stable_value as eps -> 0.
PeriodicDecomposition h1_periodic_decompose(const scatdata::AtomicSpectrum& atoms,
                                            const scatdata::BumpProfile& phi, double eps,
                                            double y);

/// Diagonal part of the fractional dispersion of the mollified comb
/// (UnitIntegral bump):
///   eps^{-2b} sum |F(n)|^2 int |x|^{2b} | int phi(eta)
///     e^{2 pi i (x eta + y sqrt(k^2-(n+eps eta)^2))} deta |^2 dx.
double singular_part(const scatdata::AtomicSpectrum& atoms, const scatdata::BumpProfile& phi,
                     double eps, double b, double y);

/// Off-diagonal part at scale eps (UnitIntegral bump, eps < 1/4):
///   -(2 omega_b / eps^2) sum_{n != m} F(n) conj(F(m))
///     iint phi((xi-n)/eps) phi((eta-m)/eps)
///          e^{2 pi i y (sqrt(k^2-xi^2)-sqrt(k^2-eta^2))} / |xi-eta|^{1+2b}.
/// Real part of the symmetrized sum.
double regular_part_eps(const scatdata::AtomicSpectrum& atoms, const scatdata::BumpProfile& phi,
                        double eps, double b, double y);

/// eps -> 0 limit:
///   -2 omega_b sum_{n != m} F(n) conj(F(m)) / |n-m|^{1+2b}
///     e^{2 pi i (sqrt(k^2-n^2)-sqrt(k^2-m^2)) y}.
double regular_limit(const scatdata::AtomicSpectrum& atoms, double b, double y);

/// Finite list of weighted Dirac atoms, sorted by location.
struct AtomicMeasure {
    struct Atom {
        double loc;
        double w;
    };
    std::vector<Atom> atoms;
    std::string label;
    // imaginary mass discarded when realifying a symmetrized complex sum;
    // nonzero only for non-Hermitian coefficient sets
    double imag_residual = 0.0;

    double total_mass() const;  // sum |w|
};

/// Atoms of the Fourier transform of the regular limit: locations
/// sqrt(k^2-n^2)-sqrt(k^2-m^2), weights -2 omega_b Re[F(n) conj(F(m))]/|n-m|^{1+2b},
/// coincident locations merged (tolerance 1e-12).
AtomicMeasure rb_hat_atoms(const scatdata::AtomicSpectrum& atoms, double b);

/// 2^{1+2b} * 2 omega_b sum_{n != m} |F(n) F(m)| / |n-m|^{1+2b}.
double l1_bound(const scatdata::AtomicSpectrum& atoms, double b);

}  // namespace helmdisp::periodic
