#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "helmdisp/periodic.hpp"

namespace helmdisp::schrlimit {

/// a_b(q): 1 for odd q, 2 - 2^{2+2b} for q = 2 mod 4, 2^{2+2b} for 4 | q.
double coeff_a(long long q, double b);

/// alpha_b(r) = sum over integer pairs n != m with n^2 - m^2 = r of |n-m|^{-1-2b},
/// in closed divisor-sum form. r = 0 is rejected.
double coeff_alpha(long long r, double b);

/// Brute-force oracle for coeff_alpha over |n|, |m| <= N.
double alpha_bruteforce(long long r, double b, long long N);

/// Reduced rationals p/q in a window with weights
/// -omega_b zeta(2+2b) a_b(q) / q^{2+2b}: the q_max truncation of the periodic
/// regular limit, atoms kept in the t variable.
struct RationalAtom {
    long long p;
    long long q;
    double weight;
};

struct RationalAtomSet {
    std::vector<RationalAtom> atoms;  // sorted by p/q
    double t_lo = 0.0, t_hi = 1.0;
    int q_max = 1;

    periodic::AtomicMeasure to_measure(const std::string& label) const;
};

/// Farey enumeration (Stern-Brocot neighbor recurrence) of [t_lo, t_hi).
RationalAtomSet hbper_time_atoms(double b, int q_max, double t_lo, double t_hi);

/// Frequency-side atoms -2 omega_b alpha_b(r) at tau = r/2 for 0 < |r| <= r_max
/// (r with alpha_b(r) = 0 omitted).
periodic::AtomicMeasure hbper_freq_atoms(double b, int r_max);

/// Rescaled regular-limit atoms at k(sqrt(k^2-n^2)-sqrt(k^2-m^2)) with weights
/// -2 omega_b/|n-m|^{1+2b}, for |n|,|m| <= k^{1/2-eps_exp}, merged at 1e-9*k.
periodic::AtomicMeasure rescaled_Rk_atoms(double b, double k, double eps_exp,
                                          std::size_t pair_budget = 50000000);

struct SobolevParams {
    double s = -0.75;        // must be < -1/2
    double tail_tol = 1e-8;  // analytic tail cutoff for the quadrature window
};

/// || ((mu - nu) * e^{-2 pi |tau|}) (1+tau^2)^{s/2} ||_{L^2}: the weighted
/// Sobolev metric on finite atomic measures. Kernel kinks are integration
/// breakpoints; the inter-atom kernel sums use stable prefix recurrences.
double sobolev_distance(const periodic::AtomicMeasure& mu, const periodic::AtomicMeasure& nu,
                        const SobolevParams& params);

/// sum_i w_i exp(-pi ((loc_i - center)/width)^2).
double pair_with_gaussian(const periodic::AtomicMeasure& mu, double center, double width);

}  // namespace helmdisp::schrlimit
