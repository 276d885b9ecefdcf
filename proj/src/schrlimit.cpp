#include "helmdisp/schrlimit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "helmdisp/quadrature.hpp"
#include "helmdisp/specfun.hpp"

namespace helmdisp::schrlimit {

namespace {

constexpr double kPi = M_PI;

}  // namespace

double coeff_a(long long q, double b) {
    if (q < 1) throw std::invalid_argument("coeff_a: q must be >= 1");
    if (q % 2 == 1) return 1.0;
    if (q % 4 == 2) return 2.0 - std::pow(2.0, 2.0 + 2.0 * b);
    return std::pow(2.0, 2.0 + 2.0 * b);
}

double coeff_alpha(long long r, double b) {
    if (r == 0)
        throw std::invalid_argument("coeff_alpha: r = 0 (diagonal pairs are excluded)");
    long long a = std::llabs(r);
    if (a % 2 == 1) {
        double s = 0.0;
        for (long long d = 1; d * d <= a; ++d) {
            if (a % d != 0) continue;
            s += std::pow(static_cast<double>(d), -1.0 - 2.0 * b);
            long long e = a / d;
            if (e != d) s += std::pow(static_cast<double>(e), -1.0 - 2.0 * b);
        }
        return 2.0 * s;
    }
    if (a % 4 != 0) return 0.0;
    long long a4 = a / 4;
    double s = 0.0;
    for (long long d = 1; d * d <= a4; ++d) {
        if (a4 % d != 0) continue;
        s += std::pow(static_cast<double>(d), -1.0 - 2.0 * b);
        long long e = a4 / d;
        if (e != d) s += std::pow(static_cast<double>(e), -1.0 - 2.0 * b);
    }
    return std::pow(2.0, -2.0 * b) * s;
}

double alpha_bruteforce(long long r, double b, long long N) {
    if (N < std::llabs(r)) throw std::invalid_argument("alpha_bruteforce: N < |r|");
    double s = 0.0;
    for (long long n = -N; n <= N; ++n)
        for (long long m = -N; m <= N; ++m) {
            if (n == m) continue;
            if (n * n - m * m != r) continue;
            s += std::pow(static_cast<double>(std::llabs(n - m)), -1.0 - 2.0 * b);
        }
    return s;
}

periodic::AtomicMeasure RationalAtomSet::to_measure(const std::string& label) const {
    periodic::AtomicMeasure out;
    out.label = label;
    for (const auto& a : atoms)
        out.atoms.push_back({static_cast<double>(a.p) / a.q, a.weight});
    return out;
}

RationalAtomSet hbper_time_atoms(double b, int q_max, double t_lo, double t_hi) {
    if (q_max < 1) throw std::invalid_argument("hbper_time_atoms: q_max >= 1 required");
    if (!(t_lo < t_hi)) throw std::invalid_argument("hbper_time_atoms: empty window");
    const double om = specfun::omega(b);
    const double z = specfun::zeta(2.0 + 2.0 * b);

    // weights depend on q only
    std::vector<double> wq(q_max + 1, 0.0);
    for (int q = 1; q <= q_max; ++q)
        wq[q] = -om * z * coeff_a(q, b) / std::pow(static_cast<double>(q), 2.0 + 2.0 * b);

    // Farey fractions of order q_max on [0, 1) by the Stern-Brocot neighbor
    // recurrence, then shifted across the integers covering the window.
    std::vector<std::pair<long long, long long>> base;  // (p, q), 0 <= p/q < 1
    {
        long long a = 0, b2 = 1, c = 1, d = q_max;
        base.emplace_back(a, b2);
        while (c <= q_max) {
            if (c == 1 && d == 1) break;  // reached 1/1, exclusive
            base.emplace_back(c, d);
            long long kk = (q_max + b2) / d;
            long long c2 = kk * c - a, d2 = kk * d - b2;
            a = c;
            b2 = d;
            c = c2;
            d = d2;
        }
    }

    RationalAtomSet set;
    set.t_lo = t_lo;
    set.t_hi = t_hi;
    set.q_max = q_max;
    const long long base_lo = static_cast<long long>(std::floor(t_lo));
    const long long base_hi = static_cast<long long>(std::ceil(t_hi));
    for (long long off = base_lo; off < base_hi; ++off) {
        for (const auto& [p, q] : base) {
            long long ps = p + off * q;
            double t = static_cast<double>(ps) / q;
            if (t < t_lo || t >= t_hi) continue;
            set.atoms.push_back({ps, q, wq[q]});
        }
    }
    std::sort(set.atoms.begin(), set.atoms.end(), [](const RationalAtom& x, const RationalAtom& y) {
        return static_cast<double>(x.p) * y.q < static_cast<double>(y.p) * x.q;
    });
    return set;
}

periodic::AtomicMeasure hbper_freq_atoms(double b, int r_max) {
    if (r_max < 1) throw std::invalid_argument("hbper_freq_atoms: r_max >= 1 required");
    const double om = specfun::omega(b);
    periodic::AtomicMeasure out;
    out.label = "hbper_hat";
    for (int r = -r_max; r <= r_max; ++r) {
        if (r == 0) continue;
        double a = coeff_alpha(r, b);
        if (a == 0.0) continue;
        out.atoms.push_back({0.5 * r, -2.0 * om * a});
    }
    std::sort(out.atoms.begin(), out.atoms.end(),
              [](const auto& x, const auto& y) { return x.loc < y.loc; });
    return out;
}

periodic::AtomicMeasure rescaled_Rk_atoms(double b, double k, double eps_exp,
                                          std::size_t pair_budget) {
    if (!(k >= 10.0)) throw std::invalid_argument("rescaled_Rk_atoms: k >= 10 required");
    if (!(eps_exp > 0.0 && eps_exp < 0.5))
        throw std::invalid_argument("rescaled_Rk_atoms: 0 < eps_exp < 1/2 required");
    const long long M = static_cast<long long>(std::floor(std::pow(k, 0.5 - eps_exp)));
    const std::size_t npts = static_cast<std::size_t>(2 * M + 1);
    if (npts * npts > pair_budget)
        throw std::runtime_error("rescaled_Rk_atoms: pair count exceeds budget");

    const double om = specfun::omega(b);
    std::vector<periodic::AtomicMeasure::Atom> raw;
    raw.reserve(npts * npts);
    for (long long n = -M; n <= M; ++n) {
        double rn = std::sqrt(k * k - static_cast<double>(n) * n);
        for (long long m = -M; m <= M; ++m) {
            if (n == m) continue;
            double rm = std::sqrt(k * k - static_cast<double>(m) * m);
            // k (rn - rm), written to avoid the large-k cancellation
            double loc = k * static_cast<double>(m * m - n * n) / (rn + rm);
            double w = -2.0 * om /
                       std::pow(static_cast<double>(std::llabs(n - m)), 1.0 + 2.0 * b);
            raw.push_back({loc, w});
        }
    }
    std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.loc < y.loc; });
    periodic::AtomicMeasure out;
    out.label = "rescaled_rk";
    const double tol = 1e-9 * k;
    for (std::size_t i = 0; i < raw.size();) {
        double loc = raw[i].loc;
        double w = raw[i].w;
        std::size_t j = i + 1;
        while (j < raw.size() && raw[j].loc - loc <= tol) {
            w += raw[j].w;
            ++j;
        }
        out.atoms.push_back({loc, w});
        i = j;
    }
    return out;
}

double sobolev_distance(const periodic::AtomicMeasure& mu, const periodic::AtomicMeasure& nu,
                        const SobolevParams& params) {
    if (!(params.s < -0.5))
        throw std::invalid_argument("sobolev_distance: requires s < -1/2");
    const double s = params.s;

    std::vector<periodic::AtomicMeasure::Atom> atoms;
    atoms.reserve(mu.atoms.size() + nu.atoms.size());
    for (const auto& a : mu.atoms) atoms.push_back(a);
    for (const auto& a : nu.atoms) atoms.push_back({a.loc, -a.w});
    if (atoms.empty()) return 0.0;
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& x, const auto& y) { return x.loc < y.loc; });

    const std::size_t n = atoms.size();
    double mass = 0.0;
    for (const auto& a : atoms) mass += std::abs(a.w);
    if (mass == 0.0) return 0.0;

    // prefix sums: A[j] = sum_{i<=j} w_i e^{-2pi (l_j - l_i)}, B[j] symmetric
    std::vector<double> A(n), B(n);
    A[0] = atoms[0].w;
    for (std::size_t j = 1; j < n; ++j)
        A[j] = A[j - 1] * std::exp(-2.0 * kPi * (atoms[j].loc - atoms[j - 1].loc)) + atoms[j].w;
    B[n - 1] = atoms[n - 1].w;
    for (std::size_t j = n - 1; j-- > 0;)
        B[j] = B[j + 1] * std::exp(-2.0 * kPi * (atoms[j + 1].loc - atoms[j].loc)) + atoms[j].w;

    // G on [l_j, l_{j+1}]: A[j] e^{-2pi (tau-l_j)} + B[j+1] e^{-2pi (l_{j+1}-tau)}
    // tail window where mass^2 e^{-4 pi T} integrated weight drops below tol
    const double T = std::max(1.0, std::log(mass * mass / params.tail_tol + 1.0) / (4.0 * kPi));

    quad::Options opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-16;
    opt.init_panels = 8;
    opt.max_intervals = 4000;

    double acc = 0.0;
    auto weight = [s](double tau) { return std::pow(1.0 + tau * tau, s); };
    // interior intervals
    for (std::size_t j = 0; j + 1 < n; ++j) {
        double lo = atoms[j].loc, hi = atoms[j + 1].loc;
        if (!(hi > lo)) continue;
        double Aj = A[j], Bj = B[j + 1];
        acc += quad::integrate(
            [&](double tau) {
                double G = Aj * std::exp(-2.0 * kPi * (tau - lo)) +
                           Bj * std::exp(-2.0 * kPi * (hi - tau));
                return G * G * weight(tau);
            },
            lo, hi, opt);
    }
    // outer tails: G = B[0] e^{-2pi (l_0 - tau)} on the left, A[n-1] mirrored
    {
        double l0 = atoms[0].loc, ln = atoms[n - 1].loc;
        double B0 = B[0], An = A[n - 1];
        acc += quad::integrate(
            [&](double tau) {
                double G = B0 * std::exp(-2.0 * kPi * (l0 - tau));
                return G * G * weight(tau);
            },
            l0 - T, l0, opt);
        acc += quad::integrate(
            [&](double tau) {
                double G = An * std::exp(-2.0 * kPi * (tau - ln));
                return G * G * weight(tau);
            },
            ln, ln + T, opt);
    }
    return std::sqrt(acc);
}

double pair_with_gaussian(const periodic::AtomicMeasure& mu, double center, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("pair_with_gaussian: width > 0 required");
    double s = 0.0;
    for (const auto& a : mu.atoms) {
        double z = (a.loc - center) / width;
        s += a.w * std::exp(-kPi * z * z);
    }
    return s;
}

}  // namespace helmdisp::schrlimit
