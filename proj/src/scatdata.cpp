#include "helmdisp/scatdata.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "helmdisp/fieldquad.hpp"
#include "helmdisp/quadrature.hpp"

namespace helmdisp::scatdata {

namespace {

double bump_base(double u) {
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

double bump_base_deriv(double u) {
    if (std::abs(u) >= 1.0) return 0.0;
    double d = 1.0 - u * u;
    return bump_base(u) * (-2.0 * u / (d * d));
}

}  // namespace

std::complex<double> ScatteringDensity::operator()(double xi) const { return value(xi); }

BumpProfile make_standard_bump(NormMode mode) {
    const double r = 0.5;
    quad::Options opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-13;
    const double g1 = quad::integrate([](double u) { return bump_base(u); }, -1.0, 1.0, opt);
    const double g2 = quad::integrate([](double u) { return bump_base(u) * bump_base(u); },
                                      -1.0, 1.0, opt);
    const double g3 = quad::integrate(
        [](double u) { return bump_base_deriv(u) * bump_base_deriv(u); }, -1.0, 1.0, opt);

    // phi(x) = C g(x/r):  int phi = C r g1, int phi^2 = C^2 r g2, int phi'^2 = C^2 g3 / r
    const double C = (mode == NormMode::UnitIntegral) ? 1.0 / (r * g1) : 1.0 / std::sqrt(r * g2);

    BumpProfile phi;
    phi.support_radius = r;
    phi.mode = mode;
    phi.value = [C, r](double x) { return C * bump_base(x / r); };
    phi.deriv = [C, r](double x) { return (C / r) * bump_base_deriv(x / r); };
    phi.integral = C * r * g1;
    phi.l2_norm_sq = C * C * r * g2;
    phi.c_phi = C * C * g3 / r;
    return phi;
}

ScatteringDensity box_density(double k, double a) {
    if (!(k > 0.0) || !(a > 0.0) || a >= k)
        throw std::invalid_argument("box_density: need 0 < a < k");
    ScatteringDensity F;
    F.k = k;
    F.support_margin = k - a;
    F.value = [a](double xi) {
        return std::complex<double>(std::abs(xi) < a ? 1.0 : 0.0, 0.0);
    };
    F.breakpoints = {-a, a};
    F.abs_mass = 2.0 * a;
    return F;
}

ScatteringDensity parabola_density(double k, double a) {
    if (!(k > 0.0) || !(a > 0.0) || a >= k)
        throw std::invalid_argument("parabola_density: need 0 < a < k");
    ScatteringDensity F;
    F.k = k;
    F.support_margin = k - a;
    F.value = [a](double xi) -> std::complex<double> {
        if (std::abs(xi) >= a) return {0.0, 0.0};
        return {1.0 - (xi / a) * (xi / a), 0.0};
    };
    F.deriv = [a](double xi) -> std::complex<double> {
        if (std::abs(xi) >= a) return {0.0, 0.0};
        return {-2.0 * xi / (a * a), 0.0};
    };
    F.breakpoints = {-a, a};
    F.abs_mass = 4.0 * a / 3.0;
    return F;
}

ScatteringDensity chirped_parabola_density(double k, double a, double beta, double amp) {
    if (!(k > 0.0) || !(a > 0.0) || a >= k)
        throw std::invalid_argument("parabola_density: need 0 < a < k");
    ScatteringDensity F;
    F.k = k;
    F.support_margin = k - a;
    const std::complex<double> i2pib(0.0, 2.0 * M_PI * beta);
    // asymmetric envelope: with an even one the linear h1 coefficient would
    // integrate to zero against the odd spectral weight
    F.value = [a, beta, amp](double xi) -> std::complex<double> {
        if (std::abs(xi) >= a) return {0.0, 0.0};
        double u = xi / a;
        double env = amp * (1.0 - u * u) * (1.0 + 0.5 * u);
        return env * std::exp(std::complex<double>(0.0, 2.0 * M_PI * beta * xi));
    };
    F.deriv = [a, beta, amp, i2pib](double xi) -> std::complex<double> {
        if (std::abs(xi) >= a) return {0.0, 0.0};
        double u = xi / a;
        double env = amp * (1.0 - u * u) * (1.0 + 0.5 * u);
        double denv = amp * (-2.0 * u * (1.0 + 0.5 * u) + 0.5 * (1.0 - u * u)) / a;
        auto ph = std::exp(std::complex<double>(0.0, 2.0 * M_PI * beta * xi));
        return (denv + env * i2pib) * ph;
    };
    F.breakpoints = {-a, a};
    F.abs_mass = std::abs(amp) * 4.0 * a / 3.0;
    return F;
}

ScatteringDensity bump_density(double k, double a, double amp) {
    if (!(k > 0.0) || !(a > 0.0) || a >= k)
        throw std::invalid_argument("bump_density: need 0 < a < k");
    ScatteringDensity F;
    F.k = k;
    F.support_margin = k - a;
    F.value = [a, amp](double xi) {
        return std::complex<double>(amp * bump_base(xi / a), 0.0);
    };
    F.deriv = [a, amp](double xi) {
        return std::complex<double>(amp / a * bump_base_deriv(xi / a), 0.0);
    };
    F.breakpoints = {-a, a};
    quad::Options opt;
    opt.rel_tol = 1e-10;
    F.abs_mass = std::abs(amp) * a *
                 quad::integrate([](double u) { return bump_base(u); }, -1.0, 1.0, opt);
    return F;
}

void AtomicSpectrum::set(int n, std::complex<double> w) {
    if (!(std::abs(n) < k))
        throw std::invalid_argument("AtomicSpectrum: atom index must satisfy |n| < k");
    coeffs[n] = w;
}

AtomicSpectrum unit_comb(double k) {
    AtomicSpectrum atoms(k);
    int nmax = static_cast<int>(std::ceil(k)) - 1;  // largest integer strictly below k
    if (!(nmax < k)) --nmax;
    for (int n = -nmax; n <= nmax; ++n) atoms.set(n, 1.0);
    return atoms;
}

ScatteringDensity mollify(const AtomicSpectrum& atoms, const BumpProfile& phi, double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("mollify: need 0 < eps <= 1");
    if (atoms.coeffs.empty()) throw std::invalid_argument("mollify: empty atom set");

    std::vector<int> ns;
    for (const auto& [n, w] : atoms.coeffs) ns.push_back(n);
    std::sort(ns.begin(), ns.end());
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < ns.size(); ++i)
        min_gap = std::min(min_gap, static_cast<double>(ns[i + 1] - ns[i]));
    if (ns.size() > 1 && eps * 2.0 * phi.support_radius > min_gap)
        throw std::invalid_argument("mollify: scaled bump supports overlap (eps too large)");

    const double r = phi.support_radius;
    const double scale = 1.0 / std::sqrt(eps);
    auto coeffs = atoms.coeffs;
    auto val = phi.value;
    auto dval = phi.deriv;

    ScatteringDensity F;
    F.k = atoms.k;
    F.value = [coeffs, val, scale, eps](double xi) {
        std::complex<double> acc{0.0, 0.0};
        // bumps are disjoint: only the nearest atom can contribute
        int n0 = static_cast<int>(std::lround(xi));
        for (int n = n0 - 1; n <= n0 + 1; ++n) {
            auto it = coeffs.find(n);
            if (it == coeffs.end()) continue;
            acc += it->second * (scale * val((xi - n) / eps));
        }
        return acc;
    };
    F.deriv = [coeffs, dval, scale, eps](double xi) {
        std::complex<double> acc{0.0, 0.0};
        int n0 = static_cast<int>(std::lround(xi));
        for (int n = n0 - 1; n <= n0 + 1; ++n) {
            auto it = coeffs.find(n);
            if (it == coeffs.end()) continue;
            acc += it->second * (scale / eps * dval((xi - n) / eps));
        }
        return acc;
    };
    double n_abs_max = 0.0;
    double mass = 0.0;
    for (const auto& [n, w] : coeffs) {
        n_abs_max = std::max(n_abs_max, std::abs(static_cast<double>(n)));
        mass += std::abs(w);
        F.breakpoints.push_back(n - eps * r);
        F.breakpoints.push_back(n + eps * r);
    }
    F.support_margin = atoms.k - (n_abs_max + eps * r);
    F.abs_mass = std::sqrt(eps) * mass * phi.integral;
    return F;
}

RegularityReport regularity_report(const ScatteringDensity& F, double b) {
    if (!(b > 0.0 && b < 1.0))
        throw std::invalid_argument("regularity_report: need 0 < b < 1");
    RegularityReport rep;
    const double k = F.k;
    const double edge = k - std::max(F.support_margin, 0.0);

    quad::Options opt;
    opt.rel_tol = 1e-9;
    opt.abs_tol = 1e-13;
    opt.breakpoints = F.breakpoints;
    opt.max_intervals = 40000;

    auto weighted = [&](std::function<double(double)> w) {
        return quad::integrate_ex(
            [&](double xi) {
                double m = std::norm(F.value(xi));
                return m == 0.0 ? 0.0 : m * w(xi);
            },
            -edge, edge, opt);
    };

    auto spectral = weighted([&](double xi) {
        return std::pow(std::abs(xi), 2.0 * b) / (k * k - xi * xi);
    });
    auto singular = weighted([&](double xi) {
        return std::pow(std::abs(xi), 2.0 * b) / std::pow(k * k - xi * xi, b);
    });
    rep.m_spectral = spectral.value;
    rep.m_singular = singular.value;
    // with no margin the (k^2-xi^2)-weighted integrals are improper; a slow
    // (logarithmic) divergence saturates at machine resolution rather than
    // blowing the budget, so the margin itself is part of the check
    rep.diverged =
        !(spectral.converged && singular.converged) || !(F.support_margin > 0.0);

    // spatial moment through the field at y = 0, windowed in octaves
    auto slice = [&](double lo, double hi) {
        quad::Options o;
        o.rel_tol = 1e-8;
        o.abs_tol = 1e-14;
        o.init_panels = std::max<int>(16, static_cast<int>((hi - lo) * (1.2 * k + 2.0)));
        return quad::integrate_abs_moment(
            [&](double x) { return std::norm(fieldquad::eval_field(F, x, 0.0)); }, 2.0 * b,
            lo, hi, o);
    };
    double total = slice(-1.0, 1.0);
    double w = 1.0;
    double last = 0.0, prev = 0.0;
    const double wmax = 128.0;
    while (w < wmax) {
        double seg = slice(w, 2.0 * w) + slice(-2.0 * w, -w);
        prev = last;
        last = seg;
        total += seg;
        w *= 2.0;
        if (total > 0.0 && last < 1e-4 * total && prev > 0.0 && last < prev) break;
    }
    double ratio = (prev > 0.0 && last > 0.0 && last < prev) ? last / prev : 0.5;
    rep.m_spatial = total;
    rep.spatial_tail = (ratio < 1.0 && last > 0.0) ? last * ratio / (1.0 - ratio) : last;
    rep.spatial_window = w;
    return rep;
}

}  // namespace helmdisp::scatdata
