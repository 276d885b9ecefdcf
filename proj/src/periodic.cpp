#include "helmdisp/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "helmdisp/dispersion.hpp"
#include "helmdisp/quadrature.hpp"
#include "helmdisp/specfun.hpp"

namespace helmdisp::periodic {

namespace {

constexpr double kPi = M_PI;
using Cplx = std::complex<double>;

void require_mode(const scatdata::BumpProfile& phi, scatdata::NormMode mode, const char* op) {
    if (phi.mode != mode) {
        throw std::invalid_argument(std::string(op) + ": bump must be normalized " +
                                    (mode == scatdata::NormMode::UnitL2 ? "UnitL2"
                                                                        : "UnitIntegral"));
    }
}

}  // namespace

PeriodicDecomposition h1_periodic_decompose(const scatdata::AtomicSpectrum& atoms,
                                            const scatdata::BumpProfile& phi, double eps,
                                            double y) {
    require_mode(phi, scatdata::NormMode::UnitL2, "h1_periodic_decompose");
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::invalid_argument("h1_periodic_decompose: need 0 < eps <= 1");

    PeriodicDecomposition d;
    d.eps = eps;
    d.b = 1.0;
    double l2 = 0.0, stable = 0.0;
    const double k2 = atoms.k * atoms.k;
    for (const auto& [n, w] : atoms.coeffs) {
        double a = std::norm(w);
        l2 += a;
        stable += a * static_cast<double>(n) * n / (k2 - static_cast<double>(n) * n);
    }
    d.singular_value = phi.c_phi / (4.0 * kPi * kPi * eps * eps) * l2;
    d.stable_value = y * y * stable;
    d.total = dispersion::h1_polynomial(scatdata::mollify(atoms, phi, eps)).eval(y);
    return d;
}

double singular_part(const scatdata::AtomicSpectrum& atoms, const scatdata::BumpProfile& phi,
                     double eps, double b, double y) {
    require_mode(phi, scatdata::NormMode::UnitIntegral, "singular_part");
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::invalid_argument("singular_part: need 0 < eps <= 1");
    if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("singular_part: need 0 < b < 1");
    if (atoms.coeffs.empty()) return 0.0;

    const double k = atoms.k;
    const double r = phi.support_radius;

    quad::Options eta_opt;
    eta_opt.rel_tol = 1e-10;
    eta_opt.abs_tol = 1e-13;
    eta_opt.init_panels = 16;

    double total = 0.0;
    for (const auto& [n, w] : atoms.coeffs) {
        double a = std::norm(w);
        if (a == 0.0) continue;
        auto inner = [&](double x) {
            Cplx v = quad::integrate_c(
                [&](double eta) -> Cplx {
                    double ph = phi.value(eta);
                    if (ph == 0.0) return {0.0, 0.0};
                    double arg = n + eps * eta;
                    double root = std::sqrt(std::max(k * k - arg * arg, 0.0));
                    return ph * std::polar(1.0, 2.0 * kPi * (x * eta + y * root));
                },
                -r, r, eta_opt);
            return std::norm(v);
        };
        // |x|^{2b}-weighted window, grown in octaves until the tail is < 1e-6
        auto piece = [&](double lo, double hi) {
            quad::Options o;
            o.rel_tol = 1e-8;
            o.abs_tol = 1e-15;
            o.init_panels = std::max<int>(8, static_cast<int>((hi - lo) * 4.0));
            return quad::integrate_abs_moment(inner, 2.0 * b, lo, hi, o);
        };
        double m = piece(-1.0, 1.0);
        double wwin = 1.0, last = 1e300;
        bool ok = false;
        while (wwin <= 512.0) {
            double seg = piece(wwin, 2.0 * wwin) + piece(-2.0 * wwin, -wwin);
            m += seg;
            wwin *= 2.0;
            if (seg < 1e-6 * m && seg < last) {
                ok = true;
                break;
            }
            last = seg;
        }
        if (!ok)
            throw std::runtime_error(
                "singular_part: window failure (transform tail did not decay)");
        total += a * m;
    }
    return std::pow(eps, -2.0 * b) * total;
}

double regular_part_eps(const scatdata::AtomicSpectrum& atoms, const scatdata::BumpProfile& phi,
                        double eps, double b, double y) {
    require_mode(phi, scatdata::NormMode::UnitIntegral, "regular_part_eps");
    if (!(eps > 0.0 && eps < 0.25))
        throw std::invalid_argument("regular_part_eps: need 0 < eps < 1/4");
    if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("regular_part_eps: need 0 < b < 1");

    const double k = atoms.k;
    const double r = phi.support_radius;
    const auto& g = quad::gauss_legendre(32);

    // precompute bump values at the 32 Gauss nodes on [-r, r]
    Eigen::ArrayXd node(32), pw(32);
    for (int i = 0; i < 32; ++i) {
        node[i] = r * g.nodes[i];
        pw[i] = phi.value(node[i]) * (r * g.weights[i]);
    }

    Cplx acc{0.0, 0.0};
    for (const auto& [n, wn] : atoms.coeffs) {
        for (const auto& [m, wm] : atoms.coeffs) {
            if (n == m) continue;
            Cplx coeff = wn * std::conj(wm);
            if (coeff == Cplx(0.0, 0.0)) continue;
            // xi = n + eps a, eta = m + eps c with a, c in [-r, r]
            Cplx cell{0.0, 0.0};
            for (int i = 0; i < 32; ++i) {
                double xi = n + eps * node[i];
                double rootx = std::sqrt(k * k - xi * xi);
                for (int j = 0; j < 32; ++j) {
                    double et = m + eps * node[j];
                    double rooty = std::sqrt(k * k - et * et);
                    double gap = std::abs(xi - et);
                    cell += pw[i] * pw[j] *
                            std::polar(1.0, 2.0 * kPi * y * (rootx - rooty)) /
                            std::pow(gap, 1.0 + 2.0 * b);
                }
            }
            acc += coeff * cell;
        }
    }
    return -2.0 * specfun::omega(b) * std::real(acc);
}

double regular_limit(const scatdata::AtomicSpectrum& atoms, double b, double y) {
    if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("regular_limit: need 0 < b < 1");
    const double k = atoms.k;
    Cplx acc{0.0, 0.0};
    for (const auto& [n, wn] : atoms.coeffs) {
        double rootn = std::sqrt(k * k - static_cast<double>(n) * n);
        for (const auto& [m, wm] : atoms.coeffs) {
            if (n == m) continue;
            double rootm = std::sqrt(k * k - static_cast<double>(m) * m);
            acc += wn * std::conj(wm) *
                   std::polar(1.0, 2.0 * kPi * (rootn - rootm) * y) /
                   std::pow(std::abs(static_cast<double>(n - m)), 1.0 + 2.0 * b);
        }
    }
    return -2.0 * specfun::omega(b) * std::real(acc);
}

double AtomicMeasure::total_mass() const {
    double s = 0.0;
    for (const auto& a : atoms) s += std::abs(a.w);
    return s;
}

AtomicMeasure rb_hat_atoms(const scatdata::AtomicSpectrum& atoms, double b) {
    if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("rb_hat_atoms: need 0 < b < 1");
    const double k = atoms.k;
    const double om = specfun::omega(b);
    std::vector<std::pair<double, Cplx>> raw;
    for (const auto& [n, wn] : atoms.coeffs) {
        double rootn = std::sqrt(k * k - static_cast<double>(n) * n);
        for (const auto& [m, wm] : atoms.coeffs) {
            if (n == m) continue;
            double rootm = std::sqrt(k * k - static_cast<double>(m) * m);
            Cplx w = -2.0 * om * wn * std::conj(wm) /
                     std::pow(std::abs(static_cast<double>(n - m)), 1.0 + 2.0 * b);
            raw.emplace_back(rootn - rootm, w);
        }
    }
    std::sort(raw.begin(), raw.end(),
              [](const auto& a, const auto& b2) { return a.first < b2.first; });
    AtomicMeasure out;
    out.label = "rb_hat";
    const double tol = 1e-12;
    for (std::size_t i = 0; i < raw.size();) {
        double loc = raw[i].first;
        Cplx w = raw[i].second;
        std::size_t j = i + 1;
        while (j < raw.size() && raw[j].first - loc <= tol) {
            w += raw[j].second;
            ++j;
        }
        out.atoms.push_back({loc, std::real(w)});
        out.imag_residual += std::abs(std::imag(w));
        i = j;
    }
    return out;
}

double l1_bound(const scatdata::AtomicSpectrum& atoms, double b) {
    if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("l1_bound: need 0 < b < 1");
    double s = 0.0;
    for (const auto& [n, wn] : atoms.coeffs)
        for (const auto& [m, wm] : atoms.coeffs) {
            if (n == m) continue;
            s += std::abs(wn) * std::abs(wm) /
                 std::pow(std::abs(static_cast<double>(n - m)), 1.0 + 2.0 * b);
        }
    return std::pow(2.0, 1.0 + 2.0 * b) * 2.0 * specfun::omega(b) * s;
}

}  // namespace helmdisp::periodic
