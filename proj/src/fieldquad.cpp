#include "helmdisp/fieldquad.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "helmdisp/quadrature.hpp"

namespace helmdisp::fieldquad {

namespace {

constexpr double kPi = M_PI;

std::vector<double> theta_cuts(const scatdata::ScatteringDensity& F) {
    std::vector<double> cuts{-kPi / 2, kPi / 2};
    for (double xi : F.breakpoints) {
        if (std::abs(xi) < F.k) cuts.push_back(std::asin(xi / F.k));
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

}  // namespace

std::complex<double> eval_field(const scatdata::ScatteringDensity& F, double x, double y) {
    const double k = F.k;
    const double tol = 1e-8 * (1.0 + F.abs_mass);
    const auto& rule = quad::gauss_legendre(10);
    const std::vector<double> cuts = theta_cuts(F);

    auto integrand = [&](double th) -> std::complex<double> {
        double s = std::sin(th), c = std::cos(th);
        std::complex<double> Fv = F.value(k * s);
        if (Fv == std::complex<double>(0.0, 0.0)) return {0.0, 0.0};
        double phase = 2.0 * kPi * k * (x * s + y * c);
        return Fv * std::polar(c * k, phase);
    };
    auto sum_panels = [&](int per_unit) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double lo = cuts[i], hi = cuts[i + 1];
            int m = std::max(1, static_cast<int>(std::ceil((hi - lo) * per_unit / kPi)));
            double h = (hi - lo) / m;
            for (int j = 0; j < m; ++j) {
                double a = lo + j * h, c0 = a + 0.5 * h;
                std::complex<double> p{0.0, 0.0};
                for (int q = 0; q < rule.nodes.size(); ++q)
                    p += rule.weights[q] * integrand(c0 + 0.5 * h * rule.nodes[q]);
                acc += 0.5 * h * p;
            }
        }
        return acc;
    };

    // panel density follows the phase budget k (|x| + |y|)
    int per_unit = std::max(12, static_cast<int>(std::ceil(2.0 * k * (std::abs(x) + std::abs(y)) + 8.0)));
    std::complex<double> prev = sum_panels(per_unit);
    for (int it = 0; it < 12; ++it) {
        per_unit *= 2;
        if (static_cast<long>(per_unit) * 10L > 4'000'000L)
            throw std::runtime_error("eval_field: node budget exceeded");
        std::complex<double> cur = sum_panels(per_unit);
        if (std::abs(cur - prev) <= tol) return cur;
        prev = cur;
    }
    throw std::runtime_error("eval_field: node budget exceeded");
}

FieldSample sample_field(const scatdata::ScatteringDensity& F, double x, double y) {
    FieldSample s{x, y, eval_field(F, x, y)};
    if (!std::isfinite(s.value.real()) || !std::isfinite(s.value.imag()))
        throw std::runtime_error("sample_field: non-finite field value");
    return s;
}

std::complex<double> far_field(const scatdata::ScatteringDensity& F, double x, double y) {
    if (!(y > 0.0)) throw std::domain_error("far_field: requires y > 0");
    if (std::abs(x) > y / 10.0)
        throw std::domain_error("far_field: requires |x| <= y/10");
    const double k = F.k;
    return std::sqrt(k / y) * F.value(k * x / y) *
           std::polar(1.0, 2.0 * kPi * k * y - kPi / 4.0);
}

void GridFunction::validate() const {
    if (nodes.size() != values.size() || nodes.size() < 2)
        throw std::invalid_argument("GridFunction: nodes/values size mismatch or too short");
    for (Eigen::Index i = 0; i + 1 < nodes.size(); ++i)
        if (!(nodes[i] < nodes[i + 1]))
            throw std::invalid_argument("GridFunction: nodes must be strictly increasing");
}

bool GridFunction::is_uniform(double tol) const {
    double h = spacing();
    for (Eigen::Index i = 0; i + 1 < nodes.size(); ++i)
        if (std::abs((nodes[i + 1] - nodes[i]) - h) > tol * std::max(1.0, std::abs(h)))
            return false;
    return true;
}

double GridFunction::spacing() const { return nodes[1] - nodes[0]; }

std::complex<double> GridFunction::interp(double x) const {
    if (x <= nodes[0]) return values[0];
    Eigen::Index n = nodes.size();
    if (x >= nodes[n - 1]) return values[n - 1];
    // binary search for the containing cell
    Eigen::Index lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        Eigen::Index mid = (lo + hi) / 2;
        if (nodes[mid] <= x) lo = mid; else hi = mid;
    }
    double t = (x - nodes[lo]) / (nodes[hi] - nodes[lo]);
    return (1.0 - t) * values[lo] + t * values[hi];
}

namespace {

// int_{ua}^{ub} (p0 + p1 u + p2 u^2) |u|^{-1-2b} du with 0 < ua < ub (positive side)
double power_cell(double p0, double p1, double p2, double ua, double ub, double b) {
    auto mono = [&](double e, double u) { return std::pow(u, e); };
    double out = 0.0;
    out += p0 * (mono(-2.0 * b, ub) - mono(-2.0 * b, ua)) / (-2.0 * b);
    if (std::abs(1.0 - 2.0 * b) < 1e-12) {
        out += p1 * std::log(ub / ua);
    } else {
        out += p1 * (mono(1.0 - 2.0 * b, ub) - mono(1.0 - 2.0 * b, ua)) / (1.0 - 2.0 * b);
    }
    out += p2 * (mono(2.0 - 2.0 * b, ub) - mono(2.0 - 2.0 * b, ua)) / (2.0 - 2.0 * b);
    return out;
}

}  // namespace

FracSingularResult frac_deriv_singular(const GridFunction& f, double b, double xi) {
    f.validate();
    if (!(b > 0.0 && b < 1.0))
        throw std::invalid_argument("frac_deriv_singular: need 0 < b < 1");
    const Eigen::Index n = f.nodes.size();
    if (!(xi > f.nodes[0] && xi < f.nodes[n - 1]))
        throw std::invalid_argument("frac_deriv_singular: xi must be interior to the grid");

    const std::complex<double> fxi = f.interp(xi);

    // local spacing and window
    Eigen::Index lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        Eigen::Index mid = (lo + hi) / 2;
        if (f.nodes[mid] <= xi) lo = mid; else hi = mid;
    }
    const double h_loc = f.nodes[hi] - f.nodes[lo];
    double delta = 2.0 * h_loc;
    delta = std::min({delta, xi - f.nodes[0], f.nodes[n - 1] - xi});

    double acc = 0.0;
    // local model on (xi - delta, xi + delta)
    const std::complex<double> slope = (f.interp(xi + delta) - f.interp(xi - delta)) / (2.0 * delta);
    acc += 2.0 * std::norm(slope) * std::pow(delta, 2.0 - 2.0 * b) / (2.0 - 2.0 * b);

    // grid cells outside the window, integrated exactly against the linear interpolant
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        double a = f.nodes[i], c = f.nodes[i + 1];
        std::complex<double> va = f.values[i];
        std::complex<double> m = (f.values[i + 1] - va) / (c - a);
        // diff(t) = fxi - f_lin(t) = c0 - m u with u = t - xi
        std::complex<double> c0 = fxi - va - m * (xi - a);
        double p0 = std::norm(c0);
        double p1 = -2.0 * std::real(c0 * std::conj(m));
        double p2 = std::norm(m);
        // piece of the cell left of the window: u in [lo2-xi, hi2-xi], both <= -delta
        double lo2 = a, hi2 = std::min(c, xi - delta);
        if (lo2 < hi2) acc += power_cell(p0, -p1, p2, xi - hi2, xi - lo2, b);
        // piece right of the window
        lo2 = std::max(a, xi + delta), hi2 = c;
        if (lo2 < hi2) acc += power_cell(p0, p1, p2, lo2 - xi, hi2 - xi, b);
    }

    // constant tails beyond the node range
    acc += std::norm(fxi - f.values[0]) * std::pow(xi - f.nodes[0], -2.0 * b) / (2.0 * b);
    acc += std::norm(fxi - f.values[n - 1]) * std::pow(f.nodes[n - 1] - xi, -2.0 * b) / (2.0 * b);

    // discontinuity heuristic: an outsized node-to-node jump near xi
    FracSingularResult res;
    double med = 0.0;
    {
        std::vector<double> jumps(n - 1);
        for (Eigen::Index i = 0; i + 1 < n; ++i) jumps[i] = std::abs(f.values[i + 1] - f.values[i]);
        std::nth_element(jumps.begin(), jumps.begin() + jumps.size() / 2, jumps.end());
        med = jumps[jumps.size() / 2];
    }
    double vmax = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) vmax = std::max(vmax, std::abs(f.values[i]));
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        if (f.nodes[i + 1] < xi - 4.0 * h_loc || f.nodes[i] > xi + 4.0 * h_loc) continue;
        double j = std::abs(f.values[i + 1] - f.values[i]);
        if (j > 8.0 * med && j > 1e-8 * vmax) res.discontinuity_warning = true;
    }
    res.value = std::sqrt(acc);
    return res;
}

FracFourierResult frac_deriv_fourier(const GridFunction& f, double b) {
    f.validate();
    if (!(b > 0.0 && b < 1.0))
        throw std::invalid_argument("frac_deriv_fourier: need 0 < b < 1");
    if (!f.is_uniform())
        throw std::invalid_argument("frac_deriv_fourier: grid must be uniform");
    const Eigen::Index n = f.nodes.size();
    const double h = f.spacing();

    std::vector<std::complex<double>> in(n), out(n);
    for (Eigen::Index i = 0; i < n; ++i) in[i] = f.values[i];

    // taper only when the periodic wrap is discontinuous
    double med = 0.0, vmax = 0.0;
    {
        std::vector<double> jumps(n - 1);
        for (Eigen::Index i = 0; i + 1 < n; ++i) jumps[i] = std::abs(f.values[i + 1] - f.values[i]);
        std::nth_element(jumps.begin(), jumps.begin() + jumps.size() / 2, jumps.end());
        med = jumps[jumps.size() / 2];
        for (Eigen::Index i = 0; i < n; ++i) vmax = std::max(vmax, std::abs(f.values[i]));
    }
    double wrap = std::abs(f.values[0] - f.values[n - 1]);
    if (wrap > 5.0 * med && wrap > 1e-9 * vmax) {
        Eigen::Index m = std::max<Eigen::Index>(2, n / 10);
        for (Eigen::Index i = 0; i < m; ++i) {
            double w = 0.5 * (1.0 - std::cos(kPi * i / m));
            in[i] *= w;
            in[n - 1 - i] *= w;
        }
    }

    Eigen::FFT<double> fft;
    fft.fwd(out, in);

    double total = 0.0, high = 0.0;
    const double fny = 0.5 / h;
    const double dfreq = 1.0 / (n * h);
    for (Eigen::Index j = 0; j < n; ++j) {
        double freq = (j <= n / 2 ? static_cast<double>(j) : static_cast<double>(j) - n) / (n * h);
        double e = std::norm(out[j]);
        total += e;
        if (std::abs(freq) >= 0.5 * fny) high += e;
        // DC bin carries |xi|^b averaged over its width, not the point value 0
        double mult = (j == 0) ? std::pow(0.5 * dfreq, b) / (1.0 + b)
                               : std::pow(std::abs(freq), b);
        out[j] *= mult;
    }
    std::vector<std::complex<double>> back(n);
    fft.inv(back, out);

    FracFourierResult res;
    res.grid.nodes = f.nodes;
    res.grid.values.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) res.grid.values[i] = back[i];
    res.aliasing_fraction = total > 0.0 ? high / total : 0.0;
    res.aliasing_warning = res.aliasing_fraction > 1e-6;
    return res;
}

std::complex<double> multiplier_value(double y, double k, double xi) {
    if (!(std::abs(xi) <= 4.0 * k))
        throw std::domain_error("multiplier_value: requires |xi| <= 4k");
    if (std::abs(xi) >= k) return {1.0, 0.0};
    return std::polar(1.0, 2.0 * kPi * y * std::sqrt(k * k - xi * xi));
}

double multiplier_frac_deriv(double y, double k, double b, double xi) {
    if (!(std::abs(xi) < k))
        throw std::domain_error("multiplier_frac_deriv: requires |xi| < k");
    if (y == 0.0) return 0.0;
    const double root = std::sqrt(k * k - xi * xi);
    // exterior |t| >= k: m(t) = 1 exactly
    double ext = 4.0 * std::pow(std::sin(kPi * y * root), 2) *
                 (std::pow(k - xi, -2.0 * b) + std::pow(k + xi, -2.0 * b)) / (2.0 * b);

    // interior: t = k sin(phi); skip the diagonal window |t - xi| < delta
    const double mprime = 2.0 * kPi * std::abs(y) * std::abs(xi) / root;  // |m'(xi)|
    double delta = std::min({0.01 * k, (k - std::abs(xi)) / 4.0,
                             0.05 / (1.0 + 2.0 * kPi * std::abs(y))});
    delta = std::max(delta, 1e-9 * k);
    const double local = 2.0 * mprime * mprime * std::pow(delta, 2.0 - 2.0 * b) / (2.0 - 2.0 * b);

    const std::complex<double> mxi = std::polar(1.0, 2.0 * kPi * y * root);
    auto integrand = [&](double phi) {
        double t = k * std::sin(phi);
        std::complex<double> mt = std::polar(1.0, 2.0 * kPi * y * k * std::cos(phi));
        double num = std::norm(mxi - mt);
        return num * k * std::cos(phi) / std::pow(std::abs(xi - t), 1.0 + 2.0 * b);
    };
    quad::Options opt;
    opt.rel_tol = 1e-8;
    opt.abs_tol = 1e-12;
    opt.init_panels = std::max(24, static_cast<int>(8.0 * k * std::abs(y)) + 8);
    opt.max_intervals = 60000;
    double th_a = std::asin(std::max(-1.0, (xi - delta) / k));
    double th_b = std::asin(std::min(1.0, (xi + delta) / k));
    double interior = quad::integrate_ex(integrand, -kPi / 2, th_a, opt).value +
                      quad::integrate_ex(integrand, th_b, kPi / 2, opt).value;

    return std::sqrt(ext + local + interior);
}

double multiplier_bound_ratio(double y, double k, double b, const Eigen::ArrayXd& grid) {
    if (!(b > 0.0 && b < 1.0))
        throw std::invalid_argument("multiplier_bound_ratio: need 0 < b < 1");
    double worst = 0.0;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        double xi = grid[i];
        if (!(std::abs(xi) < k)) continue;
        double d = multiplier_frac_deriv(y, k, b, xi);
        double root = std::sqrt(k * k - xi * xi);
        double bracket = std::pow(k * std::abs(y), b) / std::pow(k * k - xi * xi, b / 2.0) +
                         k * (1.0 + std::pow(std::abs(xi), b) * std::pow(std::abs(y), b / 2.0)) /
                             root;
        worst = std::max(worst, d / bracket);
    }
    return worst;
}

}  // namespace helmdisp::fieldquad
