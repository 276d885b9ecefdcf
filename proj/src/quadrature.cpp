#include "helmdisp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>

namespace helmdisp::quad {

namespace {

GaussRule compute_gauss_legendre(int n) {
    // Newton iteration on P_n, nodes seeded by the Chebyshev approximation.
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p0 = 0, p1 = 0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            double dp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        p0 = 1.0;
        p1 = 0.0;
        for (int j = 0; j < n; ++j) {
            double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        double dp = n * (x * p0 - p1) / (x * x - 1.0);
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

template <typename T>
T panel_gauss(const std::function<T(double)>& f, double a, double b, const GaussRule& g) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T acc{};
    for (int i = 0; i < g.nodes.size(); ++i) acc += g.weights[i] * f(c + h * g.nodes[i]);
    return h * acc;
}

std::vector<double> seed_partition(double a, double b, const Options& opt) {
    std::vector<double> cuts;
    cuts.push_back(a);
    for (double c : opt.breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<double> pts;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        for (int j = 0; j < opt.init_panels; ++j)
            pts.push_back(cuts[i] + (cuts[i + 1] - cuts[i]) * j / opt.init_panels);
    pts.push_back(b);
    return pts;
}

template <typename T>
void run_adaptive(const std::function<T(double)>& f, double a, double b, const Options& opt,
                  T& value, double& err, bool& converged, int& count) {
    const GaussRule& g = gauss_legendre(opt.order);

    struct Panel {
        double a, b;
        T value;
        double error;
        long seq;
    };
    struct Less {
        bool operator()(const Panel& l, const Panel& r) const {
            if (l.error != r.error) return l.error < r.error;
            return l.seq > r.seq;
        }
    };
    auto eval_panel = [&](double lo, double hi, long seq) {
        T coarse = panel_gauss<T>(f, lo, hi, g);
        double mid = 0.5 * (lo + hi);
        T refined = panel_gauss<T>(f, lo, mid, g) + panel_gauss<T>(f, mid, hi, g);
        return Panel{lo, hi, refined, std::abs(refined - coarse), seq};
    };

    std::priority_queue<Panel, std::vector<Panel>, Less> heap;
    long seq = 0;
    T total{};
    double total_err = 0.0;
    std::vector<double> pts = seed_partition(a, b, opt);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Panel p = eval_panel(pts[i], pts[i + 1], seq++);
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }
    count = static_cast<int>(pts.size()) - 1;

    while (!heap.empty() && count < opt.max_intervals) {
        double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (total_err <= tol) break;
        Panel p = heap.top();
        heap.pop();
        double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b) continue;  // interval at double resolution
        Panel l = eval_panel(p.a, mid, seq++);
        Panel r = eval_panel(mid, p.b, seq++);
        total += l.value + r.value - p.value;
        total_err += l.error + r.error - p.error;
        heap.push(l);
        heap.push(r);
        ++count;
    }
    value = total;
    err = total_err;
    converged = total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

Result integrate_ex(const std::function<double(double)>& f, double a, double b,
                    const Options& opt) {
    Result r;
    if (a == b) return r;
    run_adaptive<double>(f, a, b, opt, r.value, r.error_estimate, r.converged, r.intervals);
    return r;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opt) {
    Result r = integrate_ex(f, a, b, opt);
    if (!r.converged)
        throw std::runtime_error("quadrature: interval budget exhausted before tolerance");
    return r.value;
}

ResultC integrate_c_ex(const std::function<std::complex<double>(double)>& f,
                       double a, double b, const Options& opt) {
    ResultC r;
    if (a == b) return r;
    run_adaptive<std::complex<double>>(f, a, b, opt, r.value, r.error_estimate, r.converged,
                                       r.intervals);
    return r;
}

std::complex<double> integrate_c(const std::function<std::complex<double>(double)>& f,
                                 double a, double b, const Options& opt) {
    ResultC r = integrate_c_ex(f, a, b, opt);
    if (!r.converged)
        throw std::runtime_error("quadrature: interval budget exhausted before tolerance");
    return r.value;
}

double integrate_abs_moment(const std::function<double(double)>& g, double two_b,
                            double a, double b, const Options& opt) {
    if (a >= b) return 0.0;
    if (a > 0.0 || b < 0.0) {
        return integrate([&](double x) { return std::pow(std::abs(x), two_b) * g(x); }, a, b, opt);
    }
    if (a < 0.0 && b > 0.0) {
        return integrate_abs_moment(g, two_b, a, 0.0, opt) +
               integrate_abs_moment(g, two_b, 0.0, b, opt);
    }
    // exactly one endpoint at zero; map onto [0,1] by x = +-L t^gamma
    const bool left_zero = (a == 0.0);
    const double L = left_zero ? b : -a;
    const double gamma = 3.0 / (1.0 + two_b);
    auto h = [&](double t) {
        double x = L * std::pow(t, gamma);
        double jac = L * gamma * std::pow(t, gamma - 1.0);
        return std::pow(x, two_b) * g(left_zero ? x : -x) * jac;
    };
    return integrate(h, 0.0, 1.0, opt);
}

}  // namespace helmdisp::quad
