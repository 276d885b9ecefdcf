#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "helmdisp/periodic.hpp"
#include "helmdisp/quadrature.hpp"
#include "helmdisp/scatdata.hpp"
#include "helmdisp/specfun.hpp"

using namespace helmdisp;
using scatdata::NormMode;

TEST_CASE("b=1 decomposition: modes, trivial cases, stable value") {
    auto atoms = scatdata::unit_comb(2.5);
    auto l2 = scatdata::make_standard_bump(NormMode::UnitL2);
    auto integral = scatdata::make_standard_bump(NormMode::UnitIntegral);
    CHECK_THROWS_AS(periodic::h1_periodic_decompose(atoms, integral, 0.1, 1.0),
                    std::invalid_argument);

    scatdata::AtomicSpectrum one(2.0);
    one.set(0, 1.0);
    auto d0 = periodic::h1_periodic_decompose(one, l2, 0.1, 3.0);
    CHECK(d0.stable_value == 0.0);  // the n = 0 weight vanishes

    auto dy0 = periodic::h1_periodic_decompose(atoms, l2, 0.1, 0.0);
    CHECK(dy0.stable_value == 0.0);

    auto d = periodic::h1_periodic_decompose(atoms, l2, 0.1, 1.0);
    CHECK(d.stable_value == doctest::Approx(248.0 / 63.0).epsilon(1e-12));
    CHECK(d.singular_value ==
          doctest::Approx(l2.c_phi / (4.0 * M_PI * M_PI * 0.01) * 5.0).epsilon(1e-12));
    CHECK(d.total > d.singular_value);
}

TEST_CASE("b=1 decomposition converges as eps shrinks") {
    auto atoms = scatdata::unit_comb(2.5);
    auto l2 = scatdata::make_standard_bump(NormMode::UnitL2);
    for (double y : {0.5, 1.0}) {
        double target = (248.0 / 63.0) * y * y;
        double prev = 1e300;
        for (double eps : {0.2, 0.1, 0.05}) {
            auto d = periodic::h1_periodic_decompose(atoms, l2, eps, y);
            CHECK(d.total >= 0.0);
            CHECK(d.singular_value >= 0.0);
            double e = std::abs(d.total - d.singular_value - target);
            CHECK(e < prev);
            prev = e;
        }
    }
}

TEST_CASE("singular part: eps^{2b}-scaled values converge at fixed height") {
    auto integral = scatdata::make_standard_bump(NormMode::UnitIntegral);
    scatdata::AtomicSpectrum atoms(4.0);
    atoms.set(0, 1.0);
    atoms.set(1, 1.0);
    const double b = 0.5, y = 0.7;
    double v4 = periodic::singular_part(atoms, integral, std::pow(2.0, -4), b, y);
    double v5 = periodic::singular_part(atoms, integral, std::pow(2.0, -5), b, y);
    double v6 = periodic::singular_part(atoms, integral, std::pow(2.0, -6), b, y);
    double s4 = v4 * std::pow(std::pow(2.0, -4), 2.0 * b);
    double s5 = v5 * std::pow(std::pow(2.0, -5), 2.0 * b);
    double s6 = v6 * std::pow(std::pow(2.0, -6), 2.0 * b);
    CHECK(std::abs(s6 / s5 - 1.0) < 0.05);
    CHECK(std::abs(s6 / s5 - 1.0) < std::abs(s5 / s4 - 1.0) + 0.01);
}

TEST_CASE("singular part: mode check, y = 0 structure, growth") {
    auto integral = scatdata::make_standard_bump(NormMode::UnitIntegral);
    auto l2 = scatdata::make_standard_bump(NormMode::UnitL2);
    scatdata::AtomicSpectrum empty(5.0);
    CHECK(periodic::singular_part(empty, integral, 0.1, 0.5, 1.0) == 0.0);

    scatdata::AtomicSpectrum a0(10.0), a2(10.0);
    a0.set(0, 1.0);
    a2.set(2, 1.0);
    CHECK_THROWS_AS(periodic::singular_part(a0, l2, 0.1, 0.5, 0.0), std::invalid_argument);

    // at y = 0 the phase is n-independent: identical values for shifted atoms
    double v0 = periodic::singular_part(a0, integral, 0.1, 0.5, 0.0);
    double v2 = periodic::singular_part(a2, integral, 0.1, 0.5, 0.0);
    CHECK(v0 > 0.0);
    CHECK(v0 == doctest::Approx(v2).epsilon(1e-8));

    // eps^{2b}-scaled value at y = 0 is exactly eps-independent
    double w1 = periodic::singular_part(a0, integral, 0.2, 0.5, 0.0) * std::pow(0.2, 1.0);
    double w2 = periodic::singular_part(a0, integral, 0.1, 0.5, 0.0) * std::pow(0.1, 1.0);
    CHECK(w1 == doctest::Approx(w2).epsilon(1e-6));
}

TEST_CASE("regular part at scale eps: preconditions and the two-atom limit") {
    auto integral = scatdata::make_standard_bump(NormMode::UnitIntegral);
    scatdata::AtomicSpectrum one(2.0);
    one.set(0, 1.0);
    CHECK(periodic::regular_part_eps(one, integral, 0.1, 0.5, 1.0) == 0.0);
    CHECK_THROWS_AS(periodic::regular_part_eps(one, integral, 0.25, 0.5, 1.0),
                    std::invalid_argument);

    scatdata::AtomicSpectrum two(2.0);
    two.set(0, 1.0);
    two.set(1, 1.0);
    const double b = 0.5;
    double lim = periodic::regular_limit(two, b, 0.0);
    CHECK(lim == doctest::Approx(-4.0 * specfun::omega(b)).epsilon(1e-13));
    double v = periodic::regular_part_eps(two, integral, 0.02, b, 0.0);
    CHECK(v == doctest::Approx(lim).epsilon(0.01));

    // the l1 bound dominates at every height
    double bound = periodic::l1_bound(two, b);
    for (double y : {0.0, 0.3, 1.7, 4.0})
        CHECK(std::abs(periodic::regular_part_eps(two, integral, 0.1, b, y)) <= bound);
}

TEST_CASE("regular limit closed forms") {
    scatdata::AtomicSpectrum one(2.0);
    one.set(1, 1.0);
    CHECK(periodic::regular_limit(one, 0.5, 2.0) == 0.0);

    scatdata::AtomicSpectrum two(100.0);
    two.set(0, 1.0);
    two.set(1, 1.0);
    const double b = 0.5;
    const double om = specfun::omega(b);
    const double delta = 0.0050001250062503907;  // sqrt(10000) - sqrt(9999)
    for (double y : {10.0, 50.0}) {
        double expect = -4.0 * om * std::cos(2.0 * M_PI * delta * y);
        CHECK(periodic::regular_limit(two, b, y) == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("transform atoms of the regular limit") {
    const double b = 0.5;
    const double om = specfun::omega(b);
    scatdata::AtomicSpectrum one(2.0);
    one.set(0, 1.0);
    CHECK(periodic::rb_hat_atoms(one, b).atoms.empty());

    scatdata::AtomicSpectrum two(100.0);
    two.set(0, 1.0);
    two.set(1, 1.0);
    auto m = periodic::rb_hat_atoms(two, b);
    REQUIRE(m.atoms.size() == 2);
    CHECK(m.atoms[0].loc == doctest::Approx(-0.0050001250062503907).epsilon(1e-10));
    CHECK(m.atoms[1].loc == doctest::Approx(0.0050001250062503907).epsilon(1e-10));
    CHECK(m.atoms[0].w == doctest::Approx(-2.0 * om).epsilon(1e-12));
    CHECK(m.atoms[1].w == doctest::Approx(-2.0 * om).epsilon(1e-12));
    CHECK(m.total_mass() == doctest::Approx(4.0 * om).epsilon(1e-12));

    // coincident locations merge: (-1,0) with (1,0), and (-1,1) with (1,-1)
    scatdata::AtomicSpectrum three(5.0);
    three.set(-1, 1.0);
    three.set(0, 1.0);
    three.set(1, 1.0);
    auto mm = periodic::rb_hat_atoms(three, b);
    REQUIRE(mm.atoms.size() == 3);
    double tau = std::sqrt(24.0) - 5.0;
    CHECK(mm.atoms[0].loc == doctest::Approx(tau).epsilon(1e-12));
    CHECK(mm.atoms[0].w == doctest::Approx(-4.0 * om).epsilon(1e-12));
    CHECK(mm.atoms[1].loc == 0.0);
    CHECK(mm.atoms[1].w == doctest::Approx(-2.0 * om * 2.0 / std::pow(2.0, 2.0)).epsilon(1e-12));
    CHECK(mm.atoms[2].w == doctest::Approx(-4.0 * om).epsilon(1e-12));
}

TEST_CASE("transform atoms record the discarded imaginary mass") {
    const double b = 0.5;
    scatdata::AtomicSpectrum herm(5.0), skew(5.0);
    herm.set(-1, {0.3, -0.4});
    herm.set(1, {0.3, 0.4});  // F(-n) = conj(F(n))
    herm.set(0, 1.0);
    skew.set(-1, {0.9, 0.0});
    skew.set(1, {0.0, 0.7});  // not Hermitian
    skew.set(0, 1.0);
    CHECK(periodic::rb_hat_atoms(herm, b).imag_residual < 1e-12);
    CHECK(periodic::rb_hat_atoms(skew, b).imag_residual > 1e-3);
}

TEST_CASE("l1 bound value and domination of the transform mass") {
    const double b = 0.5;
    scatdata::AtomicSpectrum one(2.0);
    one.set(0, 1.0);
    CHECK(periodic::l1_bound(one, b) == 0.0);

    scatdata::AtomicSpectrum two(2.0);
    two.set(0, 1.0);
    two.set(1, 1.0);
    double bound = periodic::l1_bound(two, b);
    CHECK(bound == doctest::Approx(16.0 * specfun::omega(b)).epsilon(1e-12));
    CHECK(bound == doctest::Approx(0.81056946913870231).epsilon(1e-10));

    // quadrature estimate of the transform mass of the eps-regular part
    auto phi = scatdata::make_standard_bump(NormMode::UnitIntegral);
    const double eps = 0.1;
    const auto& g = quad::gauss_legendre(32);
    double tv = 0.0;
    double r = phi.support_radius;
    for (auto [n, m] : {std::pair{0, 1}, {1, 0}}) {
        double cell = 0.0;
        for (int i = 0; i < 32; ++i) {
            double a = r * g.nodes[i];
            for (int j = 0; j < 32; ++j) {
                double c = r * g.nodes[j];
                double gap = std::abs((n + eps * a) - (m + eps * c));
                cell += r * g.weights[i] * phi.value(a) * r * g.weights[j] * phi.value(c) /
                        std::pow(gap, 1.0 + 2.0 * b);
            }
        }
        tv += 2.0 * specfun::omega(b) * cell;
    }
    CHECK(tv <= bound * (1.0 + 1e-12));
}

TEST_CASE("atom frequencies are pairwise incommensurate for integer k") {
    const double k = 8.0;
    auto tau = [&](int n, int m) {
        return std::sqrt(k * k - n * n) - std::sqrt(k * k - m * m);
    };
    double vals[] = {tau(1, 0), tau(2, 0), tau(2, 1), tau(3, 1), tau(3, 2)};
    for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) {
            double ratio = vals[i] / vals[j];
            // no rational p/q with q <= 50 within 1e-9
            for (int q = 1; q <= 50; ++q) {
                double p = std::round(ratio * q);
                if (p == 0.0) continue;
                CHECK(std::abs(ratio - p / q) > 1e-9);
            }
        }
    }
}
