// Command-line front end: each subcommand maps onto one library operation and
// writes CSV/JSON artifacts with 17-significant-digit floats.

#include <complex>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "helmdisp/acceptance.hpp"
#include "helmdisp/dispersion.hpp"
#include "helmdisp/measure_io.hpp"
#include "helmdisp/periodic.hpp"
#include "helmdisp/scatdata.hpp"
#include "helmdisp/schrlimit.hpp"
#include "helmdisp/specfun.hpp"

namespace {

using helmdisp::io::format17;
using nlohmann::json;

struct DensityOpts {
    std::string kind = "parabola";  // parabola | bump | box
    double k = 2.0;
    double a = 1.0;
    std::string atoms_path;  // atomic spectrum JSON; mollified when set
    double eps = 0.1;
    std::string mode = "l2";  // bump normalization for mollification
};

void add_density_flags(CLI::App* cmd, DensityOpts& d) {
    cmd->add_option("--density", d.kind, "named density: parabola|bump|box")
        ->check(CLI::IsMember({"parabola", "bump", "box"}));
    cmd->add_option("--k", d.k, "wavenumber scale k");
    cmd->add_option("--a", d.a, "support half-width of the named density");
    cmd->add_option("--atoms", d.atoms_path, "atomic spectrum JSON (mollified with --eps)");
    cmd->add_option("--eps", d.eps, "mollification scale");
    cmd->add_option("--mode", d.mode, "bump normalization for --atoms: l2|integral")
        ->check(CLI::IsMember({"l2", "integral"}));
}

helmdisp::scatdata::ScatteringDensity make_density(const DensityOpts& d) {
    using namespace helmdisp::scatdata;
    if (!d.atoms_path.empty()) {
        auto j = json::parse(helmdisp::io::read_text_file(d.atoms_path));
        auto atoms = helmdisp::io::spectrum_from_json(j);
        auto phi = make_standard_bump(d.mode == "l2" ? NormMode::UnitL2
                                                     : NormMode::UnitIntegral);
        return mollify(atoms, phi, d.eps);
    }
    if (d.kind == "bump") return bump_density(d.k, d.a);
    if (d.kind == "box") return box_density(d.k, d.a);
    return parabola_density(d.k, d.a);
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::fputs(content.c_str(), stdout);
    } else {
        helmdisp::io::write_text_file(out_path, content);
    }
}

std::vector<double> expand_range(const std::vector<double>& spec_vals) {
    // lo,hi,n triple or a single value
    if (spec_vals.size() == 1) return {spec_vals[0]};
    if (spec_vals.size() != 3 || spec_vals[2] < 1)
        throw std::invalid_argument("range must be a single value or lo,hi,n with n >= 1");
    int n = static_cast<int>(spec_vals[2]);
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(n == 1 ? spec_vals[0]
                             : spec_vals[0] + (spec_vals[1] - spec_vals[0]) * i / (n - 1.0));
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"fractional dispersion of Helmholtz plane-wave fields"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_path, format = "csv";
    app.add_option("--out", out_path, "artifact path (stdout when omitted)")->capture_default_str();
    app.add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    // omega
    double b = 0.5;
    auto* c_omega = app.add_subcommand("omega", "the constant omega_b");
    c_omega->add_option("--b", b, "fractional order in (0,1)")->required();

    // alpha
    long long r_arg = 1;
    double b_alpha = 0.5;
    auto* c_alpha = app.add_subcommand("alpha", "divisor-sum coefficient alpha_b(r)");
    c_alpha->add_option("--b", b_alpha)->required();
    c_alpha->add_option("--r", r_arg, "nonzero integer")->required();

    // h1
    DensityOpts d_h1;
    std::vector<double> y_h1{0.0};
    auto* c_h1 = app.add_subcommand("h1", "quadratic dispersion polynomial and values");
    add_density_flags(c_h1, d_h1);
    c_h1->add_option("--y", y_h1, "height (single value or lo,hi,n)")->delimiter(',');

    // hb
    DensityOpts d_hb;
    std::vector<double> y_hb{0.0};
    double b_hb = 0.5, window_hb = 0.0;
    auto* c_hb = app.add_subcommand("hb", "fractional dispersion h_b(y), spectral route");
    add_density_flags(c_hb, d_hb);
    c_hb->add_option("--b", b_hb)->required();
    c_hb->add_option("--y", y_hb)->delimiter(',');
    c_hb->add_option("--direct-window", window_hb,
                     "also run the direct route, integrating |x| <= this");

    // phi
    DensityOpts d_phi;
    std::vector<double> tau_phi;
    double b_phi = 0.5;
    auto* c_phi = app.add_subcommand("phi", "transform-side density Phi(tau)");
    add_density_flags(c_phi, d_phi);
    c_phi->add_option("--b", b_phi)->required();
    c_phi->add_option("--tau", tau_phi, "tau (single value or lo,hi,n)")
        ->delimiter(',')
        ->required();

    // decompose
    double k_dec = 2.5, eps_dec = 0.1, y_dec = 1.0;
    std::string atoms_dec;
    auto* c_dec = app.add_subcommand("decompose", "b = 1 singular/stable decomposition");
    c_dec->add_option("--k", k_dec);
    c_dec->add_option("--eps", eps_dec)->required();
    c_dec->add_option("--y", y_dec);
    c_dec->add_option("--atoms", atoms_dec, "atomic spectrum JSON (default: unit comb)");

    // regular
    double k_reg = 2.5, b_reg = 0.5, eps_reg = 0.1;
    std::vector<double> y_reg{0.0, 1.0, 17.0};
    std::string atoms_reg;
    auto* c_reg = app.add_subcommand("regular", "regular part at scale eps and its limit");
    c_reg->add_option("--k", k_reg);
    c_reg->add_option("--b", b_reg)->required();
    c_reg->add_option("--eps", eps_reg)->required();
    c_reg->add_option("--y", y_reg, "lo,hi,n range")->delimiter(',');
    c_reg->add_option("--atoms", atoms_reg);

    // talbot
    double b_tal = 0.25;
    int qmax = 40;
    std::vector<double> window_tal{0.0, 1.0};
    auto* c_tal = app.add_subcommand("talbot", "rational-time atom table of the periodic limit");
    c_tal->add_option("--b", b_tal);
    c_tal->add_option("--qmax", qmax);
    c_tal->add_option("--window", window_tal, "t window lo,hi")->delimiter(',')->expected(2);

    // limit-k
    double b_lim = 0.5, k_lim = 100.0, eps_exp = 0.1, s_lim = -0.75;
    int rmax = 1600;
    auto* c_lim = app.add_subcommand("limit-k", "weighted Sobolev distance to the limit measure");
    c_lim->add_option("--b", b_lim);
    c_lim->add_option("--k", k_lim)->required();
    c_lim->add_option("--eps-exp", eps_exp);
    c_lim->add_option("--s", s_lim);
    c_lim->add_option("--rmax", rmax);

    // verify
    auto* c_ver = app.add_subcommand("verify", "run the acceptance suite");

    CLI11_PARSE(app, argc, argv);

    std::ostringstream os;
    if (c_omega->parsed()) {
        double v = helmdisp::specfun::omega(b);
        if (format == "json")
            os << json{{"schema", 1}, {"b", b}, {"omega", v}}.dump() << "\n";
        else
            os << format17(v) << "\n";
        emit(out_path, os.str());
    } else if (c_alpha->parsed()) {
        double v = helmdisp::schrlimit::coeff_alpha(r_arg, b_alpha);
        if (format == "json")
            os << json{{"schema", 1}, {"b", b_alpha}, {"r", r_arg}, {"alpha", v}}.dump() << "\n";
        else
            os << format17(v) << "\n";
        emit(out_path, os.str());
    } else if (c_h1->parsed()) {
        auto F = make_density(d_h1);
        auto poly = helmdisp::dispersion::h1_polynomial(F);
        auto ys = expand_range(y_h1);
        if (format == "json") {
            json rows = json::array();
            for (double y : ys) rows.push_back({{"y", y}, {"h1", poly.eval(y)}});
            os << json{{"schema", 1},
                       {"c0", poly.c0},
                       {"c1", poly.c1},
                       {"c2", poly.c2},
                       {"values", rows}}
                      .dump()
               << "\n";
        } else {
            os << "y,h1\n";
            for (double y : ys) os << format17(y) << "," << format17(poly.eval(y)) << "\n";
        }
        emit(out_path, os.str());
    } else if (c_hb->parsed()) {
        auto F = make_density(d_hb);
        auto ys = expand_range(y_hb);
        json rows = json::array();
        if (format == "csv") os << (window_hb > 0.0 ? "y,hb,hb_direct\n" : "y,hb\n");
        for (double y : ys) {
            double v = helmdisp::dispersion::hb_spectral(F, b_hb, y);
            if (window_hb > 0.0) {
                double vd = helmdisp::dispersion::hb_direct(F, b_hb, y, window_hb);
                if (format == "csv")
                    os << format17(y) << "," << format17(v) << "," << format17(vd) << "\n";
                else
                    rows.push_back({{"y", y}, {"hb", v}, {"hb_direct", vd}});
            } else if (format == "csv") {
                os << format17(y) << "," << format17(v) << "\n";
            } else {
                rows.push_back({{"y", y}, {"hb", v}});
            }
        }
        if (format == "json")
            os << json{{"schema", 1}, {"b", b_hb}, {"values", rows}}.dump() << "\n";
        emit(out_path, os.str());
    } else if (c_phi->parsed()) {
        auto F = make_density(d_phi);
        auto taus = expand_range(tau_phi);
        json rows = json::array();
        if (format == "csv") os << "tau,phi\n";
        for (double t : taus) {
            double v = helmdisp::dispersion::phi_hat(F, b_phi, t);
            if (format == "csv")
                os << format17(t) << "," << format17(v) << "\n";
            else
                rows.push_back({{"tau", t}, {"phi", v}});
        }
        if (format == "json")
            os << json{{"schema", 1}, {"b", b_phi}, {"values", rows}}.dump() << "\n";
        emit(out_path, os.str());
    } else if (c_dec->parsed()) {
        helmdisp::scatdata::AtomicSpectrum atoms =
            atoms_dec.empty()
                ? helmdisp::scatdata::unit_comb(k_dec)
                : helmdisp::io::spectrum_from_json(
                      json::parse(helmdisp::io::read_text_file(atoms_dec)));
        auto phi = helmdisp::scatdata::make_standard_bump(helmdisp::scatdata::NormMode::UnitL2);
        auto d = helmdisp::periodic::h1_periodic_decompose(atoms, phi, eps_dec, y_dec);
        if (format == "json") {
            os << json{{"schema", 1},
                       {"eps", d.eps},
                       {"y", y_dec},
                       {"singular", d.singular_value},
                       {"stable", d.stable_value},
                       {"total", d.total}}
                      .dump()
               << "\n";
        } else {
            os << "eps,y,singular,stable,total\n"
               << format17(d.eps) << "," << format17(y_dec) << ","
               << format17(d.singular_value) << "," << format17(d.stable_value) << ","
               << format17(d.total) << "\n";
        }
        emit(out_path, os.str());
    } else if (c_reg->parsed()) {
        helmdisp::scatdata::AtomicSpectrum atoms =
            atoms_reg.empty()
                ? helmdisp::scatdata::unit_comb(k_reg)
                : helmdisp::io::spectrum_from_json(
                      json::parse(helmdisp::io::read_text_file(atoms_reg)));
        auto phi =
            helmdisp::scatdata::make_standard_bump(helmdisp::scatdata::NormMode::UnitIntegral);
        auto ys = expand_range(y_reg);
        json rows = json::array();
        if (format == "csv") os << "y,regular_eps,regular_limit\n";
        for (double y : ys) {
            double re = helmdisp::periodic::regular_part_eps(atoms, phi, eps_reg, b_reg, y);
            double rl = helmdisp::periodic::regular_limit(atoms, b_reg, y);
            if (format == "csv")
                os << format17(y) << "," << format17(re) << "," << format17(rl) << "\n";
            else
                rows.push_back({{"y", y}, {"regular_eps", re}, {"regular_limit", rl}});
        }
        if (format == "json")
            os << json{{"schema", 1}, {"b", b_reg}, {"eps", eps_reg}, {"values", rows}}.dump()
               << "\n";
        emit(out_path, os.str());
    } else if (c_tal->parsed()) {
        auto set = helmdisp::schrlimit::hbper_time_atoms(b_tal, qmax, window_tal[0],
                                                         window_tal[1]);
        if (format == "json")
            os << helmdisp::io::measure_to_json(set.to_measure("hbper_time")).dump() << "\n";
        else
            os << helmdisp::io::rational_to_csv(set);
        emit(out_path, os.str());
    } else if (c_lim->parsed()) {
        auto mu = helmdisp::schrlimit::rescaled_Rk_atoms(b_lim, k_lim, eps_exp);
        auto nu = helmdisp::schrlimit::hbper_freq_atoms(b_lim, rmax);
        helmdisp::schrlimit::SobolevParams params;
        params.s = s_lim;
        double dist = helmdisp::schrlimit::sobolev_distance(mu, nu, params);
        if (format == "json")
            os << json{{"schema", 1}, {"b", b_lim}, {"k", k_lim}, {"distance", dist}}.dump()
               << "\n";
        else
            os << format17(dist) << "\n";
        emit(out_path, os.str());
    } else if (c_ver->parsed()) {
        auto results = helmdisp::acceptance::run_all();
        return helmdisp::acceptance::all_passed(results) ? 0 : 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const helmdisp::io::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
