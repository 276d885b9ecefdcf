#include "helmdisp/measure_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace helmdisp::io {

using nlohmann::json;

std::string format17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json spectrum_to_json(const scatdata::AtomicSpectrum& a) {
    json atoms = json::array();
    for (const auto& [n, w] : a.coeffs)
        atoms.push_back({{"n", n}, {"re", w.real()}, {"im", w.imag()}});
    return json{{"schema", 1}, {"k", a.k}, {"atoms", atoms}};
}

scatdata::AtomicSpectrum spectrum_from_json(const json& j) {
    if (!j.contains("k") || !j.contains("atoms"))
        throw std::invalid_argument("spectrum_from_json: missing k or atoms");
    scatdata::AtomicSpectrum a(j.at("k").get<double>());
    for (const auto& e : j.at("atoms"))
        a.set(e.at("n").get<int>(),
              {e.at("re").get<double>(), e.value("im", 0.0)});
    return a;
}

json measure_to_json(const periodic::AtomicMeasure& m) {
    json atoms = json::array();
    for (const auto& a : m.atoms) atoms.push_back({{"loc", a.loc}, {"w", a.w}});
    return json{{"schema", 1}, {"label", m.label}, {"atoms", atoms}};
}

periodic::AtomicMeasure measure_from_json(const json& j) {
    periodic::AtomicMeasure m;
    m.label = j.value("label", "");
    for (const auto& e : j.at("atoms"))
        m.atoms.push_back({e.at("loc").get<double>(), e.at("w").get<double>()});
    return m;
}

std::string measure_to_csv(const periodic::AtomicMeasure& m) {
    std::ostringstream os;
    os << "loc,w\n";
    for (const auto& a : m.atoms) os << format17(a.loc) << "," << format17(a.w) << "\n";
    return os.str();
}

std::string rational_to_csv(const schrlimit::RationalAtomSet& s) {
    std::ostringstream os;
    os << "t,weight\n";
    for (const auto& a : s.atoms)
        os << format17(static_cast<double>(a.p) / a.q) << "," << format17(a.weight) << "\n";
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << content;
    if (!f) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace helmdisp::io
