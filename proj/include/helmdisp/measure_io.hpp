#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "helmdisp/periodic.hpp"
#include "helmdisp/scatdata.hpp"
#include "helmdisp/schrlimit.hpp"

namespace helmdisp::io {

/// Filesystem failures, distinct from validation errors.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// 17-significant-digit formatting (round-trip exact for doubles).
std::string format17(double v);

nlohmann::json spectrum_to_json(const scatdata::AtomicSpectrum& a);
scatdata::AtomicSpectrum spectrum_from_json(const nlohmann::json& j);

nlohmann::json measure_to_json(const periodic::AtomicMeasure& m);
periodic::AtomicMeasure measure_from_json(const nlohmann::json& j);

std::string measure_to_csv(const periodic::AtomicMeasure& m);           // header "loc,w"
std::string rational_to_csv(const schrlimit::RationalAtomSet& s);       // header "t,weight"

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace helmdisp::io
