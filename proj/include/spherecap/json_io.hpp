#pragma once

#include "spherecap/coeffs.hpp"
#include "spherecap/remainders.hpp"
#include "spherecap/sobolev.hpp"
#include "spherecap/sphere2.hpp"
#include "spherecap/weights.hpp"

#include "json.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace spherecap {

// Serialization. Float fields round-trip bit-exact through nlohmann's
// shortest-representation printing.

nlohmann::json weight_to_json(const Weight &w);
// Marker fields t0/T0 may be omitted for constant/power/table weights (the
// default markers are filled in); the indicator kind requires them.
Weight weight_from_json(const nlohmann::json &j);

// {"d":, "L":, "blocks": [[...], ...]}, degree-major; entries are plain
// numbers, or [re, im] when an imaginary part is present.
nlohmann::json coeffs_to_json(const HarmonicCoeffs &c);
HarmonicCoeffs coeffs_from_json(const nlohmann::json &j);

nlohmann::json report_to_json(const NormReport &r);
NormReport report_from_json(const nlohmann::json &j);

nlohmann::json sweep_to_json(const SweepResult &r);

Weight load_weight(const std::string &path);
HarmonicCoeffs load_coeffs(const std::string &path);
// path "" or "-" writes to stdout
void save_json(const std::string &path, const nlohmann::json &j);

// `theta,phi,value` rows in grid order
void write_samples_csv(std::ostream &os, const SphericalGrid &g,
                       const std::vector<double> &values);
std::vector<std::array<double, 3>> read_samples_csv(std::istream &is);

} // namespace spherecap
