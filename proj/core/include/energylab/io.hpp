#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "energylab/setfun.hpp"
#include "energylab/verify.hpp"

namespace energylab {

// Set files: {"group": [n_1, ..., n_r], "elements": [sorted indices]}.
std::string set_to_json(const GSet& a);
GSet set_from_json(std::string_view text);

GSet load_set(const std::string& path);
void save_set(const GSet& a, const std::string& path);

// A JSON array of check results. "pass" is true, false, "report-only" or "skipped";
// "ratio" is null when undefined.
std::string report_to_json(const std::vector<CheckResult>& results);
// Same fields, one row per result, with a header line.
std::string report_to_csv(const std::vector<CheckResult>& results);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace energylab
