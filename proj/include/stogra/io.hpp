#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "stogra/background.hpp"
#include "stogra/deviation.hpp"
#include "stogra/interference.hpp"

namespace stogra {

// 17 significant digits, '.' decimal separator; round-trips doubles exactly.
std::string format_g17(double value);

// CSV with mandatory header row and '\n' line endings. Rows are columns of
// equal length. An optional leading "# ..." comment line carries metadata.
std::string csv_table(const std::string& comment, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

nlohmann::json ensemble_to_json(const BackgroundEnsemble& ensemble);
BackgroundEnsemble ensemble_from_json(const nlohmann::json& j, double h_max = kDefaultHMax);

nlohmann::json profile_to_json(const IntensityProfile& profile);

std::string trajectory_csv(const std::vector<DeviationState>& states,
                           const std::string& comment);
std::string phase_trace_csv(const PhaseTrace& trace, const std::string& comment);
std::string profile_csv(const IntensityProfile& profile, const std::string& comment);

}  // namespace stogra
