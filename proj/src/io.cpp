#include "stogra/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace stogra {

std::string format_g17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string csv_table(const std::string& comment, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size())
    throw DimensionError("csv_table: header and column counts differ");
  std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows) throw DimensionError("csv_table: ragged columns");

  std::ostringstream out;
  if (!comment.empty()) out << "# " << comment << "\n";
  for (std::size_t c = 0; c < header.size(); ++c)
    out << header[c] << (c + 1 < header.size() ? "," : "");
  out << "\n";
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      out << format_g17(columns[c][r]) << (c + 1 < columns.size() ? "," : "");
    out << "\n";
  }
  return out.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path + "' for writing");
  f << contents;
  if (!f) throw ConfigError("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

nlohmann::json ensemble_to_json(const BackgroundEnsemble& ensemble) {
  nlohmann::json j;
  j["seed"] = ensemble.seed;
  j["spectrum"] = {{"f_min", ensemble.spectrum.f_min_hz},
                   {"f_max", ensemble.spectrum.f_max_hz},
                   {"exponent", ensemble.spectrum.exponent},
                   {"rms", ensemble.spectrum.rms}};
  nlohmann::json modes = nlohmann::json::array();
  for (const auto& mode : ensemble.modes) {
    nlohmann::json m;
    m["e"] = mode.polarization.m;  // 16 numbers, row-major
    m["k"] = mode.wave_vector.c;
    m["phase0"] = mode.phase0;
    modes.push_back(std::move(m));
  }
  j["modes"] = std::move(modes);
  return j;
}

BackgroundEnsemble ensemble_from_json(const nlohmann::json& j, double h_max) {
  BackgroundEnsemble ensemble;
  try {
    ensemble.seed = j.at("seed").get<std::uint64_t>();
    const auto& sp = j.at("spectrum");
    ensemble.spectrum.f_min_hz = sp.at("f_min").get<double>();
    ensemble.spectrum.f_max_hz = sp.at("f_max").get<double>();
    ensemble.spectrum.exponent = sp.at("exponent").get<double>();
    ensemble.spectrum.rms = sp.at("rms").get<double>();
    int id = 0;
    for (const auto& m : j.at("modes")) {
      PlaneWaveMode mode;
      mode.polarization.m = m.at("e").get<std::array<double, 16>>();
      mode.wave_vector.c = m.at("k").get<std::array<double, 4>>();
      mode.phase0 = m.at("phase0").get<double>();
      mode.mode_id = id++;
      validate_mode(mode, h_max);
      ensemble.modes.push_back(mode);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed ensemble document: ") + e.what());
  }
  return ensemble;
}

nlohmann::json profile_to_json(const IntensityProfile& profile) {
  nlohmann::json j;
  j["geometry"] = {{"slit_separation", profile.geometry.slit_separation},
                   {"screen_distance", profile.geometry.screen_distance},
                   {"de_broglie_wavelength", profile.geometry.de_broglie_wavelength},
                   {"screen_points", profile.geometry.screen_points},
                   {"screen_half_width", profile.geometry.screen_half_width}};
  j["n_realizations"] = profile.n_realizations;
  j["seed"] = profile.seed;
  return j;
}

std::string trajectory_csv(const std::vector<DeviationState>& states,
                           const std::string& comment) {
  std::vector<double> tau, ell, rate;
  tau.reserve(states.size());
  ell.reserve(states.size());
  rate.reserve(states.size());
  for (const auto& s : states) {
    tau.push_back(s.tau);
    ell.push_back(s.ell);
    rate.push_back(s.ell_rate);
  }
  return csv_table(comment, {"tau", "ell", "ell_rate"}, {tau, ell, rate});
}

std::string phase_trace_csv(const PhaseTrace& trace, const std::string& comment) {
  return csv_table(comment, {"t", "phi"}, {trace.times, trace.phi});
}

std::string profile_csv(const IntensityProfile& profile, const std::string& comment) {
  return csv_table(comment, {"x_m", "intensity"}, {profile.positions, profile.intensity});
}

}  // namespace stogra
