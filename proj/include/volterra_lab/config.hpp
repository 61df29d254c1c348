#pragma once

// Experiment settings, optionally preset from a "key = value" text file.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "volterra_lab/series_io.hpp"
#include "volterra_lab/space_norms.hpp"

namespace vlab {

struct LabConfig {
  std::string grid = "default";
  double window_lo = 1.0 / 50.0;
  double window_hi = 50.0;
  double stability = 10.0;            // max/min of a ratio column across a family
  double divergence_threshold = 0.05; // slope of value vs log N
  double ceiling = 100.0;             // uniform-constant sweeps
  double log_window = 8.0;            // q_log_sum vs q_log_integral
  std::uint64_t seed = 20240611;
  std::size_t zgrid_depth = 14;       // positive-axis points 1 - 2^{-j}, j <= depth
  std::size_t kernel_K = 0;           // 0: max(4 deg g, 4096)
  std::size_t max_dual_degree = 4096; // skip slice norms for larger symbols
  bool extra_norms = true;            // Dirichlet and Hardy dual tests in equivalence runs

  GridSpec grid_spec() const { return GridSpec::preset(grid); }

  void set(const std::string& key, const std::string& value) {
    auto num = [&] {
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(value, &pos);
      } catch (const std::exception&) {
        throw parse_error("config: '" + key + "' expects a number");
      }
      if (pos != value.size()) throw parse_error("config: '" + key + "' expects a number");
      return v;
    };
    auto count = [&] {
      const double v = num();
      if (v < 0.0 || v != std::floor(v)) throw parse_error("config: '" + key + "' expects a nonnegative integer");
      return static_cast<std::size_t>(v);
    };
    if (key == "grid") {
      try {
        GridSpec::preset(value);
      } catch (const std::invalid_argument& e) {
        throw parse_error(std::string("config: ") + e.what());
      }
      grid = value;
    } else if (key == "window_lo") {
      window_lo = num();
    } else if (key == "window_hi") {
      window_hi = num();
    } else if (key == "stability") {
      stability = num();
    } else if (key == "divergence_threshold") {
      divergence_threshold = num();
    } else if (key == "ceiling") {
      ceiling = num();
    } else if (key == "log_window") {
      log_window = num();
    } else if (key == "seed") {
      seed = count();
    } else if (key == "zgrid_depth") {
      zgrid_depth = count();
    } else if (key == "kernel_K") {
      kernel_K = count();
    } else if (key == "max_dual_degree") {
      max_dual_degree = count();
    } else if (key == "extra_norms") {
      if (value != "true" && value != "false") throw parse_error("config: extra_norms expects true or false");
      extra_norms = value == "true";
    } else {
      throw parse_error("config: unknown key '" + key + "'");
    }
  }

  nlohmann::ordered_json to_json() const {
    return {{"grid", grid},
            {"window_lo", window_lo},
            {"window_hi", window_hi},
            {"stability", stability},
            {"divergence_threshold", divergence_threshold},
            {"ceiling", ceiling},
            {"log_window", log_window},
            {"seed", seed},
            {"zgrid_depth", zgrid_depth},
            {"kernel_K", kernel_K},
            {"max_dual_degree", max_dual_degree},
            {"extra_norms", extra_norms}};
  }
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline void apply_config_text(LabConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw parse_error("config: line " + std::to_string(lineno) + " is not key = value");
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

inline void load_config_file(LabConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str());
}

} // namespace vlab
