#pragma once

// JSON run configuration: a base scenario, optional sweep axes and output
// switches.  A config names a profile it starts from; its own keys are merged
// on top.  Unknown keys are rejected everywhere.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ringmem/protocols.hpp"

namespace ringmem {

struct NamedState {
  std::string label;
  std::vector<FockTerm> terms;
};

struct SweepCase {
  std::string label;
  nlohmann::json scenario = nlohmann::json::object();
  nlohmann::json physical = nlohmann::json::object();
};

struct SweepSpec {
  std::vector<SweepCase> cases;
  std::vector<NamedState> initial_state;
  std::vector<bool> interactions;
  std::vector<double> coupling_ratio;
  std::vector<int> winding_number;
  std::vector<int> oam_index;
  std::vector<double> t_off_offset;
  std::vector<double> storage_time;
};

// Which sweep points get per-point files (trajectory, density matrices,
// Wigner grids).
struct DetailSelector {
  enum class Mode { All, None, Match } mode = Mode::All;
  nlohmann::json match = nlohmann::json::object();  // axis name -> value
};

struct OutputOptions {
  bool trajectory = true;
  bool density_matrices = true;
  bool wigner = false;
  bool plots = true;
  DetailSelector detail;
  PhaseSpaceGrid wigner_grid;
};

struct RunRequest {
  std::string profile;
  std::string description;
  ScenarioConfig base;
  std::string base_state_label;
  SweepSpec sweep;
  OutputOptions outputs;
  nlohmann::json resolved;  // canonical form of everything above
  std::string digest;       // SHA-256 of resolved.dump()
};

// Sweep axis names, outermost first.  The x axis of a series is the innermost
// axis with more than one value.
inline const std::vector<std::string> kSweepAxes = {
    "case",          "initial_state", "interactions", "coupling_ratio",
    "winding_number", "oam_index",    "t_off_offset", "storage_time"};

struct SweepPoint {
  std::size_t index = 0;
  ScenarioConfig config;
  std::string case_label;
  std::string state_label;
  nlohmann::json coordinates;  // axis name -> value for every axis
};

// Throws Error(Config) on parse errors, unknown keys or invalid values.
RunRequest parse_config(const nlohmann::json& document, const std::string& profile_override = "");
RunRequest parse_config_text(const std::string& text, const std::string& profile_override = "");
RunRequest load_config(const std::filesystem::path& path, const std::string& profile_override = "");

std::vector<SweepPoint> expand(const RunRequest& request);
std::size_t point_count(const RunRequest& request);

// start, ..., stop with per_decade points per decade; stop is always included.
std::vector<double> log_grid(double start, double stop, int per_decade);

std::string sha256_hex(const std::string& data);

// Built-in profiles.
std::vector<std::string> profile_names();
// Throws Error(Config) for unknown names.
const std::string& profile_text(const std::string& name);

// Resolved JSON forms, also used by the manifest.
nlohmann::json to_json(const PhysicalParams& p);
nlohmann::json to_json(const ScenarioConfig& c);
nlohmann::json to_json(const ConstraintReport& r);

}  // namespace ringmem
