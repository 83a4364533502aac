#pragma once

// Sweep execution: runs every point of a request on a worker pool and writes
// CSV, JSON and SVG outputs plus a manifest into an output directory.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ringmem/config.hpp"

namespace ringmem {

struct RunOptions {
  std::filesystem::path out_dir = "out";
  unsigned workers = 0;   // 0: hardware concurrency
  std::uint64_t seed = 0; // recorded only; the dynamics are deterministic
};

// Result of one sweep point, detached from the protocol objects so it can be
// handed between threads by value.
struct PointOutcome {
  SweepPoint point;
  bool detail = false;
  bool ok = false;
  std::optional<ErrorKind> error_kind;
  std::string error;
  std::optional<std::size_t> failed_segment;

  DerivedParams derived;
  ConstraintReport constraints;
  double t_off = 0;
  double t_on = 0;
  double t_read = 0;
  std::size_t samples = 0;  // trajectory sample count
  MetricsReport metrics;

  // Detail points only.
  std::vector<double> times;
  std::map<std::string, std::vector<double>> observables;
  std::optional<StateMatrix> rho_initial;
  std::optional<StateMatrix> rho_retrieved;
  std::optional<WignerFunction> wigner_initial;
  std::optional<WignerFunction> wigner_retrieved;
};

bool selected(const DetailSelector& selector, const SweepPoint& point);

// Never throws for failures inside the protocol; they are recorded.
PointOutcome run_point(const SweepPoint& point, const OutputOptions& outputs, bool detail,
                       const IntegratorOptions& integrator = {});

struct RunManifest {
  std::string profile;
  std::string config_digest;
  std::string version;
  std::string status;  // "success", "partial" or "failed"
  int exit_code = 0;   // 0, 3 (some points failed) or 4 (all failed)
  std::size_t points = 0;
  std::size_t failed = 0;
  double wall_time_s = 0;
  std::vector<std::string> outputs;  // relative to the output directory
  nlohmann::json document;           // manifest.json contents
};

// Throws Error(Io) when the output directory cannot be written.
RunManifest run(const RunRequest& request, const RunOptions& options);

}  // namespace ringmem
