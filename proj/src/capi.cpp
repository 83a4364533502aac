#include "ringmem/ringmem.h"

#include <cmath>
#include <string>

#include "ringmem/config.hpp"
#include "ringmem/runner.hpp"

struct ringmem_config {
  ringmem::RunRequest request;
  std::string resolved_text;
};

struct ringmem_manifest {
  ringmem::RunManifest manifest;
  std::string json_text;
};

struct ringmem_result {
  ringmem::PointOutcome outcome;
};

namespace {

thread_local std::string last_error;

ringmem_status fail(ringmem_status s, const std::string& message) {
  last_error = message;
  return s;
}

ringmem_status status_of(ringmem::ErrorKind k) {
  switch (k) {
    case ringmem::ErrorKind::Config: return RINGMEM_ERROR_CONFIG;
    case ringmem::ErrorKind::Propagation: return RINGMEM_ERROR_PROPAGATION;
    case ringmem::ErrorKind::Io: return RINGMEM_ERROR_IO;
    case ringmem::ErrorKind::InvalidArgument:
    case ringmem::ErrorKind::UnknownMode: return RINGMEM_ERROR_INVALID_ARGUMENT;
    default: return RINGMEM_ERROR_INTERNAL;
  }
}

template <class F>
ringmem_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const ringmem::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::exception& e) {
    return fail(RINGMEM_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(RINGMEM_ERROR_INTERNAL, "unknown exception");
  }
}

std::string opt(const char* s) { return s ? s : ""; }

ringmem_status make_config(ringmem::RunRequest request, ringmem_config** out) {
  auto* c = new ringmem_config{std::move(request), {}};
  c->resolved_text = c->request.resolved.dump(2);
  *out = c;
  return RINGMEM_OK;
}

}  // namespace

extern "C" {

const char* ringmem_version(void) { return RINGMEM_VERSION; }

const char* ringmem_last_error(void) { return last_error.c_str(); }

size_t ringmem_profile_count(void) { return ringmem::profile_names().size(); }

const char* ringmem_profile_name(size_t index) {
  static const std::vector<std::string> names = ringmem::profile_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

ringmem_status ringmem_config_load(const char* path, const char* profile, ringmem_config** out) {
  if (!path || !out) return fail(RINGMEM_ERROR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { return make_config(ringmem::load_config(path, opt(profile)), out); });
}

ringmem_status ringmem_config_parse(const char* text, const char* profile, ringmem_config** out) {
  if (!out) return fail(RINGMEM_ERROR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded(
      [&] { return make_config(ringmem::parse_config_text(opt(text), opt(profile)), out); });
}

size_t ringmem_config_point_count(const ringmem_config* config) {
  return config ? ringmem::point_count(config->request) : 0;
}

const char* ringmem_config_digest(const ringmem_config* config) {
  return config ? config->request.digest.c_str() : "";
}

const char* ringmem_config_profile(const ringmem_config* config) {
  return config ? config->request.profile.c_str() : "";
}

const char* ringmem_config_json(const ringmem_config* config) {
  return config ? config->resolved_text.c_str() : "";
}

void ringmem_config_free(ringmem_config* config) { delete config; }

ringmem_status ringmem_run(const ringmem_config* config, const char* out_dir, unsigned workers,
                           uint64_t seed, ringmem_manifest** out) {
  if (!config || !out_dir || !out) return fail(RINGMEM_ERROR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    ringmem::RunOptions options;
    options.out_dir = out_dir;
    options.workers = workers;
    options.seed = seed;
    auto* m = new ringmem_manifest{ringmem::run(config->request, options), {}};
    m->json_text = m->manifest.document.dump(2);
    *out = m;
    if (m->manifest.failed > 0)
      last_error = std::to_string(m->manifest.failed) + " of " +
                   std::to_string(m->manifest.points) + " sweep points failed";
    return static_cast<ringmem_status>(m->manifest.exit_code);
  });
}

int ringmem_manifest_exit_code(const ringmem_manifest* m) { return m ? m->manifest.exit_code : -1; }

const char* ringmem_manifest_status(const ringmem_manifest* m) {
  return m ? m->manifest.status.c_str() : "";
}

size_t ringmem_manifest_point_count(const ringmem_manifest* m) { return m ? m->manifest.points : 0; }

size_t ringmem_manifest_failed_count(const ringmem_manifest* m) { return m ? m->manifest.failed : 0; }

double ringmem_manifest_wall_time(const ringmem_manifest* m) {
  return m ? m->manifest.wall_time_s : 0.0;
}

size_t ringmem_manifest_output_count(const ringmem_manifest* m) {
  return m ? m->manifest.outputs.size() : 0;
}

const char* ringmem_manifest_output(const ringmem_manifest* m, size_t index) {
  if (!m || index >= m->manifest.outputs.size()) return nullptr;
  return m->manifest.outputs[index].c_str();
}

const char* ringmem_manifest_json(const ringmem_manifest* m) { return m ? m->json_text.c_str() : ""; }

void ringmem_manifest_free(ringmem_manifest* m) { delete m; }

ringmem_status ringmem_protocol_run(const ringmem_config* config, size_t point_index,
                                    ringmem_result** out) {
  if (!config || !out) return fail(RINGMEM_ERROR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const auto points = ringmem::expand(config->request);
    if (point_index >= points.size())
      return fail(RINGMEM_ERROR_INVALID_ARGUMENT, "point index out of range");
    auto outcome = ringmem::run_point(points[point_index], config->request.outputs, false);
    if (!outcome.ok)
      return fail(outcome.error_kind ? status_of(*outcome.error_kind) : RINGMEM_ERROR_INTERNAL,
                  outcome.error);
    *out = new ringmem_result{std::move(outcome)};
    return RINGMEM_OK;
  });
}

double ringmem_result_fidelity(const ringmem_result* r) { return r ? r->outcome.metrics.fidelity : 0.0; }

int ringmem_result_log_negativity(const ringmem_result* r, double* value) {
  if (!r || !r->outcome.metrics.log_negativity) return 0;
  if (value) *value = *r->outcome.metrics.log_negativity;
  return 1;
}

int ringmem_result_wigner_min(const ringmem_result* r, double* value) {
  if (!r || !r->outcome.metrics.wigner_min) return 0;
  if (value) *value = *r->outcome.metrics.wigner_min;
  return 1;
}

double ringmem_result_classical_bound(const ringmem_result* r) {
  return r ? r->outcome.metrics.classical_bound : 0.0;
}

void ringmem_result_times(const ringmem_result* r, double* t_off, double* t_on, double* t_read) {
  if (!r) return;
  if (t_off) *t_off = r->outcome.t_off;
  if (t_on) *t_on = r->outcome.t_on;
  if (t_read) *t_read = r->outcome.t_read;
}

int ringmem_result_constraints_ok(const ringmem_result* r) {
  return r && r->outcome.constraints.all_ok() ? 1 : 0;
}

void ringmem_result_free(ringmem_result* r) { delete r; }

double ringmem_bound_qubit_memory(int qubits) {
  try {
    return ringmem::classical_bound(ringmem::Benchmark::QubitMemory, qubits);
  } catch (const std::exception& e) {
    last_error = e.what();
    return std::nan("");
  }
}

double ringmem_bound_teleport(int dimension) {
  try {
    return ringmem::classical_bound(ringmem::Benchmark::Teleport, dimension);
  } catch (const std::exception& e) {
    last_error = e.what();
    return std::nan("");
  }
}

}  // extern "C"
