// simulate: run a configuration (or a built-in profile) and write the results.
//
//   simulate <config> [--out DIR] [--profile NAME] [--workers N] [--seed N]
//
// RINGMEM_OUT_DIR and RINGMEM_WORKERS stand in for --out and --workers.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "CLI11.hpp"
#include "ringmem/ringmem.h"

namespace {

const char* env(const char* name) {
  const char* v = std::getenv(name);
  return v && *v ? v : nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ring-BEC OAM quantum memory simulator"};
  app.set_version_flag("--version", ringmem_version());

  std::string config_path;
  std::string out_dir = "out";
  std::string profile;
  unsigned workers = 0;
  std::uint64_t seed = 0;
  bool list_profiles = false;

  app.add_option("config", config_path, "JSON run configuration; omit to run the profile alone")
      ->check(CLI::ExistingFile);
  auto* out_opt = app.add_option("-o,--out", out_dir, "output directory")->capture_default_str();
  app.add_option("-p,--profile", profile, "built-in profile to start from");
  auto* workers_opt = app.add_option("-j,--workers", workers, "worker threads, 0 = all cores");
  app.add_option("--seed", seed, "seed for randomized utilities; recorded in the manifest");
  app.add_flag("--list-profiles", list_profiles, "print the built-in profile names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list_profiles) {
    for (std::size_t i = 0; i < ringmem_profile_count(); ++i)
      std::printf("%s\n", ringmem_profile_name(i));
    return 0;
  }

  if (out_opt->count() == 0)
    if (const char* v = env("RINGMEM_OUT_DIR")) out_dir = v;
  if (workers_opt->count() == 0)
    if (const char* v = env("RINGMEM_WORKERS")) {
      char* end = nullptr;
      const unsigned long n = std::strtoul(v, &end, 10);
      if (*end != '\0') {
        std::fprintf(stderr, "error: RINGMEM_WORKERS must be a non-negative integer, got '%s'\n", v);
        return 2;
      }
      workers = static_cast<unsigned>(n);
    }

  ringmem_config* config = nullptr;
  const ringmem_status loaded =
      config_path.empty() ? ringmem_config_parse("", profile.c_str(), &config)
                          : ringmem_config_load(config_path.c_str(), profile.c_str(), &config);
  if (loaded != RINGMEM_OK) {
    std::fprintf(stderr, "error: %s\n", ringmem_last_error());
    return loaded == RINGMEM_ERROR_CONFIG ? 2 : 1;
  }

  std::fprintf(stderr, "profile %s, %zu point(s), digest %.12s\n", ringmem_config_profile(config),
               ringmem_config_point_count(config), ringmem_config_digest(config));

  ringmem_manifest* manifest = nullptr;
  const ringmem_status ran = ringmem_run(config, out_dir.c_str(), workers, seed, &manifest);
  ringmem_config_free(config);
  if (!manifest) {
    std::fprintf(stderr, "error: %s\n", ringmem_last_error());
    return ran == RINGMEM_ERROR_CONFIG ? 2 : 1;
  }

  const int code = ringmem_manifest_exit_code(manifest);
  std::fprintf(stderr, "%s: %zu of %zu point(s) failed, %zu file(s) in %s, %.1f s\n",
               ringmem_manifest_status(manifest), ringmem_manifest_failed_count(manifest),
               ringmem_manifest_point_count(manifest), ringmem_manifest_output_count(manifest),
               out_dir.c_str(), ringmem_manifest_wall_time(manifest));
  if (code != 0) std::fprintf(stderr, "see %s/manifest.json for per-point errors\n", out_dir.c_str());
  ringmem_manifest_free(manifest);
  return code;
}
