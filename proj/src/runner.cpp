#include "ringmem/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <set>
#include <thread>

#include "ringmem/emit.hpp"
#include "ringmem/svg.hpp"

namespace ringmem {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::UnknownMode: return "unknown_mode";
    case ErrorKind::NotHermitian: return "not_hermitian";
    case ErrorKind::NotPositive: return "not_positive";
    case ErrorKind::Propagation: return "propagation";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

bool single_mode(ScenarioKind k) {
  return k == ScenarioKind::Single || k == ScenarioKind::FockSeries;
}

bool same_value(const json& a, const json& b) {
  if (a.is_number() && b.is_number()) {
    const double x = a.get<double>(), y = b.get<double>();
    return std::abs(x - y) <= 1e-9 * std::max({1e-300, std::abs(x), std::abs(y)});
  }
  return a == b;
}

json derived_json(const DerivedParams& d) {
  return {{"moment_of_inertia", d.moment_of_inertia},
          {"omega_p", d.omega_p},
          {"omega_c", d.omega_c},
          {"omega_d", d.omega_d},
          {"lattice_depth", d.lattice_depth},
          {"bare_coupling", d.bare_coupling},
          {"steady_amplitude", d.steady_amplitude},
          {"boosted_coupling", d.boosted_coupling},
          {"interaction_strength", d.interaction_strength},
          {"interaction_shift", d.interaction_shift},
          {"swap_time", d.swap_time},
          {"control_power", d.control_power}};
}

// "2/3" style label for small-denominator fractions.
std::string fraction_label(double v) {
  for (int d = 1; d <= 12; ++d) {
    const double n = v * d;
    if (std::abs(n - std::round(n)) < 1e-12)
      return d == 1 ? format_number(std::round(n))
                    : std::to_string(static_cast<long>(std::lround(n))) + "/" + std::to_string(d);
  }
  return format_number(v);
}

std::string slug(const std::string& s) {
  std::string out;
  for (char c : s) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_';
    out += keep ? c : '_';
  }
  return out;
}

std::string coordinate_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_number(v.get<double>());
  return v.dump();
}

std::string optional_cell(const std::optional<double>& v) { return v ? csv_cell(*v) : ""; }

std::string axis_label(const std::string& axis) {
  if (axis == "storage_time") return "storage time (s)";
  if (axis == "t_off_offset") return "write pulse offset (s)";
  if (axis == "oam_index") return "OAM index l";
  if (axis == "winding_number") return "winding number L_p";
  if (axis == "coupling_ratio") return "G~ / gamma_0";
  return axis;
}

class Writer {
 public:
  explicit Writer(fs::path root) : root_(std::move(root)) {}

  std::string text(const std::string& name, const std::string& content) {
    write_text(root_ / name, content);
    files_.push_back(name);
    return name;
  }

  std::vector<std::string> density(const std::string& stem, const DensityMatrixView& view,
                                   const std::string& title) {
    emit_density_matrix(view, root_ / stem, title);
    files_.push_back(stem + ".json");
    files_.push_back(stem + ".svg");
    return {stem + ".json", stem + ".svg"};
  }

  const std::vector<std::string>& files() const { return files_; }

 private:
  fs::path root_;
  std::vector<std::string> files_;
};

std::vector<std::string> emit_wigner(Writer& w, const std::string& stem, const WignerFunction& wf,
                                     const std::string& title) {
  CsvTable t({"x", "p", "w"});
  for (int j = 0; j < wf.grid.np; ++j)
    for (int i = 0; i < wf.grid.nx; ++i)
      t.add_row({csv_cell(wf.grid.x(i)), csv_cell(wf.grid.p(j)), csv_cell(wf.at(i, j))});
  return {w.text(stem + ".csv", t.str()),
          w.text(stem + ".svg", svg::heatmap(wf.values, wf.grid.nx, wf.grid.np, wf.grid.x_min,
                                             wf.grid.x_max, wf.grid.p_min, wf.grid.p_max,
                                             title))};
}

std::vector<std::string> emit_detail(Writer& w, const PointOutcome& o, const OutputOptions& out,
                                     const std::string& prefix) {
  std::vector<std::string> files;
  const auto& cfg = o.point.config;
  auto append = [&](std::vector<std::string> more) {
    files.insert(files.end(), more.begin(), more.end());
  };

  if (out.trajectory && !o.times.empty()) {
    std::vector<std::string> columns;
    const auto space = scenario_space(cfg.kind, cfg.cutoff);
    for (const auto& m : space.modes()) columns.push_back("n_" + m.label);
    columns.push_back("trace");
    columns.push_back("purity");
    std::vector<std::string> header{"t"};
    header.insert(header.end(), columns.begin(), columns.end());
    CsvTable t(header);
    for (std::size_t k = 0; k < o.times.size(); ++k) {
      std::vector<std::string> row{csv_cell(o.times[k])};
      for (const auto& c : columns) row.push_back(csv_cell(o.observables.at(c)[k]));
      t.add_row(std::move(row));
    }
    files.push_back(w.text(prefix + "_trajectory.csv", t.str()));

    svg::LinePlot plot;
    plot.title = "Mode occupations, point " + std::to_string(o.point.index);
    plot.x_label = "t (s)";
    plot.y_label = "mean occupation";
    plot.y_min = 0.0;
    for (const auto& c : columns) {
      if (c.rfind("n_", 0) != 0) continue;
      plot.series.push_back({c, o.times, o.observables.at(c), false});
    }
    plot.series.push_back({"trace", o.times, o.observables.at("trace"), true});
    plot.bands = {{0.0, o.t_off, "write"}, {o.t_off, o.t_on, "store"}, {o.t_on, o.t_read, "read"}};
    files.push_back(w.text(prefix + "_trajectory.svg", svg::line_plot(plot)));
  }

  if (out.density_matrices && o.rho_initial && o.rho_retrieved) {
    append(w.density(prefix + "_rho_initial", density_matrix_view(*o.rho_initial, cfg.kind),
                     "Initial density matrix"));
    append(w.density(prefix + "_rho_retrieved", density_matrix_view(*o.rho_retrieved, cfg.kind),
                     "Retrieved density matrix"));
  }

  if (o.wigner_initial && o.wigner_retrieved) {
    append(emit_wigner(w, prefix + "_wigner_initial", *o.wigner_initial, "Initial Wigner function"));
    append(emit_wigner(w, prefix + "_wigner_retrieved", *o.wigner_retrieved,
                       "Retrieved Wigner function"));
  }
  return files;
}

// The innermost varying numeric axis, used as the x axis of series outputs.
std::optional<std::string> series_axis(const std::set<std::string>& varying) {
  for (const char* a : {"storage_time", "t_off_offset", "oam_index", "winding_number", "coupling_ratio"})
    if (varying.count(a)) return std::string(a);
  return std::nullopt;
}

struct SeriesGroup {
  std::string label;
  std::string file_stem;
  std::vector<const PointOutcome*> points;
};

std::vector<SeriesGroup> group_points(const std::vector<PointOutcome>& outcomes,
                                      const std::set<std::string>& varying, const std::string& x) {
  // Axes that only follow the case label add nothing to the group name.
  std::vector<std::string> keys;
  for (const auto& axis : kSweepAxes) {
    if (axis == x || !varying.count(axis)) continue;
    if (axis != "case" && varying.count("case")) {
      std::map<std::string, json> per_case;
      bool follows = true;
      for (const auto& o : outcomes) {
        const auto& c = o.point.case_label;
        const auto& v = o.point.coordinates.at(axis);
        auto [it, fresh] = per_case.emplace(c, v);
        if (!fresh && !same_value(it->second, v)) follows = false;
      }
      if (follows) continue;
    }
    keys.push_back(axis);
  }

  std::vector<SeriesGroup> groups;
  std::map<std::string, std::size_t> where;
  for (const auto& o : outcomes) {
    std::string label, stem;
    for (const auto& k : keys) {
      const std::string v = coordinate_text(o.point.coordinates.at(k));
      label += (label.empty() ? "" : ", ") + (k == "case" ? v : k + " = " + v);
      stem += (stem.empty() ? "" : "_") + (k == "case" ? slug(v) : slug(k + "-" + v));
    }
    auto [it, fresh] = where.emplace(label, groups.size());
    if (fresh) groups.push_back({label.empty() ? "all points" : label, stem, {}});
    groups[it->second].points.push_back(&o);
  }
  return groups;
}

void emit_series(Writer& w, const std::vector<PointOutcome>& outcomes, const OutputOptions& out,
                 json& doc) {
  std::set<std::string> varying;
  for (const auto& axis : kSweepAxes)
    for (const auto& o : outcomes)
      if (!same_value(o.point.coordinates.at(axis), outcomes.front().point.coordinates.at(axis)))
        varying.insert(axis);
  const auto x = series_axis(varying);
  if (!x) return;

  bool has_en = false, has_w = false;
  std::set<double> bounds;
  for (const auto& o : outcomes) {
    if (!o.ok) continue;
    has_en = has_en || o.metrics.log_negativity.has_value();
    has_w = has_w || o.metrics.wigner_min.has_value();
    bounds.insert(o.metrics.classical_bound);
  }

  const auto groups = group_points(outcomes, varying, *x);
  json series_doc = json::array();
  std::vector<std::string> header{*x, "fidelity"};
  if (has_en) header.push_back("log_negativity");
  if (has_w) header.push_back("wigner_min");
  header.push_back("classical_bound");
  header.push_back("status");

  for (const auto& g : groups) {
    CsvTable t(header);
    for (const auto* o : g.points) {
      const double nan = std::nan("");
      std::vector<std::string> row{csv_cell(o->point.coordinates.at(*x).get<double>()),
                                   csv_cell(o->ok ? o->metrics.fidelity : nan)};
      if (has_en) row.push_back(o->ok ? optional_cell(o->metrics.log_negativity) : "nan");
      if (has_w) row.push_back(o->ok ? optional_cell(o->metrics.wigner_min) : "nan");
      row.push_back(csv_cell(o->ok ? o->metrics.classical_bound : nan));
      row.push_back(o->ok ? "ok" : "failed");
      t.add_row(std::move(row));
    }
    const std::string name = g.file_stem.empty() ? "series.csv" : "series_" + g.file_stem + ".csv";
    w.text(name, t.str());
    series_doc.push_back({{"label", g.label}, {"file", name}, {"rows", t.rows()}});
  }
  doc["series"] = {{"x", *x}, {"groups", series_doc}};
  if (!out.plots) return;

  auto plot_metric = [&](const std::string& file, const std::string& title,
                         const std::string& y_label, auto pick, bool with_bounds,
                         std::optional<double> y_min, std::optional<double> y_max) {
    svg::LinePlot p;
    p.title = title;
    p.x_label = axis_label(*x);
    p.y_label = y_label;
    p.log_x = *x == "storage_time";
    p.y_min = y_min;
    p.y_max = y_max;
    for (const auto& g : groups) {
      svg::Series s{g.label, {}, {}, false};
      for (const auto* o : g.points) {
        s.x.push_back(o->point.coordinates.at(*x).get<double>());
        const std::optional<double> v = o->ok ? pick(*o) : std::nullopt;
        s.y.push_back(v ? *v : std::nan(""));
      }
      p.series.push_back(std::move(s));
    }
    if (with_bounds)
      for (double b : bounds) p.hlines.push_back({b, "classical bound " + fraction_label(b)});
    w.text(file, svg::line_plot(p));
  };

  plot_metric("fidelity.svg", "Retrieval fidelity", "fidelity",
              [](const PointOutcome& o) { return std::optional<double>(o.metrics.fidelity); },
              true, 0.0, 1.0);
  if (has_en)
    plot_metric("log_negativity.svg", "Logarithmic negativity after readout", "E_N",
                [](const PointOutcome& o) { return o.metrics.log_negativity; }, false, 0.0,
                std::nullopt);
  if (has_w)
    plot_metric("wigner_min.svg", "Minimum of the retrieved Wigner function", "min W",
                [](const PointOutcome& o) { return o.metrics.wigner_min; }, false, std::nullopt,
                std::nullopt);
}

std::string summary_csv(const std::vector<PointOutcome>& outcomes) {
  std::vector<std::string> header{"index"};
  header.insert(header.end(), kSweepAxes.begin(), kSweepAxes.end());
  for (const char* c : {"status", "fidelity", "log_negativity", "classical_bound", "wigner_min",
                        "t_off", "t_on", "t_read", "boosted_coupling", "constraints_ok", "error"})
    header.emplace_back(c);
  CsvTable t(header);
  for (const auto& o : outcomes) {
    std::vector<std::string> row{std::to_string(o.point.index)};
    for (const auto& axis : kSweepAxes)
      row.push_back(csv_cell(coordinate_text(o.point.coordinates.at(axis))));
    row.push_back(o.ok ? "ok" : "failed");
    row.push_back(o.ok ? csv_cell(o.metrics.fidelity) : "");
    row.push_back(o.ok ? optional_cell(o.metrics.log_negativity) : "");
    row.push_back(o.ok ? csv_cell(o.metrics.classical_bound) : "");
    row.push_back(o.ok ? optional_cell(o.metrics.wigner_min) : "");
    row.push_back(csv_cell(o.t_off));
    row.push_back(csv_cell(o.t_on));
    row.push_back(csv_cell(o.t_read));
    row.push_back(csv_cell(o.derived.boosted_coupling));
    row.push_back(o.constraints.all_ok() ? "true" : "false");
    row.push_back(csv_cell(o.error));
    t.add_row(std::move(row));
  }
  return t.str();
}

json outcome_json(const PointOutcome& o, const std::vector<std::string>& files) {
  json j = {{"index", o.point.index},
            {"coordinates", o.point.coordinates},
            {"status", o.ok ? "ok" : "failed"},
            {"t_off", o.t_off},
            {"t_on", o.t_on},
            {"t_read", o.t_read},
            {"samples", o.samples},
            {"derived", derived_json(o.derived)},
            {"constraints", to_json(o.constraints)},
            {"files", files}};
  if (o.ok) {
    json m = {{"fidelity", o.metrics.fidelity},
              {"classical_bound", o.metrics.classical_bound},
              {"mean_occupations", o.metrics.mean_occupations}};
    if (o.metrics.log_negativity) m["log_negativity"] = *o.metrics.log_negativity;
    if (o.metrics.wigner_min) m["wigner_min"] = *o.metrics.wigner_min;
    j["metrics"] = m;
  } else {
    j["error"] = {{"kind", o.error_kind ? kind_name(*o.error_kind) : "internal"},
                  {"message", o.error}};
    if (o.failed_segment) j["error"]["segment"] = *o.failed_segment;
  }
  return j;
}

}  // namespace

bool selected(const DetailSelector& selector, const SweepPoint& point) {
  switch (selector.mode) {
    case DetailSelector::Mode::All: return true;
    case DetailSelector::Mode::None: return false;
    case DetailSelector::Mode::Match:
      for (const auto& [axis, value] : selector.match.items())
        if (!point.coordinates.contains(axis) || !same_value(point.coordinates.at(axis), value))
          return false;
      return true;
  }
  return false;
}

PointOutcome run_point(const SweepPoint& point, const OutputOptions& outputs, bool detail,
                       const IntegratorOptions& integrator) {
  PointOutcome o;
  o.point = point;
  o.detail = detail;
  ScenarioConfig cfg = point.config;
  const bool wigner = outputs.wigner && single_mode(cfg.kind);
  if (wigner) {
    cfg.wigner = true;
    cfg.wigner_grid = outputs.wigner_grid;
  }
  try {
    o.derived = cfg.coupling_source == CouplingSource::Ratio
                    ? calibrate(cfg.physical, cfg.coupling_ratio)
                    : derive(cfg.physical);
    o.constraints = check_constraints(cfg.physical, o.derived);

    ProtocolResult r = run_protocol(cfg, integrator);
    o.derived = r.derived;
    o.constraints = r.constraints;
    o.t_off = r.t_off;
    o.t_on = r.t_on;
    o.t_read = r.t_read;
    o.samples = r.trajectory.times.size();
    o.metrics = r.metrics;
    if (detail) {
      if (outputs.trajectory) {
        o.times = std::move(r.trajectory.times);
        o.observables = std::move(r.trajectory.observables);
      }
      if (outputs.density_matrices) {
        o.rho_initial = r.rho_initial;
        o.rho_retrieved = r.rho_retrieved;
      }
      if (wigner) {
        o.wigner_initial = ringmem::wigner(r.rho_initial, cfg.wigner_grid);
        o.wigner_retrieved = ringmem::wigner(r.rho_retrieved, cfg.wigner_grid);
      }
    }
    o.ok = true;
  } catch (const PropagationError& e) {
    o.error_kind = e.kind();
    o.error = e.what();
    o.failed_segment = e.segment();
  } catch (const Error& e) {
    o.error_kind = e.kind();
    o.error = e.what();
  } catch (const std::exception& e) {
    o.error = e.what();
  }
  return o;
}

RunManifest run(const RunRequest& request, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const auto points = expand(request);

  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec || !fs::is_directory(options.out_dir))
    throw Error(ErrorKind::Io, "cannot create output directory " + options.out_dir.string());

  std::vector<PointOutcome> outcomes(points.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++)
      outcomes[i] = run_point(points[i], request.outputs, selected(request.outputs.detail, points[i]));
  };
  unsigned workers = options.workers ? options.workers : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(points.size(), 1)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < workers; ++k) pool.emplace_back(work);
  }

  Writer w(options.out_dir);
  w.text("config.json", request.resolved.dump(2) + "\n");
  w.text("summary.csv", summary_csv(outcomes));

  json doc = json::object();
  emit_series(w, outcomes, request.outputs, doc);

  const std::size_t width = std::max<std::size_t>(4, std::to_string(points.size()).size());
  json runs = json::array();
  std::size_t failed = 0;
  for (const auto& o : outcomes) {
    std::vector<std::string> files;
    if (o.ok && o.detail) {
      std::string idx = std::to_string(o.point.index);
      idx.insert(0, width - idx.size(), '0');
      files = emit_detail(w, o, request.outputs, "point_" + idx);
    }
    if (!o.ok) ++failed;
    runs.push_back(outcome_json(o, files));
  }

  RunManifest m;
  m.profile = request.profile;
  m.config_digest = request.digest;
  m.version = RINGMEM_VERSION;
  m.points = points.size();
  m.failed = failed;
  if (failed == 0) {
    m.status = "success";
    m.exit_code = 0;
  } else if (failed < points.size()) {
    m.status = "partial";
    m.exit_code = 3;
  } else {
    m.status = "failed";
    m.exit_code = 4;
  }
  m.outputs = w.files();
  m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  doc["engine"] = "ringmem";
  doc["version"] = m.version;
  doc["profile"] = m.profile;
  doc["description"] = request.description;
  doc["config_digest"] = m.config_digest;
  doc["seed"] = options.seed;
  doc["status"] = m.status;
  doc["exit_code"] = m.exit_code;
  doc["points"] = m.points;
  doc["failed"] = m.failed;
  doc["wall_time_s"] = m.wall_time_s;
  doc["outputs"] = m.outputs;
  doc["runs"] = runs;
  m.document = doc;
  write_text(options.out_dir / "manifest.json", doc.dump(2) + "\n");
  return m;
}

}  // namespace ringmem
