#include "ringmem/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <openssl/evp.h>

namespace ringmem {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::Config, what); }

void check_keys(const json& obj, const std::vector<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) config_error(where + " must be an object");
  for (const auto& item : obj.items())
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      config_error("unknown key '" + item.key() + "' in " + where);
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) config_error(where + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) config_error(where + " must be finite");
  return x;
}

long long as_integer(const json& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9e15) return static_cast<long long>(x);
  }
  config_error(where + " must be an integer");
}

bool as_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) config_error(where + " must be true or false");
  return v.get<bool>();
}

std::string as_text(const json& v, const std::string& where) {
  if (!v.is_string()) config_error(where + " must be a string");
  return v.get<std::string>();
}

const json& as_array(const json& v, const std::string& where) {
  if (!v.is_array()) config_error(where + " must be a list");
  return v;
}

template <class F>
auto list_of(const json& v, const std::string& where, F f) {
  std::vector<decltype(f(v, where))> out;
  for (std::size_t i = 0; i < as_array(v, where).size(); ++i)
    out.push_back(f(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

double hz(double omega) { return omega / constants::two_pi; }

Complex amplitude(const json& v, const std::string& where) {
  if (v.is_number()) return as_number(v, where);
  if (v.is_array() && v.size() == 2) return {as_number(v[0], where + "[0]"), as_number(v[1], where + "[1]")};
  config_error(where + " must be a number or a [re, im] pair");
}

std::vector<FockTerm> fock_terms(const json& v, const std::string& where) {
  std::vector<FockTerm> terms;
  for (std::size_t i = 0; i < as_array(v, where).size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    check_keys(v[i], {"amplitude", "occupations"}, w);
    if (!v[i].contains("occupations")) config_error(w + " needs occupations");
    FockTerm t;
    t.amplitude = v[i].contains("amplitude") ? amplitude(v[i]["amplitude"], w + ".amplitude") : 1.0;
    for (long long n : list_of(v[i]["occupations"], w + ".occupations", as_integer))
      t.occupations.push_back(static_cast<int>(n));
    terms.push_back(std::move(t));
  }
  if (terms.empty()) config_error(where + " must not be empty");
  return terms;
}

json terms_to_json(const std::vector<FockTerm>& terms) {
  json out = json::array();
  for (const auto& t : terms)
    out.push_back({{"amplitude", {t.amplitude.real(), t.amplitude.imag()}},
                   {"occupations", t.occupations}});
  return out;
}

PhysicalParams preset(const std::string& name) {
  if (name == "default") return default_parameters();
  if (name == "strong") return strong_coupling_parameters();
  config_error("unknown physical preset '" + name + "' (expected default or strong)");
}

void apply_physical(const json& obj, PhysicalParams& p, const std::string& where) {
  check_keys(obj,
             {"preset", "atom_mass_amu", "scattering_length_m", "ring_radius_m", "trap_freq_rho_hz",
              "trap_freq_z_hz", "atom_count", "winding_number", "oam_index",
              "atom_photon_coupling_hz", "atomic_detuning_hz", "cavity_decay_hz",
              "mechanical_decay_ratio", "control_power_w", "signal_power_w", "wavelength_m"},
             where);
  if (obj.contains("preset")) p = preset(as_text(obj["preset"], where + ".preset"));
  auto num = [&](const char* key) { return as_number(obj[key], where + "." + key); };
  const double mech_ratio = p.mechanical_decay / p.cavity_decay;
  if (obj.contains("atom_mass_amu")) p.atom_mass = num("atom_mass_amu") * constants::atomic_mass_unit;
  if (obj.contains("scattering_length_m")) p.scattering_length = num("scattering_length_m");
  if (obj.contains("ring_radius_m")) p.ring_radius = num("ring_radius_m");
  if (obj.contains("trap_freq_rho_hz")) p.trap_freq_rho = constants::two_pi * num("trap_freq_rho_hz");
  if (obj.contains("trap_freq_z_hz")) p.trap_freq_z = constants::two_pi * num("trap_freq_z_hz");
  if (obj.contains("atom_count")) p.atom_count = as_integer(obj["atom_count"], where + ".atom_count");
  if (obj.contains("winding_number"))
    p.winding_number = static_cast<int>(as_integer(obj["winding_number"], where + ".winding_number"));
  if (obj.contains("oam_index"))
    p.oam_index = static_cast<int>(as_integer(obj["oam_index"], where + ".oam_index"));
  if (obj.contains("atom_photon_coupling_hz"))
    p.atom_photon_coupling = constants::two_pi * num("atom_photon_coupling_hz");
  if (obj.contains("atomic_detuning_hz"))
    p.atomic_detuning = constants::two_pi * num("atomic_detuning_hz");
  if (obj.contains("cavity_decay_hz")) p.cavity_decay = constants::two_pi * num("cavity_decay_hz");
  // gamma_m is stored relative to gamma_0 and follows it.
  p.mechanical_decay = (obj.contains("mechanical_decay_ratio") ? num("mechanical_decay_ratio")
                                                               : mech_ratio) *
                       p.cavity_decay;
  if (obj.contains("control_power_w")) p.control_power = num("control_power_w");
  if (obj.contains("signal_power_w")) p.signal_power = num("signal_power_w");
  if (obj.contains("wavelength_m")) {
    const double lambda = num("wavelength_m");
    if (!(lambda > 0.0)) config_error(where + ".wavelength_m must be positive");
    p.optical_frequency = constants::two_pi * constants::speed_of_light / lambda;
  }
}

void apply_scenario(const json& obj, ScenarioConfig& c, std::string* state_label,
                    const std::string& where) {
  check_keys(obj,
             {"kind", "storage_time", "coupling_ratio", "coupling_mode", "interactions", "cutoff",
              "initial_state", "initial_state_label", "branch_scales", "lossy_cavities",
              "t_off_offset", "read_phase", "samples_per_decade"},
             where);
  auto num = [&](const char* key) { return as_number(obj[key], where + "." + key); };
  try {
    if (obj.contains("kind")) c.kind = scenario_kind_from(as_text(obj["kind"], where + ".kind"));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    config_error(e.what());
  }
  if (obj.contains("storage_time")) c.storage_time = num("storage_time");
  if (obj.contains("coupling_ratio")) c.coupling_ratio = num("coupling_ratio");
  if (obj.contains("coupling_mode")) {
    const std::string mode = as_text(obj["coupling_mode"], where + ".coupling_mode");
    if (mode == "ratio") c.coupling_source = CouplingSource::Ratio;
    else if (mode == "power") c.coupling_source = CouplingSource::Power;
    else config_error(where + ".coupling_mode must be ratio or power");
  }
  if (obj.contains("interactions")) c.interactions_enabled = as_bool(obj["interactions"], where + ".interactions");
  if (obj.contains("cutoff")) c.cutoff = static_cast<int>(as_integer(obj["cutoff"], where + ".cutoff"));
  if (obj.contains("initial_state")) c.initial_state = fock_terms(obj["initial_state"], where + ".initial_state");
  if (obj.contains("initial_state_label") && state_label)
    *state_label = as_text(obj["initial_state_label"], where + ".initial_state_label");
  if (obj.contains("branch_scales"))
    c.branch_scales = list_of(obj["branch_scales"], where + ".branch_scales", as_number);
  if (obj.contains("lossy_cavities"))
    c.lossy_cavities = list_of(obj["lossy_cavities"], where + ".lossy_cavities", as_bool);
  if (obj.contains("t_off_offset")) c.t_off_offset = num("t_off_offset");
  if (obj.contains("read_phase")) c.read_phase = num("read_phase");
  if (obj.contains("samples_per_decade"))
    c.samples_per_decade = static_cast<int>(as_integer(obj["samples_per_decade"], where + ".samples_per_decade"));
}

std::vector<double> storage_axis(const json& v, const std::string& where) {
  if (v.is_array()) return list_of(v, where, as_number);
  check_keys(v, {"start", "stop", "per_decade"}, where);
  if (!v.contains("start") || !v.contains("stop")) config_error(where + " needs start and stop");
  const int per_decade =
      v.contains("per_decade") ? static_cast<int>(as_integer(v["per_decade"], where + ".per_decade")) : 25;
  try {
    return log_grid(as_number(v["start"], where + ".start"), as_number(v["stop"], where + ".stop"), per_decade);
  } catch (const Error& e) {
    config_error(where + ": " + e.what());
  }
}

PhaseSpaceGrid parse_grid(const json& v, const std::string& where) {
  check_keys(v, {"x_min", "x_max", "nx", "p_min", "p_max", "np"}, where);
  PhaseSpaceGrid g;
  if (v.contains("x_min")) g.x_min = as_number(v["x_min"], where + ".x_min");
  if (v.contains("x_max")) g.x_max = as_number(v["x_max"], where + ".x_max");
  if (v.contains("nx")) g.nx = static_cast<int>(as_integer(v["nx"], where + ".nx"));
  if (v.contains("p_min")) g.p_min = as_number(v["p_min"], where + ".p_min");
  if (v.contains("p_max")) g.p_max = as_number(v["p_max"], where + ".p_max");
  if (v.contains("np")) g.np = static_cast<int>(as_integer(v["np"], where + ".np"));
  if (g.nx < 2 || g.np < 2 || !(g.x_max > g.x_min) || !(g.p_max > g.p_min))
    config_error(where + " must span a non-empty range with at least 2 points per axis");
  return g;
}

void parse_outputs(const json& v, OutputOptions& o) {
  const std::string where = "outputs";
  check_keys(v, {"trajectory", "density_matrices", "wigner", "plots", "detail", "wigner_grid"}, where);
  if (v.contains("trajectory")) o.trajectory = as_bool(v["trajectory"], where + ".trajectory");
  if (v.contains("density_matrices"))
    o.density_matrices = as_bool(v["density_matrices"], where + ".density_matrices");
  if (v.contains("wigner")) o.wigner = as_bool(v["wigner"], where + ".wigner");
  if (v.contains("plots")) o.plots = as_bool(v["plots"], where + ".plots");
  if (v.contains("wigner_grid")) o.wigner_grid = parse_grid(v["wigner_grid"], where + ".wigner_grid");
  if (v.contains("detail")) {
    const json& d = v["detail"];
    if (d.is_string()) {
      if (d == "all") o.detail.mode = DetailSelector::Mode::All;
      else if (d == "none") o.detail.mode = DetailSelector::Mode::None;
      else config_error("outputs.detail must be all, none or an axis match object");
    } else {
      check_keys(d, {kSweepAxes.begin(), kSweepAxes.end()}, "outputs.detail");
      o.detail.mode = DetailSelector::Mode::Match;
      o.detail.match = d;
    }
  }
}

void parse_sweep(const json& v, const RunRequest& r, SweepSpec& s) {
  const std::string where = "sweep";
  check_keys(v, {"cases", "initial_state", "interactions", "coupling_ratio", "winding_number",
                 "oam_index", "t_off_offset", "storage_time"},
             where);
  if (v.contains("cases")) {
    for (std::size_t i = 0; i < as_array(v["cases"], "sweep.cases").size(); ++i) {
      const std::string w = "sweep.cases[" + std::to_string(i) + "]";
      const json& c = v["cases"][i];
      check_keys(c, {"label", "scenario", "physical"}, w);
      SweepCase sc;
      sc.label = c.contains("label") ? as_text(c["label"], w + ".label") : "case_" + std::to_string(i);
      if (c.contains("scenario")) sc.scenario = c["scenario"];
      if (c.contains("physical")) sc.physical = c["physical"];
      // Parse once against the base so errors surface at load time.
      ScenarioConfig probe = r.base;
      apply_physical(sc.physical, probe.physical, w + ".physical");
      apply_scenario(sc.scenario, probe, nullptr, w + ".scenario");
      s.cases.push_back(std::move(sc));
    }
  }
  if (v.contains("initial_state")) {
    for (std::size_t i = 0; i < as_array(v["initial_state"], "sweep.initial_state").size(); ++i) {
      const std::string w = "sweep.initial_state[" + std::to_string(i) + "]";
      const json& st = v["initial_state"][i];
      check_keys(st, {"label", "terms"}, w);
      if (!st.contains("terms")) config_error(w + " needs terms");
      s.initial_state.push_back({st.contains("label") ? as_text(st["label"], w + ".label")
                                                      : "state_" + std::to_string(i),
                                 fock_terms(st["terms"], w + ".terms")});
    }
  }
  if (v.contains("interactions")) s.interactions = list_of(v["interactions"], "sweep.interactions", as_bool);
  if (v.contains("coupling_ratio"))
    s.coupling_ratio = list_of(v["coupling_ratio"], "sweep.coupling_ratio", as_number);
  auto ints = [&](const char* key) {
    std::vector<int> out;
    for (long long n : list_of(v[key], std::string("sweep.") + key, as_integer))
      out.push_back(static_cast<int>(n));
    return out;
  };
  if (v.contains("winding_number")) s.winding_number = ints("winding_number");
  if (v.contains("oam_index")) s.oam_index = ints("oam_index");
  if (v.contains("t_off_offset")) s.t_off_offset = list_of(v["t_off_offset"], "sweep.t_off_offset", as_number);
  if (v.contains("storage_time")) s.storage_time = storage_axis(v["storage_time"], "sweep.storage_time");
}

json sweep_to_json(const SweepSpec& s) {
  json out = json::object();
  json cases = json::array();
  for (const auto& c : s.cases)
    cases.push_back({{"label", c.label}, {"scenario", c.scenario}, {"physical", c.physical}});
  out["cases"] = cases;
  json states = json::array();
  for (const auto& st : s.initial_state)
    states.push_back({{"label", st.label}, {"terms", terms_to_json(st.terms)}});
  out["initial_state"] = states;
  out["interactions"] = s.interactions;
  out["coupling_ratio"] = s.coupling_ratio;
  out["winding_number"] = s.winding_number;
  out["oam_index"] = s.oam_index;
  out["t_off_offset"] = s.t_off_offset;
  out["storage_time"] = s.storage_time;
  return out;
}

json outputs_to_json(const OutputOptions& o) {
  json detail;
  switch (o.detail.mode) {
    case DetailSelector::Mode::All:
      detail = "all";
      break;
    case DetailSelector::Mode::None:
      detail = "none";
      break;
    case DetailSelector::Mode::Match:
      detail = o.detail.match;
      break;
  }
  const auto& g = o.wigner_grid;
  return {{"trajectory", o.trajectory},
          {"density_matrices", o.density_matrices},
          {"wigner", o.wigner},
          {"plots", o.plots},
          {"detail", detail},
          {"wigner_grid",
           {{"x_min", g.x_min}, {"x_max", g.x_max}, {"nx", g.nx},
            {"p_min", g.p_min}, {"p_max", g.p_max}, {"np", g.np}}}};
}

void validate_point(const ScenarioConfig& c, const std::string& where) {
  try {
    validate(c);
  } catch (const Error& e) {
    config_error(where + ": " + e.what());
  }
}

}  // namespace

json to_json(const PhysicalParams& p) {
  return {{"atom_mass_amu", p.atom_mass / constants::atomic_mass_unit},
          {"scattering_length_m", p.scattering_length},
          {"ring_radius_m", p.ring_radius},
          {"trap_freq_rho_hz", hz(p.trap_freq_rho)},
          {"trap_freq_z_hz", hz(p.trap_freq_z)},
          {"atom_count", p.atom_count},
          {"winding_number", p.winding_number},
          {"oam_index", p.oam_index},
          {"atom_photon_coupling_hz", hz(p.atom_photon_coupling)},
          {"atomic_detuning_hz", hz(p.atomic_detuning)},
          {"cavity_decay_hz", hz(p.cavity_decay)},
          {"mechanical_decay_ratio", p.mechanical_decay / p.cavity_decay},
          {"control_power_w", p.control_power},
          {"signal_power_w", p.signal_power},
          {"wavelength_m", constants::two_pi * constants::speed_of_light / p.optical_frequency}};
}

json to_json(const ScenarioConfig& c) {
  json out = {{"kind", to_string(c.kind)},
          {"storage_time", c.storage_time},
          {"coupling_ratio", c.coupling_ratio},
          {"coupling_mode", c.coupling_source == CouplingSource::Ratio ? "ratio" : "power"},
          {"interactions", c.interactions_enabled},
          {"cutoff", c.cutoff},
          {"initial_state", terms_to_json(c.initial_state)},
          {"branch_scales", c.branch_scales},
          {"lossy_cavities", c.lossy_cavities},
          {"t_off_offset", c.t_off_offset},
          {"read_phase", c.read_phase},
          {"samples_per_decade", c.samples_per_decade}};
  // Absent means the scenario's default input.
  if (c.initial_state.empty()) out.erase("initial_state");
  return out;
}

json to_json(const ConstraintReport& r) {
  auto check = [](const ConstraintCheck& c) {
    json m = std::isfinite(c.margin) ? json(c.margin) : json(nullptr);
    return json{{"ok", c.ok}, {"margin", m}};
  };
  return {{"quasi_1d", check(r.quasi_1d)},
          {"bogoliubov", check(r.bogoliubov)},
          {"lattice_weak", check(r.lattice_weak)},
          {"sideband_resolved", check(r.sideband_resolved)},
          {"mode_separation", check(r.mode_separation)},
          {"all_ok", r.all_ok()}};
}

std::vector<double> log_grid(double start, double stop, int per_decade) {
  if (!(start > 0.0) || !(stop >= start) || !std::isfinite(stop))
    throw Error(ErrorKind::InvalidArgument, "log grid needs 0 < start <= stop");
  if (per_decade < 1) throw Error(ErrorKind::InvalidArgument, "log grid needs per_decade >= 1");
  std::vector<double> out;
  const double decades = std::log10(stop / start);
  const auto n = static_cast<long>(std::ceil(decades * per_decade - 1e-9));
  for (long k = 0; k < n; ++k)
    out.push_back(start * std::pow(10.0, static_cast<double>(k) / per_decade));
  out.push_back(stop);
  return out;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::Io, "SHA-256 digest failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i)
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

RunRequest parse_config(const json& document, const std::string& profile_override) {
  if (!document.is_object()) config_error("config must be a JSON object");
  std::string profile = "default";
  if (document.contains("profile")) profile = as_text(document["profile"], "profile");
  if (!profile_override.empty()) profile = profile_override;

  json merged;
  try {
    merged = json::parse(profile_text(profile));
  } catch (const json::parse_error& e) {
    config_error("profile " + profile + " is not valid JSON: " + e.what());
  }
  if (merged.contains("profile")) config_error("profile " + profile + " must not name a profile");
  json user = document;
  user.erase("profile");
  merged.merge_patch(user);
  check_keys(merged, {"description", "scenario", "physical", "sweep", "outputs"}, "config");

  RunRequest r;
  r.profile = profile;
  if (merged.contains("description")) r.description = as_text(merged["description"], "description");
  if (merged.contains("physical")) apply_physical(merged["physical"], r.base.physical, "physical");
  if (merged.contains("scenario")) {
    apply_scenario(merged["scenario"], r.base, &r.base_state_label, "scenario");
    if (r.base.kind == ScenarioKind::FockSeries && !merged["scenario"].contains("cutoff"))
      r.base.cutoff = 4;
  }
  if (r.base_state_label.empty()) r.base_state_label = r.base.initial_state.empty() ? "default" : "custom";
  if (merged.contains("outputs")) parse_outputs(merged["outputs"], r.outputs);
  if (merged.contains("sweep")) parse_sweep(merged["sweep"], r, r.sweep);

  validate_point(r.base, "scenario");
  for (const auto& p : expand(r))
    validate_point(p.config, "sweep point " + std::to_string(p.index));

  json scenario = to_json(r.base);
  scenario["initial_state_label"] = r.base_state_label;
  r.resolved = {{"profile", r.profile},
                {"description", r.description},
                {"scenario", scenario},
                {"physical", to_json(r.base.physical)},
                {"sweep", sweep_to_json(r.sweep)},
                {"outputs", outputs_to_json(r.outputs)}};
  r.digest = sha256_hex(r.resolved.dump());
  return r;
}

RunRequest parse_config_text(const std::string& text_in, const std::string& profile_override) {
  const bool blank = text_in.find_first_not_of(" \t\r\n") == std::string::npos;
  json doc = json::object();
  if (!blank) {
    try {
      doc = json::parse(text_in);
    } catch (const json::parse_error& e) {
      config_error(std::string("config is not valid JSON: ") + e.what());
    }
  }
  return parse_config(doc, profile_override);
}

RunRequest load_config(const std::filesystem::path& path, const std::string& profile_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot open config file " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config_text(os.str(), profile_override);
}

std::size_t point_count(const RunRequest& r) {
  const auto& s = r.sweep;
  auto n = [](std::size_t k) { return std::max<std::size_t>(k, 1); };
  return n(s.cases.size()) * n(s.initial_state.size()) * n(s.interactions.size()) *
         n(s.coupling_ratio.size()) * n(s.winding_number.size()) * n(s.oam_index.size()) *
         n(s.t_off_offset.size()) * n(s.storage_time.size());
}

std::vector<SweepPoint> expand(const RunRequest& r) {
  const auto& s = r.sweep;
  std::vector<SweepPoint> out;
  out.reserve(point_count(r));

  std::vector<const SweepCase*> cases;
  for (const auto& c : s.cases) cases.push_back(&c);
  if (cases.empty()) cases.push_back(nullptr);
  std::vector<const NamedState*> states;
  for (const auto& st : s.initial_state) states.push_back(&st);
  if (states.empty()) states.push_back(nullptr);

  // Optional axes: an empty list keeps the value coming from the case/base.
  auto axis = [](const auto& values) {
    using T = typename std::decay_t<decltype(values)>::value_type;
    std::vector<std::optional<T>> a;
    for (const auto& v : values) a.emplace_back(v);
    if (a.empty()) a.emplace_back(std::nullopt);
    return a;
  };
  const auto inter = axis(s.interactions);
  const auto ratio = axis(s.coupling_ratio);
  const auto lp = axis(s.winding_number);
  const auto ell = axis(s.oam_index);
  const auto dt = axis(s.t_off_offset);
  const auto storage = axis(s.storage_time);

  for (const auto* c : cases)
    for (const auto* st : states)
      for (const auto& vi : inter)
        for (const auto& vr : ratio)
          for (const auto& vl : lp)
            for (const auto& ve : ell)
              for (const auto& vd : dt)
                for (const auto& vs : storage) {
                  SweepPoint p;
                  p.index = out.size();
                  p.config = r.base;
                  p.state_label = r.base_state_label;
                  if (c) {
                    apply_physical(c->physical, p.config.physical, "case " + c->label);
                    apply_scenario(c->scenario, p.config, &p.state_label, "case " + c->label);
                    p.case_label = c->label;
                  }
                  if (st) {
                    p.config.initial_state = st->terms;
                    p.state_label = st->label;
                  }
                  if (vi) p.config.interactions_enabled = *vi;
                  if (vr) p.config.coupling_ratio = *vr;
                  if (vl) p.config.physical.winding_number = *vl;
                  if (ve) p.config.physical.oam_index = *ve;
                  if (vd) p.config.t_off_offset = *vd;
                  if (vs) p.config.storage_time = *vs;
                  p.coordinates = {{"case", p.case_label},
                                   {"initial_state", p.state_label},
                                   {"interactions", p.config.interactions_enabled},
                                   {"coupling_ratio", p.config.coupling_ratio},
                                   {"winding_number", p.config.physical.winding_number},
                                   {"oam_index", p.config.physical.oam_index},
                                   {"t_off_offset", p.config.t_off_offset},
                                   {"storage_time", p.config.storage_time}};
                  out.push_back(std::move(p));
                }
  return out;
}

}  // namespace ringmem
