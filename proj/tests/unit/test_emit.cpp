#include <clocale>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ringmem/emit.hpp"
#include "ringmem/runner.hpp"
#include "ringmem/svg.hpp"

using namespace ringmem;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& tag) {
  std::string pattern = (fs::temp_directory_path() / ("ringmem_" + tag + "_XXXXXX")).string();
  REQUIRE(mkdtemp(pattern.data()) != nullptr);
  return pattern;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

const char* kSmallSweep = R"({
  "scenario": {"kind": "single"},
  "sweep": {"interactions": [false, true], "storage_time": [1e-5, 1e-4, 1e-3]},
  "outputs": {"detail": {"storage_time": 1e-4, "interactions": true}}
})";

}  // namespace

TEST_CASE("numbers use 12 significant digits and a dot") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(6.25e-5) == "6.25e-05");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(123456789012345.0) == "1.23456789012e+14");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_fixed(2.0 / 3.0, 2) == "0.67");
  CHECK(format_fixed(-0.001, 2) == "0");
}

TEST_CASE("formatting ignores the C locale") {
  const char* old = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = old ? old : "C";
  bool switched = false;
  for (const char* name : {"de_DE.UTF-8", "de_DE.utf8", "fr_FR.UTF-8"})
    if (std::setlocale(LC_NUMERIC, name)) {
      switched = true;
      break;
    }
  CHECK(format_number(1.5) == "1.5");
  CHECK(format_fixed(1.25, 1).find(',') == std::string::npos);
  std::setlocale(LC_NUMERIC, saved.c_str());
  if (!switched) MESSAGE("no comma-decimal locale installed; checked under the C locale only");
}

TEST_CASE("csv cells quote separators") {
  CHECK(csv_cell(std::string("plain")) == "plain");
  CHECK(csv_cell(std::string("a,b")) == "\"a,b\"");
  CHECK(csv_cell(std::string("say \"hi\"")) == "\"say \"\"hi\"\"\"");
  CsvTable t({"x", "y"});
  t.add_row({"1", "2"});
  CHECK(t.str() == "x,y\n1,2\n");
  CHECK_THROWS_AS(t.add_row({"1"}), Error);
}

TEST_CASE("density matrix JSON uses computational order") {
  const auto view = density_matrix_view(make_superposition_input(), ScenarioKind::Superposition);
  const auto j = density_matrix_json(view);
  REQUIRE(j["basis"].size() == 4);
  CHECK(j["basis"][2] == "|2> = |1,0>");
  CHECK(j["real"][1][2] == 0.5);
  CHECK(j["real"][2][1] == 0.5);
  CHECK(j["real"][0][0] == 0.0);
  CHECK(j["discarded_weight"] == 0.0);

  const auto pair = density_matrix_view(make_entangled_input(), ScenarioKind::Entangled);
  CHECK(pair.labels.size() == 16);
  CHECK(pair.labels[9] == "|2>_1|1>_2");
}

TEST_CASE("svg renderings are well formed") {
  svg::LinePlot p;
  p.title = "t < 1 & more";
  p.log_x = true;
  p.series.push_back({"f", {1e-6, 1e-3, 1.0}, {0.9, std::nan(""), 0.7}, false});
  p.hlines.push_back({2.0 / 3.0, "bound"});
  const auto s = svg::line_plot(p);
  CHECK(s.rfind("<svg", 0) == 0);
  CHECK(s.find("</svg>") != std::string::npos);
  CHECK(s.find("t &lt; 1 &amp; more") != std::string::npos);
  CHECK(s.find("nan") == std::string::npos);

  const auto bars = svg::matrix_bars(Matrix::Identity(2, 2), {"|0>", "|1>"}, "I");
  CHECK(bars.find("&lt;") == std::string::npos);  // labels only contain '|' and '>'
  CHECK(bars.find("|0&gt;") != std::string::npos);

  const auto heat = svg::heatmap({0.1, -0.1, 0.0, 0.2}, 2, 2, -1, 1, -1, 1, "W");
  CHECK(heat.find("<rect") != std::string::npos);
}

TEST_CASE("run writes every listed output, deterministically across worker counts") {
  const auto request = parse_config_text(kSmallSweep);
  const auto dir1 = scratch_dir("run1");
  const auto dir2 = scratch_dir("run2");
  const auto m1 = run(request, {dir1, 1, 0});
  const auto m2 = run(request, {dir2, 3, 0});

  CHECK(m1.exit_code == 0);
  CHECK(m1.status == "success");
  CHECK(m1.points == 6);
  CHECK(m1.config_digest == request.digest);
  CHECK(m1.outputs == m2.outputs);
  for (const auto& f : m1.outputs) {
    CAPTURE(f);
    REQUIRE(fs::exists(dir1 / f));
    CHECK(fs::file_size(dir1 / f) > 0);
    if (f.ends_with(".csv") || f.ends_with(".json") || f.ends_with(".svg"))
      CHECK(slurp(dir1 / f) == slurp(dir2 / f));
  }

  auto j1 = nlohmann::json::parse(slurp(dir1 / "manifest.json"));
  auto j2 = nlohmann::json::parse(slurp(dir2 / "manifest.json"));
  j1.erase("wall_time_s");
  j2.erase("wall_time_s");
  CHECK(j1 == j2);
  CHECK(j1["config_digest"] == request.digest);
  CHECK(j1["runs"].size() == 6);

  // Grouped by interactions, x = storage time, one row per grid value.
  const auto series = slurp(dir1 / "series_interactions-true.csv");
  CHECK(series.rfind("storage_time,fidelity,classical_bound,status\n", 0) == 0);
  CHECK(line_count(series) == 1 + 3);
  CHECK(line_count(slurp(dir1 / "summary.csv")) == 1 + 6);

  // Only the selected point carries trajectory and density files.
  CHECK(fs::exists(dir1 / "point_0004_trajectory.csv"));
  CHECK_FALSE(fs::exists(dir1 / "point_0001_trajectory.csv"));
  const auto traj = slurp(dir1 / "point_0004_trajectory.csv");
  CHECK(traj.rfind("t,n_a_ell,n_c,trace,purity\n", 0) == 0);
  CHECK(line_count(traj) == 1 + j1["runs"][4]["samples"].get<std::size_t>());

  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("detail selection") {
  SweepPoint p;
  p.coordinates = {{"storage_time", 1e-4}, {"case", "ratio_4"}};
  DetailSelector all;
  CHECK(selected(all, p));
  DetailSelector none{DetailSelector::Mode::None, {}};
  CHECK_FALSE(selected(none, p));
  DetailSelector match{DetailSelector::Mode::Match, {{"storage_time", 1.0000000000001e-4}}};
  CHECK(selected(match, p));
  match.match["case"] = "ratio_8";
  CHECK_FALSE(selected(match, p));
}

TEST_CASE("unwritable output directory is an I/O error") {
  const auto request = parse_config_text("");
  const auto dir = scratch_dir("ro");
  const auto blocker = dir / "file";
  std::ofstream(blocker) << "x";
  try {
    run(request, {blocker / "sub", 1, 0});
    FAIL("expected an I/O error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
  fs::remove_all(dir);
}
