#include "ringmem/emit.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "ringmem/svg.hpp"

namespace ringmem {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string format_fixed(double v, int decimals) {
  if (!std::isfinite(v)) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  std::string s(buf, res.ptr);
  if (s.find_first_not_of("-0.") == std::string::npos) return "0";
  return s;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size())
    throw Error(ErrorKind::InvalidArgument, "csv row width does not match the header");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

std::string csv_cell(double v) { return format_number(v); }

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

namespace {

// Value as it reads back from the 12-digit text form.
double rounded(double v) {
  const std::string s = format_number(v);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

}  // namespace

DensityMatrixView density_matrix_view(const StateMatrix& rho, ScenarioKind kind) {
  DensityMatrixView v;
  switch (kind) {
    case ScenarioKind::Superposition: {
      const auto q = map_to_qubit_basis(rho);
      v.matrix = q.matrix;
      v.discarded_weight = q.discarded_weight;
      for (int i = 0; i < 4; ++i) {
        const auto [a, b] = QubitMap::occupations(i);
        v.labels.push_back("|" + std::to_string(i) + "> = |" + std::to_string(a) + "," +
                           std::to_string(b) + ">");
      }
      break;
    }
    case ScenarioKind::Entangled: {
      const auto q = map_to_two_qubit_pair(rho);
      v.matrix = q.matrix;
      v.discarded_weight = q.discarded_weight;
      for (int p = 0; p < 4; ++p)
        for (int r = 0; r < 4; ++r)
          v.labels.push_back("|" + std::to_string(p) + ">_1|" + std::to_string(r) + ">_2");
      break;
    }
    case ScenarioKind::Single:
    case ScenarioKind::FockSeries: {
      v.matrix = rho.data();
      for (std::size_t i = 0; i < rho.dim(); ++i) {
        std::string label = "|";
        const auto occ = rho.space().occupations(i);
        for (std::size_t m = 0; m < occ.size(); ++m)
          label += (m ? "," : "") + std::to_string(occ[m]);
        v.labels.push_back(label + ">");
      }
      break;
    }
  }
  return v;
}

nlohmann::json density_matrix_json(const DensityMatrixView& view) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < view.matrix.rows(); ++i) {
    nlohmann::json rr = nlohmann::json::array();
    nlohmann::json ii = nlohmann::json::array();
    for (Eigen::Index j = 0; j < view.matrix.cols(); ++j) {
      rr.push_back(rounded(view.matrix(i, j).real()));
      ii.push_back(rounded(view.matrix(i, j).imag()));
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return {{"basis", view.labels},
          {"real", re},
          {"imag", im},
          {"discarded_weight", rounded(view.discarded_weight)}};
}

std::vector<std::filesystem::path> emit_density_matrix(const DensityMatrixView& view,
                                                       const std::filesystem::path& stem,
                                                       const std::string& title) {
  auto json_path = stem;
  json_path += ".json";
  auto svg_path = stem;
  svg_path += ".svg";
  write_text(json_path, density_matrix_json(view).dump(1) + "\n");
  write_text(svg_path, svg::matrix_bars(view.matrix, view.labels, title));
  return {json_path, svg_path};
}

}  // namespace ringmem
