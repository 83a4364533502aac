#pragma once

// Serialization helpers: locale-free number formatting, CSV tables and
// density-matrix files.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "ringmem/protocols.hpp"

namespace ringmem {

// 12 significant digits, '.' decimal point, independent of the C locale.
std::string format_number(double v);

// Fixed-point with the given number of decimals; used for SVG coordinates.
std::string format_fixed(double v, int decimals);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  std::size_t rows() const noexcept { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_cell(double v);
std::string csv_cell(const std::string& s);

// Throws Error(Io).
void write_text(const std::filesystem::path& path, const std::string& content);

// Basis labels of a photonic density matrix in the order used by
// density_matrix_view: computational order for the superposition and
// entangled scenarios, Fock order otherwise.
struct DensityMatrixView {
  Matrix matrix;
  std::vector<std::string> labels;
  double discarded_weight = 0;
};

DensityMatrixView density_matrix_view(const StateMatrix& rho, ScenarioKind kind);

nlohmann::json density_matrix_json(const DensityMatrixView& view);

// Writes <stem>.json and <stem>.svg; returns the two paths.
std::vector<std::filesystem::path> emit_density_matrix(const DensityMatrixView& view,
                                                       const std::filesystem::path& stem,
                                                       const std::string& title);

}  // namespace ringmem
