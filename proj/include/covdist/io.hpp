#pragma once

// File formats: CSV matrices (comma-separated rows, no header), spectral
// measures as JSON, plain-text time series.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "covdist/spectra.hpp"
#include "covdist/symmat.hpp"

namespace covdist::io {

/// Rounds to 12 significant digits; the result re-parses to itself.
double round12(double x);
std::string format12(double x);

Eigen::MatrixXd parse_matrix_csv(const std::string& text);
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);
std::string format_matrix_csv(const Eigen::MatrixXd& m);

/// Reads a square CSV matrix and checks symmetry to 1e-8 relative.
SymMatrixd read_symmetric_csv(const std::filesystem::path& path);

/// Numbers separated by commas, whitespace or newlines.
std::vector<double> parse_series(const std::string& text);
std::vector<double> read_series(const std::filesystem::path& path);

/// {"grid_size": m, "values": [...] or a constant, "atoms": [{"theta": t, "mass": w}]}
SpectralMeasure spectral_from_json(const nlohmann::json& j);
nlohmann::json spectral_to_json(const SpectralMeasure& f);
SpectralMeasure read_spectral_json(const std::filesystem::path& path);

nlohmann::json matrix_json(const Eigen::MatrixXd& m);
nlohmann::json vector_json(const Eigen::VectorXd& v);

std::string read_text(const std::filesystem::path& path);
std::string sha256_hex(const std::string& bytes);
std::string file_sha256(const std::filesystem::path& path);

}  // namespace covdist::io
