#include "covdist/io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "covdist/errors.hpp"

namespace covdist::io {

namespace {

double parse_number(const std::string& token) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw InputError("not a number: '" + token + "'");
  }
  if (used != token.size()) throw InputError("not a number: '" + token + "'");
  if (!std::isfinite(v)) throw InputError("non-finite value: '" + token + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) { return std::stod(format12(x)); }

Eigen::MatrixXd parse_matrix_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(parse_number(trim(cell)));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError("empty matrix file");
  const std::size_t cols = rows.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
  return parse_matrix_csv(read_text(path));
}

std::string format_matrix_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format12(m(i, j));
    }
    out += '\n';
  }
  return out;
}

SymMatrixd read_symmetric_csv(const std::filesystem::path& path) {
  const Eigen::MatrixXd m = read_matrix_csv(path);
  if (m.rows() != m.cols()) throw InputError(path.string() + ": matrix is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw InputError(path.string() + ": matrix is not symmetric");
  }
  return (m + m.transpose()) / 2.0;
}

std::vector<double> parse_series(const std::string& text) {
  std::string spaced = text;
  for (char& c : spaced) {
    if (c == ',' || c == ';') c = ' ';
  }
  std::istringstream in(spaced);
  std::vector<double> out;
  std::string token;
  while (in >> token) out.push_back(parse_number(token));
  if (out.empty()) throw InputError("empty series");
  return out;
}

std::vector<double> read_series(const std::filesystem::path& path) { return parse_series(read_text(path)); }

SpectralMeasure spectral_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("spectral measure must be a JSON object");
  if (!j.contains("grid_size") || !j["grid_size"].is_number_integer()) {
    throw InputError("spectral measure needs an integer grid_size");
  }
  const auto m = j["grid_size"].get<long long>();
  if (m < 2) throw InputError("grid_size must be a power of two >= 2");
  std::vector<double> values(static_cast<std::size_t>(m), 0.0);
  if (j.contains("values")) {
    const auto& v = j["values"];
    if (v.is_number()) {
      values.assign(values.size(), v.get<double>());
    } else if (v.is_array()) {
      if (v.size() != values.size()) throw InputError("values must have grid_size entries");
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (!v[i].is_number()) throw InputError("values must be numbers");
        values[i] = v[i].get<double>();
      }
    } else {
      throw InputError("values must be an array or a number");
    }
  }
  std::vector<SpectralLine> atoms;
  if (j.contains("atoms")) {
    if (!j["atoms"].is_array()) throw InputError("atoms must be an array");
    for (const auto& a : j["atoms"]) {
      if (!a.is_object() || !a.contains("theta") || !a.contains("mass") || !a["theta"].is_number() ||
          !a["mass"].is_number()) {
        throw InputError("each atom needs numeric theta and mass");
      }
      atoms.push_back({a["theta"].get<double>(), a["mass"].get<double>()});
    }
  }
  return SpectralMeasure(std::move(values), std::move(atoms));
}

nlohmann::json spectral_to_json(const SpectralMeasure& f) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : f.atoms()) atoms.push_back({{"theta", a.theta}, {"mass", a.mass}});
  return {{"grid_size", f.grid_size()}, {"values", f.values()}, {"atoms", atoms}};
}

SpectralMeasure read_spectral_json(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return spectral_from_json(j);
}

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(round12(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json vector_json(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(round12(v(i)));
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string file_sha256(const std::filesystem::path& path) { return sha256_hex(read_text(path)); }

}  // namespace covdist::io
