#include "symtoda/io.hpp"

#include "symtoda/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace symtoda {

namespace {

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InputError("invalid number '" + text + "' in " + what);
  }
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
  if (used != text.size() || !std::isfinite(v)) {
    throw InputError("invalid number '" + text + "' in " + what);
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("rows")) {
    throw InputError("matrix JSON must be an object with \"n\" and \"rows\"");
  }
  if (!j["n"].is_number_integer()) throw InputError("matrix JSON: \"n\" must be an integer");
  const long n = j["n"].get<long>();
  if (n < 1 || n > 64) throw InputError("matrix JSON: n out of range");
  const auto& rows = j["rows"];
  if (!rows.is_array() || static_cast<long>(rows.size()) != n) {
    throw InputError("matrix JSON: expected " + std::to_string(n) + " rows");
  }
  Matrix m(n, n);
  for (long i = 0; i < n; ++i) {
    if (!rows[i].is_array() || static_cast<long>(rows[i].size()) != n) {
      throw InputError("matrix JSON: row " + std::to_string(i + 1) + " must have " +
                       std::to_string(n) + " entries");
    }
    for (long k = 0; k < n; ++k) {
      const auto& v = rows[i][k];
      if (!v.is_number() || !std::isfinite(v.get<double>())) {
        throw InputError("matrix JSON: entry (" + std::to_string(i + 1) + "," +
                         std::to_string(k + 1) + ") is not a finite number");
      }
      m(i, k) = v.get<double>();
    }
  }
  return m;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
  return matrix_from_json(j);
}

ReflectionHamiltonian parse_hamiltonian(const std::string& text) {
  std::map<int, double> coeffs;
  for (const std::string& term : split(text, ',')) {
    const auto colon = term.find(':');
    if (colon == std::string::npos) {
      throw InputError("hamiltonian term '" + term + "' must look like k:c");
    }
    const double k = parse_number(term.substr(0, colon), "hamiltonian degree");
    if (k != std::floor(k) || k < 1 || k > 64) {
      throw InputError("hamiltonian degree '" + term.substr(0, colon) + "' must be an integer >= 1");
    }
    if (coeffs.count(static_cast<int>(k))) {
      throw InputError("hamiltonian degree " + term.substr(0, colon) + " given twice");
    }
    coeffs[static_cast<int>(k)] = parse_number(term.substr(colon + 1), "hamiltonian coefficient");
  }
  return ReflectionHamiltonian(std::move(coeffs));
}

std::pair<std::string, double> parse_tolerance_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw InputError("tolerance '" + text + "' must look like name=value");
  }
  return {text.substr(0, eq), parse_number(text.substr(eq + 1), "tolerance " + text)};
}

Vector parse_number_list(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.empty()) throw InputError("empty number list");
  Vector v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) v(i) = parse_number(parts[i], "list '" + text + "'");
  return v;
}

}  // namespace symtoda
