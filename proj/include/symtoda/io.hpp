#pragma once

// Parsing of command-line and file inputs. Every malformed input raises
// InputError with a message naming the offending piece.

#include "symtoda/dynamics.hpp"
#include "symtoda/linalg.hpp"
#include "symtoda/report.hpp"

#include <json.hpp>

#include <string>
#include <utility>

namespace symtoda {

/// {"n": n, "rows": [[...] x n] x n} with finite entries.
Matrix matrix_from_json(const nlohmann::json& j);
/// Reads and parses a matrix file.
Matrix read_matrix_file(const std::string& path);

/// "1:1,2:0.5" -> H = tr(M) + 0.5 tr(M^2).
ReflectionHamiltonian parse_hamiltonian(const std::string& text);

/// "name=value".
std::pair<std::string, double> parse_tolerance_assignment(const std::string& text);

/// Comma-separated finite numbers.
Vector parse_number_list(const std::string& text);

}  // namespace symtoda
