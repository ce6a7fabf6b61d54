#pragma once

#include <span>
#include <string>
#include <vector>

#include "owl/errors.hpp"

namespace owl {

// Plain text vectors: one value per line, blank lines and '#' comments
// ignored. Parse failures report file and line number.
std::vector<double> read_vector_file(const std::string& path);

void write_vector_file(const std::string& path, std::span<const double> values,
                       const std::string& comment = "");

// Whitespace-separated row-major matrix, one row per line.
void write_matrix_file(const std::string& path, std::span<const double> data,
                       std::size_t rows, std::size_t cols);

}  // namespace owl
