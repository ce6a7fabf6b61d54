#include "owl/vector_io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>

namespace owl {

std::vector<double> read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    const char* begin = line.c_str() + start;
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(begin, &end);
    if (end == begin || errno == ERANGE)
      throw ParseError(path + ":" + std::to_string(lineno) + ": not a number: '" + line + "'");
    while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
    if (*end != '\0')
      throw ParseError(path + ":" + std::to_string(lineno) + ": trailing junk: '" + line + "'");
    values.push_back(value);
  }
  return values;
}

void write_vector_file(const std::string& path, std::span<const double> values,
                       const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  if (!comment.empty()) out << "# " << comment << "\n";
  for (const double v : values) out << v << "\n";
  if (!out) throw IoError("write failed for " + path);
}

void write_matrix_file(const std::string& path, std::span<const double> data,
                       std::size_t rows, std::size_t cols) {
  if (data.size() != rows * cols)
    throw DimensionMismatch("write_matrix_file: data size does not match rows*cols");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c) out << ' ';
      out << data[r * cols + c];
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace owl
