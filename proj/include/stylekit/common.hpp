#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stylekit {

class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad input data or configuration. The CLI maps this to exit code 1.
class validation_error : public error {
public:
  using error::error;
};

// Filesystem problems. The CLI maps this to exit code 2.
class io_error : public error {
public:
  using error::error;
};

class tree_parse_error : public validation_error {
public:
  tree_parse_error(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> v);

// Cosine similarity; nullopt when either vector has zero norm. Bitwise-equal
// nonzero inputs yield exactly 1.0 so that self-similarity is exact.
std::optional<double> try_cosine(std::span<const double> a, std::span<const double> b);
double cosine(std::span<const double> a, std::span<const double> b);

std::vector<std::string> split(const std::string& line, char sep);
std::vector<std::string> split_ws(const std::string& text);
std::string join(const std::vector<std::string>& parts, const std::string& sep);
std::string format_fixed(double value, int decimals = 6);
double parse_double(const std::string& text, const std::string& what);
long long parse_integer(const std::string& text, const std::string& what);

std::string read_file(const std::string& path);
std::vector<std::string> read_lines(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace stylekit
