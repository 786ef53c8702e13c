#include "stylekit/common.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace stylekit {

tree_parse_error::tree_parse_error(const std::string& what, std::size_t offset)
    : validation_error(what + " (byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw validation_error("vector dimension mismatch: " + std::to_string(a.size()) + " vs " +
                           std::to_string(b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

std::optional<double> try_cosine(std::span<const double> a, std::span<const double> b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return std::nullopt;
  bool identical = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) {
      identical = false;
      break;
    }
  }
  if (identical) return 1.0;
  return dot(a, b) / (na * nb);
}

double cosine(std::span<const double> a, std::span<const double> b) {
  auto c = try_cosine(a, b);
  if (!c) throw validation_error("cosine undefined for zero-norm vector");
  return *c;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::vector<std::string> split_ws(const std::string& text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
    if (i > start) tokens.push_back(text.substr(start, i - start));
  }
  return tokens;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t consumed = 0;
    double value = std::stod(text, &consumed);
    if (consumed != text.size()) throw validation_error("");
    return value;
  } catch (const std::exception&) {
    throw validation_error("expected a number for " + what + ", got \"" + text + "\"");
  }
}

long long parse_integer(const std::string& text, const std::string& what) {
  try {
    std::size_t consumed = 0;
    long long value = std::stoll(text, &consumed);
    if (consumed != text.size()) throw validation_error("");
    return value;
  } catch (const std::exception&) {
    throw validation_error("expected an integer for " + what + ", got \"" + text + "\"");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> read_lines(const std::string& path) {
  std::string content = read_file(path);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t pos = content.find('\n', start);
    if (pos == std::string::npos) {
      if (start < content.size()) lines.push_back(content.substr(start));
      break;
    }
    std::string line = content.substr(start, pos - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = pos + 1;
  }
  return lines;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot write file: " + path);
  out << content;
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace stylekit
