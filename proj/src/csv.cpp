#include "gmx/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace gmx {

std::string format_double(double v) {
  char buf[64];
  const std::to_chars_result res = std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc())
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

namespace {

bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  if (s.empty()) return false;
  const std::from_chars_result res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

std::vector<double> read_value_column(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = line;
    if (!sv.empty() && sv.back() == '\r') sv.remove_suffix(1);
    if (sv.empty()) continue;
    const std::size_t comma = sv.rfind(',');
    const std::string_view field = comma == std::string_view::npos ? sv : sv.substr(comma + 1);
    double v;
    if (parse_double(field, v)) {
      values.push_back(v);
    } else if (lineno == 1) {
      continue;  // header row
    } else {
      throw std::invalid_argument(path + ": unparseable value at line " +
                                  std::to_string(lineno));
    }
  }
  if (values.empty()) throw std::invalid_argument(path + ": no numeric rows");
  return values;
}

void write_signal_csv(const std::string& path, const std::vector<double>& values) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << "t,value\n";
  const std::size_t n = values.size();
  for (std::size_t i = 0; i < n; ++i) {
    out << format_double(double(i + 1) / double(n)) << ','
        << format_double(values[i]) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace gmx
