#include "qqw/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace qqw {

std::string format_double(double v) {
  if (v == static_cast<double>(static_cast<long long>(v)) && std::abs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string format_u64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%llu", static_cast<unsigned long long>(v));
  return buf;
}

double parse_eps(const std::string& text) {
  if (text.rfind("2^-", 0) == 0 || text.rfind("2^", 0) == 0) {
    const std::size_t at = text.find('^');
    char* end = nullptr;
    const long k = std::strtol(text.c_str() + at + 1, &end, 10);
    if (end == text.c_str() + at + 1 || *end != '\0')
      throw std::invalid_argument("bad dyadic literal: " + text);
    return std::ldexp(1.0, static_cast<int>(k));
  }
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0')
    throw std::invalid_argument("bad epsilon: " + text);
  return v;
}

void JsonWriter::comma() {
  if (need_comma_) out_ += ",";
  need_comma_ = false;
}

void JsonWriter::begin_array() {
  comma();
  out_ += "[";
}

void JsonWriter::end_array() {
  out_ += "]";
  need_comma_ = true;
}

void JsonWriter::begin_object() {
  comma();
  out_ += "{";
}

void JsonWriter::end_object() {
  out_ += "}";
  need_comma_ = true;
}

void JsonWriter::field(const std::string& name, double v) {
  comma();
  out_ += "\"" + name + "\":" + format_double(v);
  need_comma_ = true;
}

void JsonWriter::field(const std::string& name, std::uint64_t v) {
  comma();
  out_ += "\"" + name + "\":" + format_u64(v);
  need_comma_ = true;
}

void JsonWriter::field(const std::string& name, int v) {
  field(name, static_cast<std::uint64_t>(static_cast<long long>(v)));
}

void JsonWriter::field(const std::string& name, const std::string& v) {
  comma();
  out_ += "\"" + name + "\":\"" + v + "\"";
  need_comma_ = true;
}

void JsonWriter::field_raw(const std::string& name, const std::string& v) {
  comma();
  out_ += "\"" + name + "\":" + v;
  need_comma_ = true;
}

bool write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f << content;
  return static_cast<bool>(f);
}

}  // namespace qqw
