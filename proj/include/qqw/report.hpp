#pragma once

#include <cstdint>
#include <string>

namespace qqw {

inline constexpr int kSchemaVersion = 1;

// Deterministic number formatting for CSV/JSON emitters: same argv + seed
// must produce byte-identical files.
std::string format_double(double v);
std::string format_u64(std::uint64_t v);

// Accepts plain decimals and the dyadic literal form "2^-k".
double parse_eps(const std::string& text);

// Minimal flat-record JSON emitter (arrays of objects with scalar fields).
class JsonWriter {
 public:
  void begin_array();
  void end_array();
  void begin_object();
  void end_object();
  void field(const std::string& name, double v);
  void field(const std::string& name, std::uint64_t v);
  void field(const std::string& name, int v);
  void field(const std::string& name, const std::string& v);
  void field_raw(const std::string& name, const std::string& v);  // unquoted

  const std::string& str() const { return out_; }

 private:
  void comma();
  std::string out_;
  bool need_comma_ = false;
};

bool write_text_file(const std::string& path, const std::string& content);

}  // namespace qqw
