#pragma once

#include <map>
#include <optional>
#include <string>

namespace rydqed {

/// Flat key=value configuration with [section] headers; later keys win.
/// Keys are addressed as "section.key" ("" section for the preamble).
class RunConfig {
public:
  static RunConfig from_file(const std::string& path);
  static RunConfig from_string(const std::string& text);

  void set(const std::string& key, const std::string& value);
  std::optional<std::string> get(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;

  const std::map<std::string, std::string>& entries() const {
    return entries_;
  }

private:
  std::map<std::string, std::string> entries_;
};

/// Fixed-format floating point for CSV bodies: shortest round-trip
/// representation, deterministic across runs.
std::string format_double(double v);

} // namespace rydqed
