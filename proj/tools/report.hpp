#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace tfimqec::cli {

enum class Format { Csv, JsonLines };

/// A self-describing result table. The run configuration is echoed first
/// (as "# key=value" comment lines in CSV, as a leading "config" record in
/// JSON-lines) together with the equivalent command line, so every output
/// can be regenerated byte for byte.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  /// Config entries are rendered in insertion order; keys are flag names.
  void config(const std::string& key, nlohmann::ordered_json value);
  /// Derived whole-run results (fits, plans), rendered between config and table.
  void summary(const std::string& key, nlohmann::ordered_json value);
  void columns(std::vector<std::string> names) { columns_ = std::move(names); }
  /// One value per column; null renders as an empty CSV cell.
  void row(std::vector<nlohmann::ordered_json> values);

  std::string command_line() const;
  std::string render(Format format) const;

 private:
  std::string command_;
  nlohmann::ordered_json config_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json summary_ = nlohmann::ordered_json::object();
  std::vector<std::string> columns_;
  std::vector<std::vector<nlohmann::ordered_json>> rows_;
};

}  // namespace tfimqec::cli
