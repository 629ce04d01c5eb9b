#include "report.hpp"

#include <stdexcept>

namespace tfimqec::cli {

namespace {

std::string flag_value(const nlohmann::ordered_json& v) {
  if (v.is_string()) {
    return v.get<std::string>();
  }
  if (v.is_array()) {
    std::string out;
    for (const auto& item : v) {
      out += (out.empty() ? "" : ",") + flag_value(item);
    }
    return out;
  }
  return v.dump();
}

std::string csv_cell(const nlohmann::ordered_json& v) {
  if (v.is_null()) {
    return "";
  }
  const std::string text = v.is_string() ? v.get<std::string>() : flag_value(v);
  if (text.find_first_of(",\"\n") == std::string::npos) {
    return text;
  }
  std::string quoted = "\"";
  for (char c : text) {
    quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  }
  return quoted + "\"";
}

// Single-quotes a flag value for a POSIX shell when it needs it.
std::string shell_word(const std::string& text) {
  if (!text.empty() && text.find_first_of(" \t'\"$\\;&|<>()*?") == std::string::npos) {
    return text;
  }
  std::string quoted = "'";
  for (char c : text) {
    quoted += c == '\'' ? std::string("'\\''") : std::string(1, c);
  }
  return quoted + "'";
}

}  // namespace

void Report::config(const std::string& key, nlohmann::ordered_json value) { config_[key] = std::move(value); }

void Report::summary(const std::string& key, nlohmann::ordered_json value) { summary_[key] = std::move(value); }

void Report::row(std::vector<nlohmann::ordered_json> values) {
  if (values.size() != columns_.size()) {
    throw std::logic_error("report row has " + std::to_string(values.size()) + " values for " +
                           std::to_string(columns_.size()) + " columns");
  }
  rows_.push_back(std::move(values));
}

std::string Report::command_line() const {
  std::string line = "tfimqec " + command_;
  for (const auto& [key, value] : config_.items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) line += " --" + key;
      continue;
    }
    const std::string text = flag_value(value);
    // A leading dash would otherwise be read as the next flag.
    line += " --" + key + (text.starts_with('-') ? "=" : " ") + shell_word(text);
  }
  return line;
}

std::string Report::render(Format format) const {
  std::string out;
  if (format == Format::Csv) {
    out += "# command: " + command_line() + "\n";
    for (const auto& [key, value] : config_.items()) {
      out += "# " + key + "=" + flag_value(value) + "\n";
    }
    for (const auto& [key, value] : summary_.items()) {
      out += "# result." + key + "=" + flag_value(value) + "\n";
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      out += (i ? "," : "") + columns_[i];
    }
    out += "\n";
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        out += (i ? "," : "") + csv_cell(r[i]);
      }
      out += "\n";
    }
    return out;
  }

  nlohmann::ordered_json head = nlohmann::ordered_json::object();
  head["record"] = "config";
  head["command"] = command_line();
  for (const auto& [key, value] : config_.items()) {
    head[key] = value;
  }
  out += head.dump() + "\n";
  if (!summary_.empty()) {
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    summary["record"] = "summary";
    for (const auto& [key, value] : summary_.items()) {
      summary[key] = value;
    }
    out += summary.dump() + "\n";
  }
  for (const auto& r : rows_) {
    nlohmann::ordered_json record = nlohmann::ordered_json::object();
    record["record"] = "row";
    for (std::size_t i = 0; i < r.size(); ++i) {
      record[columns_[i]] = r[i];
    }
    out += record.dump() + "\n";
  }
  return out;
}

}  // namespace tfimqec::cli
