#pragma once

// Serialization of command results. Output is a pure function of the
// document: compact JSON with insertion-ordered keys, RFC 4180 CSV, or
// plain text, always with LF line endings.

#include <string>
#include <vector>

#include <json.hpp>

namespace f1kit {

enum class Format { Json, Csv, Text };

Format parse_format(const std::string& name);
std::string to_string(Format format);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Document {
  nlohmann::ordered_json json = nlohmann::ordered_json::object();
  Table table;
  std::vector<std::string> text;
};

/// Quotes a CSV field when it contains a comma, quote, CR or LF.
std::string csv_field(const std::string& s);

std::string emit(const Document& doc, Format format);

}  // namespace f1kit
