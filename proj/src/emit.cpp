#include "f1kit/emit.hpp"

#include <stdexcept>

namespace f1kit {

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "text") return Format::Text;
  throw std::invalid_argument("unknown format '" + name + "' (expected json, csv or text)");
}

std::string to_string(Format format) {
  switch (format) {
    case Format::Json:
      return "json";
    case Format::Csv:
      return "csv";
    case Format::Text:
      return "text";
  }
  return "";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i != 0) line += ',';
    line += csv_field(fields[i]);
  }
  return line + "\n";
}

}  // namespace

std::string emit(const Document& doc, Format format) {
  switch (format) {
    case Format::Json:
      return doc.json.dump() + "\n";
    case Format::Csv: {
      std::string out = csv_line(doc.table.columns);
      for (const auto& row : doc.table.rows) {
        if (row.size() != doc.table.columns.size()) throw std::logic_error("emit: row width differs from header");
        out += csv_line(row);
      }
      return out;
    }
    case Format::Text: {
      std::string out;
      for (const auto& line : doc.text) out += line + "\n";
      return out;
    }
  }
  return "";
}

}  // namespace f1kit
