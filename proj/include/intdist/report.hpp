#pragma once

// Line-delimited report documents, CSV export and SVG scatter plots.
//
// A document is a sequence of "key: value" lines opening with schemaVersion
// and closing with "end". Points are written as x,y.

#include "intdist/multi_point.hpp"
#include "intdist/oracle.hpp"
#include "intdist/pair_classifier.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace intdist {

inline constexpr const char* kSchemaVersion = "1";

/// Malformed document or coordinate token.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "x,y" with arbitrary-size integers.
LatticePoint parse_point(const std::string& token);
std::string format_point(const LatticePoint& p);

std::string render_structure(const StructureReport& report, const std::string& command);
std::string render_structure_summary(const StructureReport& report);
std::string render_structure_csv(const StructureReport& report);

std::string render_generated(const StructureReport& report, const std::vector<GeneratedPoint>& points,
                             const std::string& command);
std::string render_generated_csv(const std::vector<GeneratedPoint>& points);

std::string render_multi(const MultiReport& report, const std::string& command);
std::string render_multi_summary(const MultiReport& report);
std::string render_multi_csv(const MultiReport& report);

std::string render_oracle(const std::vector<LatticePoint>& given, const OracleResult& result,
                          const std::string& command);
std::string render_oracle_csv(const OracleResult& result);

struct ParsedDocument {
  std::string schema_version;
  std::string command;
  std::string report;
  std::vector<LatticePoint> given;
  /// Every "point:" entry, in document order.
  std::vector<LatticePoint> points;
  /// Every line other than the terminator, in order.
  std::vector<std::pair<std::string, std::string>> fields;

  std::optional<std::string> field(const std::string& key) const;
};

ParsedDocument parse_document(const std::string& text);

/// The oracle payload of a parsed oracle document.
OracleResult to_oracle_result(const ParsedDocument& doc);

/// Given points as squares, found points as circles, with labeled axes.
std::string render_svg(const ParsedDocument& doc);

}  // namespace intdist
