#pragma once
// CSV and JSON-lines ingestion into a TantraGraph.
//
// Mapping files: header {"format":"tantra-mapping","version":1} with an
// optional "columns" array that the CSV header must equal, then one record
// per template. Every string in a template may reference columns as
// {column}; "{{" and "}}" are literal braces.
//
//   {"rec":"element", "aspect":"Who", "name":"{role}", "scope":"...",
//    "perspective":"Instantiated", "definition":"...", "labels":["Role"],
//    "sub_ecosystem":"{eco}", "attrs":{"k":"{col}"},
//    "properties":{"k":"{col}", "n":{"value":"{col}","type":"number"}}}
//   {"rec":"measure", "metric_name":"...", "value":"{v}", "unit":"...",
//    "subject":"{who}", "subject_aspect":"Who", "at_event":"{when}"}
//   {"rec":"relationship", "rel_type":"...", "source":"{a}", "target":"{b}",
//    "relator":"{r}", "source_aspect":"Who", "target_aspect":"Where"}
//
// References (subject, source, target, relator, at_event) resolve as an id
// first, then as a unique name within the optional aspect. Templates run
// in file order, each over every row.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tantra/graph.hpp"

namespace tantra {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;  // 1-based source line where each row starts
};

// RFC 4180 with LF or CRLF record separators; a UTF-8 BOM is dropped.
// Throws MalformedRecord on an unterminated quoted field.
CsvTable parse_csv(std::string_view text);

// A string with {column} placeholders.
struct FieldTemplate {
  struct Part {
    bool column = false;
    std::string text;

    bool operator==(const Part&) const = default;
  };
  std::vector<Part> parts;

  static FieldTemplate parse(std::string_view text);  // throws BadMapping
  std::vector<std::string> columns() const;
  bool empty() const { return parts.empty(); }

  bool operator==(const FieldTemplate&) const = default;
};

enum class ValueType { String, Number, Bool, Date };

struct PropertyTemplate {
  FieldTemplate value;
  ValueType type = ValueType::String;

  bool operator==(const PropertyTemplate&) const = default;
};

struct RecordTemplate {
  enum class Kind { Element, Measure, Relationship };
  Kind kind = Kind::Element;
  std::map<std::string, FieldTemplate> fields;
  std::vector<FieldTemplate> labels;
  std::map<std::string, FieldTemplate> attrs;
  std::map<std::string, PropertyTemplate> properties;

  bool operator==(const RecordTemplate&) const = default;
};

struct IngestMapping {
  std::optional<std::vector<std::string>> columns;
  std::vector<RecordTemplate> templates;

  // Every column any template references. Sorted, unique.
  std::vector<std::string> referenced_columns() const;

  bool operator==(const IngestMapping&) const = default;
};

// Throws BadMapping (with the line) for unknown kinds, missing required
// fields, constant aspects that are not one of the nine, bad types.
IngestMapping parse_mapping(std::string_view text);
IngestMapping load_mapping(const std::string& path);

struct IngestViolation {
  std::size_t row;  // source line of the row, or the record line for JSON-lines
  std::string reason;

  bool operator==(const IngestViolation&) const = default;
};

struct IngestResult {
  std::size_t inserted = 0;
  std::size_t skipped = 0;
  std::vector<IngestViolation> violations;
};

// Throws IoFailure, BadMapping (header mismatch or unknown column),
// MalformedRecord (broken CSV quoting).
IngestResult ingest_csv(TantraGraph& g, const std::string& path, const IngestMapping& mapping);
IngestResult ingest_csv_text(TantraGraph& g, std::string_view csv, const IngestMapping& mapping);

// Header {"format":"tantra-records","version":1}, then element, relationship
// and measure records as in the graph file; empty ids are issued. Records
// that fail to decode or insert are skipped with reasons.
IngestResult ingest_jsonl(TantraGraph& g, const std::string& path);
IngestResult ingest_jsonl_text(TantraGraph& g, std::string_view text);

std::string ingest_result_to_tsv(const IngestResult& r);

}  // namespace tantra
