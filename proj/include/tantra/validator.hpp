#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tantra/graph.hpp"
#include "tantra/kernels.hpp"

namespace tantra {

struct SchemaPolicy {
  std::set<std::string> relator_mediated_types;
  std::optional<std::set<std::string>> allowed_rel_types;
  std::set<Aspect> required_aspects;

  // RECEIVES_BENEFIT, SELLS_AT, INSURED_BY and FINANCED_BY need a relator;
  // all nine aspects are required.
  static SchemaPolicy default_policy();

  // Throws InvalidArgument unless mediated types are within the allow-list.
  void check() const;

  bool operator==(const SchemaPolicy&) const = default;
};

// Policy files: header {"format":"tantra-policy","version":1}, then one
// {"rec":"policy",...} record with the fields above as arrays.
SchemaPolicy parse_policy(std::string_view text);
SchemaPolicy load_policy(const std::string& path);
std::string policy_to_jsonl(const SchemaPolicy& policy);

enum class ViolationCode {
  MissingAspect,
  RelatorRequired,
  NumericOnNonWhy,
  DanglingRef,
  DupName,
  IncompletePayload,
  DisallowedRelType,
};

// Stable machine codes: MISSING_ASPECT, RELATOR_REQUIRED, ...
std::string_view to_string(ViolationCode code);

struct Violation {
  ViolationCode code;
  std::vector<ElementId> subjects;
  std::string message;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;  // sorted by code, then subjects
  CoverageMatrix matrix{};

  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationCode code) const;
  std::size_t matrix_total() const;

  bool operator==(const ValidationReport&) const = default;
};

// cell (a, p) = number of elements with aspect a at perspective exactly p.
CoverageMatrix matrix_coverage(const TantraGraph& g, Execution ex = Execution::Parallel);
std::size_t row_total(const CoverageMatrix& m, Aspect a);
std::size_t column_total(const CoverageMatrix& m, Perspective p);

ValidationReport validate(const TantraGraph& g, const SchemaPolicy& policy,
                          Execution ex = Execution::Parallel);

// {"rec":"violation",...} lines followed by one {"rec":"matrix",...} line.
std::string report_to_jsonl(const ValidationReport& report);
// Violations table, a blank line, then the 9x5 matrix with totals.
std::string report_to_tsv(const ValidationReport& report);
std::string matrix_to_tsv(const CoverageMatrix& m);

}  // namespace tantra
