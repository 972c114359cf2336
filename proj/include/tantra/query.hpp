#pragma once
// Pattern-matching query language:
//
//   query   := MATCH pattern (WHERE pred (AND pred)*)? RETURN ("*" | var ("," var)*)
//   pattern := node (edge node)*
//   node    := "(" var? (":" ASPECT)? props? ")"
//   edge    := "-[" (":" IDENT)? (VIA STRING)? "]->"
//   props   := "{" IDENT ":" literal ("," IDENT ":" literal)* "}"
//   pred    := var "." IDENT op literal      op := = | != | < | > | CONTAINS
//
// Keywords are case-insensitive. Measures match as Why nodes and reach their
// subject and event over the virtual edge types MEASURES and AT_EVENT.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tantra/graph.hpp"
#include "tantra/kernels.hpp"

namespace tantra {

struct PropertyTest {
  std::string key;
  Literal value;

  bool operator==(const PropertyTest&) const = default;
};

struct NodePattern {
  std::string var;    // empty for an anonymous node
  std::string label;  // aspect name as written; empty matches any
  std::vector<PropertyTest> props;

  bool operator==(const NodePattern&) const = default;
};

struct EdgePattern {
  std::optional<std::string> rel_type;
  std::optional<std::string> via;  // relator name

  bool operator==(const EdgePattern&) const = default;
};

enum class CompareOp { Eq, Ne, Lt, Gt, Contains };

struct Predicate {
  std::string var;
  std::string field;
  CompareOp op = CompareOp::Eq;
  Literal value;

  bool operator==(const Predicate&) const = default;
};

struct Query {
  std::vector<NodePattern> nodes;  // nodes.size() == edges.size() + 1
  std::vector<EdgePattern> edges;
  std::vector<Predicate> where;
  bool return_all = false;
  std::vector<std::string> returns;

  bool operator==(const Query&) const = default;
};

inline constexpr std::string_view kMeasuresEdge = "MEASURES";
inline constexpr std::string_view kAtEventEdge = "AT_EVENT";

// Throws SyntaxError; also for duplicate or undeclared variables.
Query parse_query(std::string_view text);
// Canonical text; parse_query(print_query(q)) == q.
std::string print_query(const Query& q);

struct QueryResult {
  std::vector<std::string> columns;
  std::vector<std::vector<ElementId>> rows;  // projected, sorted
  // Ids bound anywhere in any match (including unprojected nodes), sorted.
  std::vector<ElementId> bound;
};

// All homomorphic matches. Rows are sorted by projected tuple, then by the
// full tuple. Throws UnknownLabel.
QueryResult execute(const TantraGraph& g, const Query& q, Execution ex = Execution::Parallel);

// Every full match (one id per pattern node), sorted. The basis of execute.
std::vector<std::vector<ElementId>> match_all(const TantraGraph& g, const Query& q,
                                              Execution ex = Execution::Parallel);

// Field value of an element or measure as seen by predicates, or nullopt.
// Fields: id, name, aspect, perspective, scope, definition, sub_ecosystem,
// any property key; measures: metric_name, value, unit, subject, at_event.
std::optional<Literal> field_value(const TantraGraph& g, const ElementId& id,
                                   std::string_view field);

// Columns per variable: the id, then the name (metric_name for measures).
std::string result_to_tsv(const TantraGraph& g, const QueryResult& r);
std::string result_to_jsonl(const TantraGraph& g, const QueryResult& r);

}  // namespace tantra
