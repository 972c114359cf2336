#pragma once
// Reference computations written independently of the library code paths
// they check.

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tantra/graph.hpp"
#include "tantra/query.hpp"

namespace tantra::testing {

// H = log2(N) - (1/N) * sum c*log2(c) over the nonzero level counts.
double entropy_oracle(const std::array<std::size_t, kPerspectiveCount>& counts);

// Enumerates every assignment of graph nodes (elements and measures) to the
// pattern variables and keeps those satisfying every constraint. Exponential;
// for graphs of at most ~30 nodes and patterns of at most 3 nodes.
std::vector<std::vector<ElementId>> brute_force_matches(const TantraGraph& g, const Query& q);

// Accepts the subset of the DOT language: `digraph ID { stmt* }` with node,
// edge and attribute statements, quoted or bare IDs, [a=b, ...] lists.
// Returns an empty string when valid, else the first problem.
std::string check_dot(std::string_view text);

// Element names that occur as node labels in a DOT document.
std::vector<std::string> dot_node_labels(std::string_view text);

// Well-formed XML with balanced tags; returns empty when fine.
std::string check_xml(std::string_view text);

}  // namespace tantra::testing
