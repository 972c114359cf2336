#pragma once
// DOT (digraph) and GraphML renderings. Output is byte-deterministic: nodes
// and edges are emitted in id order.

#include <optional>
#include <set>
#include <string>

#include "tantra/graph.hpp"
#include "tantra/query.hpp"

namespace tantra {

// Nodes to render. A whole-graph selection holds every element and measure
// and every relationship. A query selection holds the ids bound by the
// query and is induced: a relationship appears only when its source, target
// and relator (if any) are all selected.
struct Selection {
  std::set<ElementId> nodes;
  bool whole_graph = false;

  static Selection all(const TantraGraph& g);
  static Selection of(const QueryResult& r);
};

// A mediated edge a -[T via r]-> b is drawn as a -> r -> b, both halves
// labelled T, through the relator's own node.
std::string export_dot(const TantraGraph& g, const Selection& sel);
std::string export_graphml(const TantraGraph& g, const Selection& sel);

struct NodeStyle {
  const char* shape;
  const char* color;
};
NodeStyle style_of(Aspect a);

}  // namespace tantra
