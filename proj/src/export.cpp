#include "tantra/export.hpp"

#include "tantra/metrics.hpp"

namespace tantra {

namespace {

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else if (static_cast<unsigned char>(c) >= 0x20) {
      out += c;
    }
  }
  return out + "\"";
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default:
        if (static_cast<unsigned char>(c) >= 0x20 || c == '\n' || c == '\t') out += c;
    }
  }
  return out;
}

// One drawn edge after relator expansion.
struct DrawnEdge {
  std::string id;
  ElementId source;
  ElementId target;
  std::string rel_type;
  std::optional<ElementId> relator;
};

std::vector<DrawnEdge> drawn_edges(const TantraGraph& g, const Selection& sel) {
  auto selected = [&](const ElementId& id) { return sel.whole_graph || sel.nodes.count(id); };
  std::vector<DrawnEdge> out;
  for (const Relationship* r : g.sorted_relationships()) {
    if (!selected(r->source) || !selected(r->target)) continue;
    if (r->relator) {
      if (!selected(*r->relator)) continue;
      out.push_back({r->id.str() + ".in", r->source, *r->relator, r->rel_type, r->relator});
      out.push_back({r->id.str() + ".out", *r->relator, r->target, r->rel_type, r->relator});
    } else {
      out.push_back({r->id.str(), r->source, r->target, r->rel_type, std::nullopt});
    }
  }
  for (const Measure* m : g.sorted_measures()) {
    if (!selected(m->id)) continue;
    if (selected(m->subject)) {
      out.push_back({m->id.str() + ".subject", m->id, m->subject, std::string(kMeasuresEdge),
                     std::nullopt});
    }
    if (m->at_event && selected(*m->at_event)) {
      out.push_back({m->id.str() + ".event", m->id, *m->at_event, std::string(kAtEventEdge),
                     std::nullopt});
    }
  }
  return out;
}

std::vector<ElementId> drawn_nodes(const TantraGraph& g, const Selection& sel) {
  std::vector<ElementId> out;
  if (sel.whole_graph) {
    Selection all = Selection::all(g);
    return {all.nodes.begin(), all.nodes.end()};
  }
  for (const auto& id : sel.nodes) {
    if (g.find_element(id) || g.find_measure(id)) out.push_back(id);
  }
  return out;
}

}  // namespace

Selection Selection::all(const TantraGraph& g) {
  Selection s;
  s.whole_graph = true;
  for (const auto& [id, e] : g.elements()) s.nodes.insert(id);
  for (const auto& [id, m] : g.measures()) s.nodes.insert(id);
  return s;
}

Selection Selection::of(const QueryResult& r) {
  Selection s;
  s.nodes.insert(r.bound.begin(), r.bound.end());
  return s;
}

NodeStyle style_of(Aspect a) {
  switch (a) {
    case Aspect::Who: return {"ellipse", "#8dd3c7"};
    case Aspect::Where: return {"house", "#ffffb3"};
    case Aspect::What: return {"box", "#bebada"};
    case Aspect::When: return {"octagon", "#fb8072"};
    case Aspect::How: return {"hexagon", "#80b1d3"};
    case Aspect::Why: return {"diamond", "#fdb462"};
    case Aspect::Relationships: return {"parallelogram", "#b3de69"};
    case Aspect::Relators: return {"doubleoctagon", "#fccde5"};
    case Aspect::Separations: return {"trapezium", "#d9d9d9"};
  }
  return {"ellipse", "#ffffff"};
}

std::string export_dot(const TantraGraph& g, const Selection& sel) {
  std::string out = "digraph tantra {\n";
  out += "  graph [rankdir=LR];\n";
  out += "  node [style=filled, fontname=\"Helvetica\"];\n";
  out += "  edge [fontname=\"Helvetica\", fontsize=10];\n";
  for (const auto& id : drawn_nodes(g, sel)) {
    std::string label;
    NodeStyle style{"note", style_of(Aspect::Why).color};
    std::string tooltip;
    if (const Element* e = g.find_element(id)) {
      label = e->name();
      style = style_of(e->aspect());
      tooltip = std::string(to_string(e->aspect())) + "/" + std::string(to_string(e->perspective()));
    } else {
      const Measure& m = *g.find_measure(id);
      label = m.metric_name + "\n" + format_number(m.value) + (m.unit.empty() ? "" : " " + m.unit);
      tooltip = "Why/Measure";
    }
    out += "  " + dot_quote(id.str()) + " [label=" + dot_quote(label) + ", shape=" + style.shape +
           ", fillcolor=" + dot_quote(style.color) + ", tooltip=" + dot_quote(tooltip) + "];\n";
  }
  for (const auto& e : drawn_edges(g, sel)) {
    out += "  " + dot_quote(e.source.str()) + " -> " + dot_quote(e.target.str()) +
           " [label=" + dot_quote(e.rel_type) + ", id=" + dot_quote(e.id) +
           (e.relator ? ", style=dashed" : "") + "];\n";
  }
  out += "}\n";
  return out;
}

std::string export_graphml(const TantraGraph& g, const Selection& sel) {
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" "
      "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
      "xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
      "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n"
      "  <key id=\"aspect\" for=\"node\" attr.name=\"aspect\" attr.type=\"string\"/>\n"
      "  <key id=\"perspective\" for=\"node\" attr.name=\"perspective\" attr.type=\"string\"/>\n"
      "  <key id=\"name\" for=\"node\" attr.name=\"name\" attr.type=\"string\"/>\n"
      "  <key id=\"rel_type\" for=\"edge\" attr.name=\"rel_type\" attr.type=\"string\"/>\n"
      "  <key id=\"relator\" for=\"edge\" attr.name=\"relator\" attr.type=\"string\"/>\n"
      "  <graph id=\"tantra\" edgedefault=\"directed\">\n";
  auto data = [](const char* key, std::string_view value) {
    return std::string("<data key=\"") + key + "\">" + xml_escape(value) + "</data>";
  };
  for (const auto& id : drawn_nodes(g, sel)) {
    out += "    <node id=\"" + xml_escape(id.str()) + "\">";
    if (const Element* e = g.find_element(id)) {
      out += data("aspect", to_string(e->aspect()));
      out += data("perspective", to_string(e->perspective()));
      out += data("name", e->name());
    } else {
      out += data("aspect", to_string(Aspect::Why));
      out += data("name", g.find_measure(id)->metric_name);
    }
    out += "</node>\n";
  }
  for (const auto& e : drawn_edges(g, sel)) {
    out += "    <edge id=\"" + xml_escape(e.id) + "\" source=\"" + xml_escape(e.source.str()) +
           "\" target=\"" + xml_escape(e.target.str()) + "\">" + data("rel_type", e.rel_type);
    if (e.relator) out += data("relator", e.relator->str());
    out += "</edge>\n";
  }
  out += "  </graph>\n</graphml>\n";
  return out;
}

}  // namespace tantra
