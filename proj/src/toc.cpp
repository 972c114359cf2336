#include "tantra/toc.hpp"

#include <cstdio>

#include "json_codec.hpp"

namespace tantra {

using codec::json;

const std::vector<std::string> kNarrativeFields = {
    "summary",       "problem",           "overall_goal",   "change_process", "change_markers",
    "meta_theory",   "inputs",            "actors",         "domains_of_change",
    "internal_risks", "assumptions",      "external_risks", "obstacles",      "knock_on_effects"};

namespace {

constexpr const char* kLabel = "Intervention";
constexpr const char* kScope = "theory-of-change";

std::string prop_key(std::string_view field) { return "toc." + std::string(field); }

std::string slot(std::string_view prefix, std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03zu", i);
  return std::string(prefix) + "." + buf;
}

json markers_to_json(const std::vector<ChangeMarker>& markers) {
  json out = json::array();
  for (const auto& m : markers) {
    out.push_back({{"metric_name", m.metric_name},
                   {"subject", m.subject.to_string()},
                   {"aggregation", std::string(to_string(m.aggregation))}});
  }
  return out;
}

std::vector<ChangeMarker> markers_from_json(const json& j) {
  if (!j.is_array()) throw codec::DecodeFailure("change_markers must be an array");
  std::vector<ChangeMarker> out;
  for (const json& m : j) {
    if (!m.is_object() || !m.contains("metric_name") || !m["metric_name"].is_string()) {
      throw codec::DecodeFailure("change marker needs a metric_name");
    }
    ChangeMarker cm;
    cm.metric_name = m["metric_name"].get<std::string>();
    cm.subject = GroupSelector::parse(m.value("subject", std::string("*")));
    auto agg = parse_aggregation(m.value("aggregation", std::string("sum")));
    if (!agg) throw codec::DecodeFailure("unknown aggregation");
    cm.aggregation = *agg;
    out.push_back(std::move(cm));
  }
  return out;
}

std::vector<std::string> strings_from_json(const json& j, const char* field) {
  if (!j.is_array()) throw codec::DecodeFailure(std::string(field) + " must be an array");
  std::vector<std::string> out;
  for (const json& s : j) {
    if (!s.is_string()) throw codec::DecodeFailure(std::string(field) + " must hold strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

const Element& require_intervention(const TantraGraph& g, const ElementId& id) {
  const Element* e = g.find_element(id);
  if (!e || !is_intervention(*e)) {
    throw Error(ErrorCode::UnknownIntervention, "no intervention " + id.str());
  }
  return *e;
}

void require_event(const TantraGraph& g, const ElementId& id) {
  const Element* e = g.find_element(id);
  if (!e || e->aspect() != Aspect::When) {
    throw Error(ErrorCode::UnknownEvent, "unknown event " + id.str());
  }
}

std::string string_prop(const Element& e, std::string_view field) {
  const Literal* v = e.property(prop_key(field));
  const std::string* s = v ? std::get_if<std::string>(v) : nullptr;
  return s ? *s : std::string();
}

json json_prop(const Element& e, std::string_view field) {
  return json::parse(string_prop(e, field), nullptr, false);
}

std::string tsv_cell(std::string s) {
  for (char& c : s) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

bool is_intervention(const Element& e) {
  return e.aspect() == Aspect::How && e.schema_config() && e.schema_config()->labels.count(kLabel);
}

std::vector<ElementId> interventions(const TantraGraph& g) {
  std::vector<ElementId> out;
  for (const auto& id : g.by_aspect(Aspect::How)) {
    if (is_intervention(g.element(id))) out.push_back(id);
  }
  return out;
}

ElementId register_intervention(TantraGraph& g, const InterventionRecord& rec) {
  if (rec.change_markers.empty()) {
    throw Error(ErrorCode::MissingMarkers, "intervention needs at least one change marker");
  }
  for (const auto& m : rec.change_markers) {
    if (m.metric_name.empty()) throw Error(ErrorCode::MissingMarkers, "change marker without a metric");
  }
  for (const auto& a : rec.actors) {
    if (!g.find_element(a)) throw Error(ErrorCode::UnknownActor, "unknown actor " + a.str());
  }
  if (canonical_name(rec.summary).empty()) {
    throw Error(ErrorCode::InvalidArgument, "intervention summary is empty");
  }
  if (rec.linked_process) {
    const Element* p = g.find_element(*rec.linked_process);
    if (!p || p->aspect() != Aspect::How) {
      throw Error(ErrorCode::InvalidArgument,
                  "linked process " + rec.linked_process->str() + " is not a How element");
    }
  }

  Element e = [&] {
    if (rec.id.empty()) return g.new_element(Aspect::How, rec.summary, kScope);
    if (g.contains(rec.id)) throw Error(ErrorCode::DuplicateId, "id already in use: " + rec.id.str());
    Element::Parts parts;
    parts.id = rec.id;
    parts.aspect = Aspect::How;
    parts.name = canonical_name(rec.summary);
    parts.scope = kScope;
    return Element::from_parts(std::move(parts));
  }();

  PromotionPayload payload;
  payload.definition = canonical_name(rec.overall_goal).empty() ? rec.summary : rec.overall_goal;
  e = promote(e, Perspective::Conceptual, payload);
  for (std::size_t i = 0; i < rec.change_markers.size(); ++i) {
    payload.logical_attrs[slot("change_marker", i)] = Literal{rec.change_markers[i].metric_name};
  }
  for (std::size_t i = 0; i < rec.actors.size(); ++i) {
    payload.logical_attrs[slot("actor", i)] = rec.actors[i];
  }
  if (rec.linked_process) payload.logical_attrs["linked_process"] = *rec.linked_process;
  e = promote(e, Perspective::Logical, payload);
  SchemaConfig schema;
  schema.labels = {kLabel};
  for (const auto& f : kNarrativeFields) {
    if (f != "actors") schema.property_keys.insert(prop_key(f));
  }
  payload.schema_config = schema;
  e = promote(e, Perspective::Physical, payload);
  payload.final_id = e.id();
  e = promote(e, Perspective::Instantiated, payload);

  e.set_property(prop_key("summary"), rec.summary);
  e.set_property(prop_key("problem"), rec.problem);
  e.set_property(prop_key("overall_goal"), rec.overall_goal);
  e.set_property(prop_key("change_process"), rec.change_process);
  e.set_property(prop_key("change_markers"), markers_to_json(rec.change_markers).dump());
  e.set_property(prop_key("meta_theory"), rec.meta_theory);
  e.set_property(prop_key("inputs"), json(rec.inputs).dump());
  e.set_property(prop_key("domains_of_change"), json(rec.domains_of_change).dump());
  e.set_property(prop_key("internal_risks"), json(rec.internal_risks).dump());
  e.set_property(prop_key("assumptions"), json(rec.assumptions).dump());
  e.set_property(prop_key("external_risks"), json(rec.external_risks).dump());
  e.set_property(prop_key("obstacles"), json(rec.obstacles).dump());
  e.set_property(prop_key("knock_on_effects"), json(rec.knock_on_effects).dump());
  return g.insert_element(std::move(e));
}

InterventionRecord fetch_intervention(const TantraGraph& g, const ElementId& id) {
  const Element& e = require_intervention(g, id);
  InterventionRecord rec;
  rec.id = e.id();
  rec.summary = string_prop(e, "summary");
  rec.problem = string_prop(e, "problem");
  rec.overall_goal = string_prop(e, "overall_goal");
  rec.change_process = string_prop(e, "change_process");
  rec.meta_theory = string_prop(e, "meta_theory");
  try {
    rec.change_markers = markers_from_json(json_prop(e, "change_markers"));
    rec.inputs = strings_from_json(json_prop(e, "inputs"), "inputs");
    rec.domains_of_change = strings_from_json(json_prop(e, "domains_of_change"), "domains_of_change");
    rec.internal_risks = strings_from_json(json_prop(e, "internal_risks"), "internal_risks");
    rec.assumptions = strings_from_json(json_prop(e, "assumptions"), "assumptions");
    rec.external_risks = strings_from_json(json_prop(e, "external_risks"), "external_risks");
    rec.obstacles = strings_from_json(json_prop(e, "obstacles"), "obstacles");
    rec.knock_on_effects = strings_from_json(json_prop(e, "knock_on_effects"), "knock_on_effects");
  } catch (const codec::DecodeFailure& err) {
    throw Error(ErrorCode::UnknownIntervention,
                "intervention " + id.str() + " has corrupt metadata: " + err.what());
  }
  for (const auto& [key, value] : e.logical_attrs()) {
    const auto* ref = std::get_if<ElementId>(&value);
    if (!ref) continue;
    if (key.rfind("actor.", 0) == 0) rec.actors.push_back(*ref);
    if (key == "linked_process") rec.linked_process = *ref;
  }
  return rec;
}

std::string_view to_string(ChangeDirection d) {
  switch (d) {
    case ChangeDirection::Increased: return "increased";
    case ChangeDirection::Decreased: return "decreased";
    case ChangeDirection::Unchanged: return "unchanged";
  }
  return "?";
}

std::vector<MarkerChange> evaluate_intervention(const TantraGraph& g, const ElementId& id,
                                                const ElementId& baseline,
                                                const ElementId& followup) {
  const InterventionRecord rec = fetch_intervention(g, id);
  require_event(g, baseline);
  require_event(g, followup);
  std::vector<MarkerChange> out;
  for (const auto& m : rec.change_markers) {
    auto at = [&](const ElementId& ev) {
      AggregateValue v = aggregate_measures(g, m.metric_name, m.subject, ev, m.aggregation);
      if (v.count == 0) throw MarkerUnmeasuredError(m.metric_name, ev.str());
      return v.value;
    };
    MarkerChange c;
    c.metric_name = m.metric_name;
    c.baseline = at(baseline);
    c.followup = at(followup);
    c.delta = c.followup - c.baseline;
    c.direction = c.delta > 0   ? ChangeDirection::Increased
                  : c.delta < 0 ? ChangeDirection::Decreased
                                : ChangeDirection::Unchanged;
    if (c.delta == 0.0) c.delta = 0.0;
    out.push_back(std::move(c));
  }
  return out;
}

ElementId link_evidence(TantraGraph& g, const ElementId& intervention,
                        const std::string& assumption, const ElementId& evidence) {
  require_intervention(g, intervention);
  Relationship r;
  r.rel_type = std::string(kSupportedBy);
  r.source = intervention;
  r.target = evidence;
  r.properties["assumption"] = assumption;
  return g.insert_relationship(std::move(r));
}

std::string_view to_string(ChainFlag::Kind k) {
  switch (k) {
    case ChainFlag::Kind::UnsupportedAssumption: return "UNSUPPORTED_ASSUMPTION";
    case ChainFlag::Kind::IsolatedActor: return "ISOLATED_ACTOR";
    case ChainFlag::Kind::MissingActor: return "MISSING_ACTOR";
  }
  return "?";
}

ChainReport backward_chain(const TantraGraph& g, const ElementId& id) {
  const InterventionRecord rec = fetch_intervention(g, id);
  ChainReport report;
  report.id = id;
  report.outcome = rec.overall_goal;
  report.change_process = rec.change_process;
  report.inputs = rec.inputs;

  for (const auto& text : rec.assumptions) {
    ChainReport::Assumption a;
    a.text = text;
    for (const auto& rid : g.adjacency(id).out) {
      const Relationship& r = *g.find_relationship(rid);
      if (r.rel_type != kSupportedBy) continue;
      auto it = r.properties.find("assumption");
      if (it != r.properties.end() && it->second == Literal{text}) a.evidence.push_back(rid);
    }
    if (a.evidence.empty()) report.flags.push_back({ChainFlag::Kind::UnsupportedAssumption, text});
    report.assumptions.push_back(std::move(a));
  }

  for (const auto& actor : rec.actors) {
    ChainReport::Actor a;
    a.id = actor;
    if (const Element* e = g.find_element(actor)) {
      a.name = e->name();
      const Adjacency& adj = g.adjacency(actor);
      a.relationships = adj.out.size() + adj.in.size() + g.mediated_by(actor).size();
      if (a.relationships == 0) report.flags.push_back({ChainFlag::Kind::IsolatedActor, actor.str()});
    } else {
      report.flags.push_back({ChainFlag::Kind::MissingActor, actor.str()});
    }
    report.actors.push_back(std::move(a));
  }
  return report;
}

std::string intervention_to_json(const InterventionRecord& rec) {
  json actors = json::array();
  for (const auto& a : rec.actors) actors.push_back(a.str());
  json j = {{"id", rec.id.str()},
            {"summary", rec.summary},
            {"problem", rec.problem},
            {"overall_goal", rec.overall_goal},
            {"change_process", rec.change_process},
            {"change_markers", markers_to_json(rec.change_markers)},
            {"meta_theory", rec.meta_theory},
            {"inputs", rec.inputs},
            {"actors", actors},
            {"domains_of_change", rec.domains_of_change},
            {"internal_risks", rec.internal_risks},
            {"assumptions", rec.assumptions},
            {"external_risks", rec.external_risks},
            {"obstacles", rec.obstacles},
            {"knock_on_effects", rec.knock_on_effects}};
  j["linked_process"] = rec.linked_process ? json(rec.linked_process->str()) : json(nullptr);
  return j.dump(2) + "\n";
}

InterventionRecord intervention_from_json(std::string_view text) {
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw MalformedRecordError(1, "intervention record must be one JSON object");
  }
  InterventionRecord rec;
  try {
    for (const auto& f : kNarrativeFields) {
      if (!j.contains(f)) throw codec::DecodeFailure("missing field '" + f + "'");
    }
    auto str = [&](const char* f) {
      if (!j[f].is_string()) throw codec::DecodeFailure(std::string(f) + " must be a string");
      return j[f].get<std::string>();
    };
    if (j.contains("id") && !j["id"].is_null()) rec.id = ElementId(str("id"));
    rec.summary = str("summary");
    rec.problem = str("problem");
    rec.overall_goal = str("overall_goal");
    rec.change_process = str("change_process");
    rec.change_markers = markers_from_json(j["change_markers"]);
    rec.meta_theory = str("meta_theory");
    rec.inputs = strings_from_json(j["inputs"], "inputs");
    for (const auto& a : strings_from_json(j["actors"], "actors")) rec.actors.emplace_back(a);
    rec.domains_of_change = strings_from_json(j["domains_of_change"], "domains_of_change");
    rec.internal_risks = strings_from_json(j["internal_risks"], "internal_risks");
    rec.assumptions = strings_from_json(j["assumptions"], "assumptions");
    rec.external_risks = strings_from_json(j["external_risks"], "external_risks");
    rec.obstacles = strings_from_json(j["obstacles"], "obstacles");
    rec.knock_on_effects = strings_from_json(j["knock_on_effects"], "knock_on_effects");
    if (j.contains("linked_process") && !j["linked_process"].is_null()) {
      rec.linked_process = ElementId(str("linked_process"));
    }
  } catch (const codec::DecodeFailure& e) {
    throw MalformedRecordError(1, e.what());
  }
  return rec;
}

InterventionRecord load_intervention(const std::string& path) {
  return intervention_from_json(codec::read_file(path));
}

std::string evaluation_to_tsv(const std::vector<MarkerChange>& rows) {
  std::string out = "metric\tbaseline\tfollowup\tdelta\tdirection\n";
  for (const auto& r : rows) {
    out += tsv_cell(r.metric_name) + "\t" + format_number(r.baseline) + "\t" +
           format_number(r.followup) + "\t" + format_number(r.delta) + "\t" +
           std::string(to_string(r.direction)) + "\n";
  }
  return out;
}

std::string chain_to_tsv(const ChainReport& report) {
  std::string out = "step\tsubject\tstatus\n";
  out += "outcome\t" + tsv_cell(report.outcome) + "\t-\n";
  out += "change_process\t" + tsv_cell(report.change_process) + "\t-\n";
  for (const auto& i : report.inputs) out += "input\t" + tsv_cell(i) + "\t-\n";
  for (const auto& a : report.assumptions) {
    std::string evidence;
    for (const auto& id : a.evidence) evidence += (evidence.empty() ? "" : ",") + id.str();
    out += "assumption\t" + tsv_cell(a.text) + "\t" +
           (evidence.empty() ? "UNSUPPORTED" : "supported:" + evidence) + "\n";
  }
  for (const auto& a : report.actors) {
    out += "actor\t" + a.id.str() + (a.name.empty() ? "" : " " + tsv_cell(a.name)) + "\t" +
           (a.name.empty() ? "MISSING"
                           : a.relationships == 0 ? "ISOLATED"
                                                  : "linked:" + std::to_string(a.relationships)) +
           "\n";
  }
  for (const auto& f : report.flags) {
    out += "flag\t" + tsv_cell(f.subject) + "\t" + std::string(to_string(f.kind)) + "\n";
  }
  return out;
}

}  // namespace tantra
