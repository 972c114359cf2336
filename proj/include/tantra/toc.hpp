#pragma once
// Theory-of-change interventions, stored as How elements at Instantiated.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tantra/graph.hpp"
#include "tantra/metrics.hpp"

namespace tantra {

struct ChangeMarker {
  std::string metric_name;
  GroupSelector subject;
  Aggregation aggregation = Aggregation::Sum;

  bool operator==(const ChangeMarker&) const = default;
};

struct InterventionRecord {
  ElementId id;  // empty: issued on registration
  std::string summary;
  std::string problem;
  std::string overall_goal;
  std::string change_process;
  std::vector<ChangeMarker> change_markers;
  std::string meta_theory;
  std::vector<std::string> inputs;
  std::vector<ElementId> actors;
  std::vector<std::string> domains_of_change;
  std::vector<std::string> internal_risks;
  std::vector<std::string> assumptions;
  std::vector<std::string> external_risks;
  std::vector<std::string> obstacles;
  std::vector<std::string> knock_on_effects;
  std::optional<ElementId> linked_process;

  bool operator==(const InterventionRecord&) const = default;
};

// The fourteen narrative field names, in record order.
extern const std::vector<std::string> kNarrativeFields;

// Throws MissingMarkers, UnknownActor, DuplicateId, InvalidArgument (empty
// summary, or linked_process not a How element).
ElementId register_intervention(TantraGraph& g, const InterventionRecord& rec);

// Throws UnknownIntervention.
InterventionRecord fetch_intervention(const TantraGraph& g, const ElementId& id);
bool is_intervention(const Element& e);
std::vector<ElementId> interventions(const TantraGraph& g);

enum class ChangeDirection { Increased, Decreased, Unchanged };
std::string_view to_string(ChangeDirection d);

struct MarkerChange {
  std::string metric_name;
  double baseline = 0.0;
  double followup = 0.0;
  double delta = 0.0;
  ChangeDirection direction = ChangeDirection::Unchanged;
};

// Throws UnknownIntervention, UnknownEvent, MarkerUnmeasured.
std::vector<MarkerChange> evaluate_intervention(const TantraGraph& g, const ElementId& id,
                                                const ElementId& baseline,
                                                const ElementId& followup);

// An assumption counts as supported when the intervention has an outgoing
// SUPPORTED_BY edge whose "assumption" property equals its text.
inline constexpr std::string_view kSupportedBy = "SUPPORTED_BY";
ElementId link_evidence(TantraGraph& g, const ElementId& intervention,
                        const std::string& assumption, const ElementId& evidence);

struct ChainFlag {
  enum class Kind { UnsupportedAssumption, IsolatedActor, MissingActor };
  Kind kind;
  std::string subject;  // assumption text or actor id

  bool operator==(const ChainFlag&) const = default;
};
std::string_view to_string(ChainFlag::Kind k);

struct ChainReport {
  ElementId id;
  std::string outcome;
  std::string change_process;
  std::vector<std::string> inputs;
  struct Assumption {
    std::string text;
    std::vector<ElementId> evidence;  // SUPPORTED_BY edge ids
  };
  std::vector<Assumption> assumptions;
  struct Actor {
    ElementId id;
    std::string name;  // empty when the actor is gone
    std::size_t relationships = 0;
  };
  std::vector<Actor> actors;
  std::vector<ChainFlag> flags;
};

// Throws UnknownIntervention.
ChainReport backward_chain(const TantraGraph& g, const ElementId& id);

// One JSON object per record; snake_case field names as above. Markers are
// {"metric_name","subject","aggregation"}.
std::string intervention_to_json(const InterventionRecord& rec);
InterventionRecord intervention_from_json(std::string_view text);  // throws MalformedRecord
InterventionRecord load_intervention(const std::string& path);

std::string evaluation_to_tsv(const std::vector<MarkerChange>& rows);
std::string chain_to_tsv(const ChainReport& report);

}  // namespace tantra
