#pragma once
// Quantitative layer over a TantraGraph: reification entropy, separation
// scores, goal evaluation and ecosystem-phenomena change markers. All
// operations are read-only.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tantra/graph.hpp"
#include "tantra/kernels.hpp"

namespace tantra {

// Selects a group of elements. Text forms:
//   "Farmers" or "name:Farmers"  elements with that name, plus everything
//                                that reaches them over member edges (IS_A)
//   "aspect:Relators"            every element of an aspect
//   "label:Crop"                 elements whose schema labels contain Crop
//   "id:WHO-000001,WHO-000002"   explicit ids
//   "*"                          every element
struct GroupSelector {
  enum class Kind { Name, Aspect, Label, Ids, All };

  Kind kind = Kind::All;
  std::string value;

  static GroupSelector parse(std::string_view text);
  static GroupSelector all() { return {}; }
  static GroupSelector ids(const std::vector<ElementId>& ids);
  std::string to_string() const;

  bool operator==(const GroupSelector&) const = default;
};

enum class Aggregation { Sum, Mean, Count, Spread };
enum class Direction { Maximize, Minimize };
enum class Phenomenon { Coevolution, SelfOrganization, Adaptation, Emergence };

std::string_view to_string(Aggregation a);
std::string_view to_string(Direction d);
std::string_view to_string(Phenomenon p);
std::optional<Aggregation> parse_aggregation(std::string_view text);
std::optional<Direction> parse_direction(std::string_view text);
std::optional<Phenomenon> parse_phenomenon(std::string_view text);

// Qualifying links for one separation kind. A member of group a qualifies
// when it has an outgoing edge (or, if `transitive`, a path) over
// `rel_types` to a member of group b that passes the target filters.
// Temporal instead pairs a's sale events (`rel_types`, to When elements)
// with b's buying windows (`window_rel_types`).
struct SeparationRule {
  std::set<std::string> rel_types;
  bool transitive = false;
  std::set<Aspect> target_aspects;            // empty: any aspect
  std::set<std::string> exclude_target_names;  // compared by name_key
  std::set<std::string> window_rel_types;      // Temporal only

  bool operator==(const SeparationRule&) const = default;
};

struct MarkerDef {
  enum class Source { Measures, Edges };

  Phenomenon phenomenon = Phenomenon::Coevolution;
  std::string name;
  Source source = Source::Measures;
  // Measures source
  std::string metric_name;
  GroupSelector subject;
  Aggregation aggregation = Aggregation::Sum;
  // Edges source: edges of rel_type into `target` active at the event date
  std::string rel_type;
  GroupSelector target;

  bool operator==(const MarkerDef&) const = default;
};

struct MetricsConfig {
  std::map<SeparationKind, SeparationRule> separations;
  std::vector<MarkerDef> markers;
  std::set<std::string> member_rel_types = {"IS_A"};

  static MetricsConfig default_config();

  bool operator==(const MetricsConfig&) const = default;
};

// Header {"format":"tantra-metrics","version":1}; then records with
// "rec" of "separation", "marker" or "membership".
MetricsConfig parse_metrics_config(std::string_view text);
MetricsConfig load_metrics_config(const std::string& path);
std::string metrics_config_to_jsonl(const MetricsConfig& config);

// Sorted, unique. Throws UnknownLabel for an aspect selector naming no aspect.
std::vector<ElementId> resolve(const TantraGraph& g, const GroupSelector& sel,
                               const std::set<std::string>& member_rel_types = {"IS_A"});

// Shannon entropy (bits) of the perspective distribution of one aspect.
// Throws EmptyAspect.
double reification_entropy(const TantraGraph& g, Aspect aspect);

struct SeparationAssessment {
  SeparationKind kind;
  std::string group_a;
  std::string group_b;
  double score = 0.0;              // 0 = no separation, 1 = full
  std::size_t qualifying = 0;
  std::size_t total = 0;           // members (or sale-event pairs for Temporal)
  std::vector<ElementId> evidence;  // contributing relationship ids, sorted

  bool operator==(const SeparationAssessment&) const = default;
};

// Throws EmptyGroup, UnknownKind.
SeparationAssessment separation_score(const TantraGraph& g, SeparationKind kind,
                                      const GroupSelector& a, const GroupSelector& b,
                                      const MetricsConfig& config = MetricsConfig::default_config(),
                                      Execution ex = Execution::Parallel);

struct AggregateValue {
  double value = 0.0;
  std::size_t count = 0;
};

// The single aggregation path behind goals, interventions and phenomena:
// measures named `metric_name` whose subject is selected and, if given,
// whose event is `at_event`. With no matching measures the value is 0.
AggregateValue aggregate_measures(const TantraGraph& g, std::string_view metric_name,
                                  const GroupSelector& subject,
                                  const std::optional<ElementId>& at_event, Aggregation agg,
                                  const std::set<std::string>& member_rel_types = {"IS_A"});

struct MetricBinding {
  std::string metric_name;
  GroupSelector subject;
  Direction direction = Direction::Maximize;
  std::optional<double> target;
  Aggregation aggregation = Aggregation::Sum;

  bool operator==(const MetricBinding&) const = default;
};

struct GoalRecord {
  SubEcosystem ecosystem = SubEcosystem::Economic;
  std::string statement;
  std::vector<MetricBinding> bindings;  // at least one

  bool operator==(const GoalRecord&) const = default;
};

struct GoalResult {
  std::string metric_name;
  double observed = 0.0;
  std::optional<double> target;
  Direction direction = Direction::Maximize;
  std::optional<bool> met;  // only defined when a target is set
};

// Header {"format":"tantra-goals","version":1}; one {"rec":"goal",...} per line.
std::vector<GoalRecord> parse_goals(std::string_view text);
std::vector<GoalRecord> load_goals(const std::string& path);
std::string goals_to_jsonl(const std::vector<GoalRecord>& goals);

// Throws UnresolvedBinding, UnknownEvent, InvalidArgument (no bindings).
std::vector<GoalResult> goal_eval(const TantraGraph& g, const GoalRecord& goal,
                                  const std::optional<ElementId>& at_event = std::nullopt);

struct PhenomenonRow {
  Phenomenon phenomenon;
  std::string marker;
  double baseline = 0.0;
  double followup = 0.0;
  double delta = 0.0;
};

// Edge markers count edges active at the event's start date: an edge with
// "valid_from"/"valid_to" date properties is active on [from, to); undated
// edges are always active. Throws UnknownEvent.
std::vector<PhenomenonRow> phenomena_report(const TantraGraph& g, const ElementId& baseline,
                                            const ElementId& followup,
                                            const MetricsConfig& config = MetricsConfig::default_config());

std::string entropy_to_tsv(const std::vector<std::pair<Aspect, double>>& rows);
std::string separation_to_tsv(const SeparationAssessment& s);
std::string goals_to_tsv(const std::vector<std::pair<const GoalRecord*, std::vector<GoalResult>>>& rows);
std::string phenomena_to_tsv(const std::vector<PhenomenonRow>& rows);

// Shortest round-trip decimal rendering, used in every TSV table.
std::string format_number(double v);

}  // namespace tantra
