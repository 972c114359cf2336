#include "tantra/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <unordered_set>

#include "json_codec.hpp"

namespace tantra {

using codec::json;

namespace {

template <typename E, std::size_t N>
std::optional<E> parse_from(std::string_view text, const std::array<E, N>& all) {
  for (E e : all) {
    if (to_string(e) == text) return e;
  }
  return std::nullopt;
}

constexpr std::array<Aggregation, 4> kAggregations = {Aggregation::Sum, Aggregation::Mean,
                                                      Aggregation::Count, Aggregation::Spread};
constexpr std::array<Direction, 2> kDirections = {Direction::Maximize, Direction::Minimize};
constexpr std::array<Phenomenon, 4> kPhenomena = {Phenomenon::Coevolution,
                                                  Phenomenon::SelfOrganization,
                                                  Phenomenon::Adaptation, Phenomenon::Emergence};

const Element& require_event(const TantraGraph& g, const ElementId& id) {
  const Element* e = g.find_element(id);
  if (!e || e->aspect() != Aspect::When) {
    throw Error(ErrorCode::UnknownEvent, "unknown event " + id.str());
  }
  return *e;
}

std::optional<Date> date_property(const Relationship& r, const char* key) {
  auto it = r.properties.find(key);
  if (it == r.properties.end()) return std::nullopt;
  if (const Date* d = std::get_if<Date>(&it->second)) return *d;
  return std::nullopt;
}

bool active_at(const Relationship& r, const std::optional<Date>& when) {
  auto from = date_property(r, "valid_from");
  auto to = date_property(r, "valid_to");
  if (!from && !to) return true;
  if (!when) return false;
  return (!from || *from <= *when) && (!to || *when < *to);
}

std::set<std::string> string_set(const json& j, const char* key, std::size_t line_no) {
  if (!j.contains(key)) return {};
  try {
    return j[key].get<std::set<std::string>>();
  } catch (const json::exception& e) {
    throw MalformedRecordError(line_no, e.what());
  }
}

}  // namespace

std::string_view to_string(Aggregation a) {
  switch (a) {
    case Aggregation::Sum: return "sum";
    case Aggregation::Mean: return "mean";
    case Aggregation::Count: return "count";
    case Aggregation::Spread: return "spread";
  }
  return "?";
}

std::string_view to_string(Direction d) {
  return d == Direction::Maximize ? "maximize" : "minimize";
}

std::string_view to_string(Phenomenon p) {
  switch (p) {
    case Phenomenon::Coevolution: return "Coevolution";
    case Phenomenon::SelfOrganization: return "SelfOrganization";
    case Phenomenon::Adaptation: return "Adaptation";
    case Phenomenon::Emergence: return "Emergence";
  }
  return "?";
}

std::optional<Aggregation> parse_aggregation(std::string_view text) {
  return parse_from(text, kAggregations);
}
std::optional<Direction> parse_direction(std::string_view text) {
  return parse_from(text, kDirections);
}
std::optional<Phenomenon> parse_phenomenon(std::string_view text) {
  return parse_from(text, kPhenomena);
}

GroupSelector GroupSelector::parse(std::string_view text) {
  auto starts = [&](std::string_view prefix) { return text.substr(0, prefix.size()) == prefix; };
  GroupSelector s;
  if (text == "*" || text.empty()) {
    s.kind = Kind::All;
  } else if (starts("aspect:")) {
    s.kind = Kind::Aspect;
    s.value = std::string(text.substr(7));
  } else if (starts("label:")) {
    s.kind = Kind::Label;
    s.value = std::string(text.substr(6));
  } else if (starts("id:")) {
    s.kind = Kind::Ids;
    s.value = std::string(text.substr(3));
  } else if (starts("name:")) {
    s.kind = Kind::Name;
    s.value = std::string(text.substr(5));
  } else {
    s.kind = Kind::Name;
    s.value = std::string(text);
  }
  return s;
}

GroupSelector GroupSelector::ids(const std::vector<ElementId>& ids) {
  GroupSelector s;
  s.kind = Kind::Ids;
  for (const auto& id : ids) s.value += (s.value.empty() ? "" : ",") + id.str();
  return s;
}

std::string GroupSelector::to_string() const {
  switch (kind) {
    case Kind::All: return "*";
    case Kind::Aspect: return "aspect:" + value;
    case Kind::Label: return "label:" + value;
    case Kind::Ids: return "id:" + value;
    case Kind::Name: return value;
  }
  return value;
}

std::vector<ElementId> resolve(const TantraGraph& g, const GroupSelector& sel,
                               const std::set<std::string>& member_rel_types) {
  std::vector<ElementId> out;
  switch (sel.kind) {
    case GroupSelector::Kind::All:
      for (const Element* e : g.sorted_elements()) out.push_back(e->id());
      return out;
    case GroupSelector::Kind::Aspect: {
      auto a = parse_aspect(sel.value);
      if (!a) throw Error(ErrorCode::UnknownLabel, "unknown aspect '" + sel.value + "'");
      const auto& ids = g.by_aspect(*a);
      return {ids.begin(), ids.end()};
    }
    case GroupSelector::Kind::Label:
      for (const Element* e : g.sorted_elements()) {
        if (e->schema_config() && e->schema_config()->labels.count(sel.value)) {
          out.push_back(e->id());
        }
      }
      return out;
    case GroupSelector::Kind::Ids: {
      std::set<ElementId> ids;
      std::string_view rest = sel.value;
      while (!rest.empty()) {
        auto comma = rest.find(',');
        ElementId id(std::string(rest.substr(0, comma)));
        if (g.find_element(id)) ids.insert(id);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
      return {ids.begin(), ids.end()};
    }
    case GroupSelector::Kind::Name: {
      std::set<ElementId> seen(g.by_name(sel.value).begin(), g.by_name(sel.value).end());
      std::deque<ElementId> frontier(seen.begin(), seen.end());
      while (!frontier.empty()) {
        ElementId cur = frontier.front();
        frontier.pop_front();
        for (const auto& rid : g.adjacency(cur).in) {
          const Relationship& r = *g.find_relationship(rid);
          if (member_rel_types.count(r.rel_type) && seen.insert(r.source).second) {
            frontier.push_back(r.source);
          }
        }
      }
      return {seen.begin(), seen.end()};
    }
  }
  return out;
}

double reification_entropy(const TantraGraph& g, Aspect aspect) {
  const auto& ids = g.by_aspect(aspect);
  if (ids.empty()) {
    throw Error(ErrorCode::EmptyAspect, "no element of aspect " + std::string(to_string(aspect)));
  }
  std::array<std::size_t, kPerspectiveCount> counts{};
  for (const auto& id : ids) ++counts[index_of(g.element(id).perspective())];
  const double n = static_cast<double>(ids.size());
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double q = static_cast<double>(c) / n;
    h -= q * std::log2(q);
  }
  return h == 0.0 ? 0.0 : h;  // normalise -0.0
}

SeparationAssessment separation_score(const TantraGraph& g, SeparationKind kind,
                                      const GroupSelector& a, const GroupSelector& b,
                                      const MetricsConfig& config, Execution ex) {
  const auto rule_it = config.separations.find(kind);
  if (rule_it == config.separations.end()) {
    throw Error(ErrorCode::UnknownKind,
                "no qualifying-link rule configured for " + std::string(to_string(kind)));
  }
  const SeparationRule& rule = rule_it->second;
  const auto members = resolve(g, a, config.member_rel_types);
  const auto others = resolve(g, b, config.member_rel_types);
  if (members.empty()) throw Error(ErrorCode::EmptyGroup, "group a is empty: " + a.to_string());
  if (others.empty()) throw Error(ErrorCode::EmptyGroup, "group b is empty: " + b.to_string());
  const std::unordered_set<ElementId> group_b(others.begin(), others.end());

  SeparationAssessment out;
  out.kind = kind;
  out.group_a = a.to_string();
  out.group_b = b.to_string();

  if (kind == SeparationKind::Temporal) {
    std::vector<EventSpan> windows;
    for (const auto& id : others) {
      for (const auto& rid : g.adjacency(id).out) {
        const Relationship& r = *g.find_relationship(rid);
        if (!rule.window_rel_types.count(r.rel_type)) continue;
        const Element& w = g.element(r.target);
        if (w.aspect() == Aspect::When && w.span()) windows.push_back(*w.span());
      }
    }
    // Distinct (member, sale event) pairs; the lowest edge id stands for each.
    std::vector<const Relationship*> sales;
    for (const auto& id : members) {
      std::map<ElementId, const Relationship*> by_event;
      for (const auto& rid : g.adjacency(id).out) {
        const Relationship& r = *g.find_relationship(rid);
        if (!rule.rel_types.count(r.rel_type)) continue;
        const Element& ev = g.element(r.target);
        if (ev.aspect() != Aspect::When || !ev.span()) continue;
        auto [it, fresh] = by_event.emplace(r.target, &r);
        if (!fresh && r.id < it->second->id) it->second = &r;
      }
      for (const auto& [ev, r] : by_event) sales.push_back(r);
    }
    std::vector<char> overlapping(sales.size(), 0);
    kernels::for_each_index(ex, sales.size(), [&](std::size_t i) {
      const EventSpan& span = *g.element(sales[i]->target).span();
      overlapping[i] = std::any_of(windows.begin(), windows.end(),
                                   [&](const EventSpan& w) { return w.overlaps(span); });
    });
    out.total = sales.size();
    for (std::size_t i = 0; i < sales.size(); ++i) {
      if (overlapping[i]) {
        ++out.qualifying;
        out.evidence.push_back(sales[i]->id);
      }
    }
    out.score = out.total == 0 ? 1.0
                               : 1.0 - static_cast<double>(out.qualifying) /
                                           static_cast<double>(out.total);
  } else {
    auto target_ok = [&](const ElementId& t) {
      if (!group_b.count(t)) return false;
      const Element& e = g.element(t);
      if (!rule.target_aspects.empty() && !rule.target_aspects.count(e.aspect())) return false;
      for (const auto& excluded : rule.exclude_target_names) {
        if (name_key(excluded) == name_key(e.name())) return false;
      }
      return true;
    };
    // Per member, the edges proving it qualifies (empty if it does not).
    std::vector<std::vector<ElementId>> proof(members.size());
    kernels::for_each_index(ex, members.size(), [&](std::size_t i) {
      const ElementId& start = members[i];
      if (!rule.transitive) {
        for (const auto& rid : g.adjacency(start).out) {
          const Relationship& r = *g.find_relationship(rid);
          if (rule.rel_types.count(r.rel_type) && target_ok(r.target)) proof[i].push_back(rid);
        }
        return;
      }
      // BFS keeping the edge used to reach each node, to report one path.
      std::unordered_map<ElementId, ElementId> via;
      std::deque<ElementId> frontier{start};
      std::unordered_set<ElementId> seen{start};
      while (!frontier.empty()) {
        ElementId cur = frontier.front();
        frontier.pop_front();
        for (const auto& rid : g.adjacency(cur).out) {
          const Relationship& r = *g.find_relationship(rid);
          if (!rule.rel_types.count(r.rel_type) || !seen.insert(r.target).second) continue;
          via.emplace(r.target, rid);
          if (target_ok(r.target)) {
            for (ElementId node = r.target; node != start;) {
              const ElementId& edge = via.at(node);
              proof[i].push_back(edge);
              node = g.find_relationship(edge)->source;
            }
            return;
          }
          frontier.push_back(r.target);
        }
      }
    });
    out.total = members.size();
    std::set<ElementId> evidence;
    for (const auto& p : proof) {
      if (p.empty()) continue;
      ++out.qualifying;
      evidence.insert(p.begin(), p.end());
    }
    out.evidence.assign(evidence.begin(), evidence.end());
    out.score = 1.0 - static_cast<double>(out.qualifying) / static_cast<double>(out.total);
  }
  std::sort(out.evidence.begin(), out.evidence.end());
  return out;
}

AggregateValue aggregate_measures(const TantraGraph& g, std::string_view metric_name,
                                  const GroupSelector& subject,
                                  const std::optional<ElementId>& at_event, Aggregation agg,
                                  const std::set<std::string>& member_rel_types) {
  std::vector<double> values;
  auto consider = [&](const Measure& m) {
    if (m.metric_name != metric_name) return;
    if (at_event && m.at_event != at_event) return;
    values.push_back(m.value);
  };
  if (subject.kind == GroupSelector::Kind::All) {
    for (const Measure* m : g.sorted_measures()) consider(*m);
  } else {
    for (const auto& id : resolve(g, subject, member_rel_types)) {
      for (const auto& mid : g.measures_of(id)) consider(*g.find_measure(mid));
    }
  }
  AggregateValue out;
  out.count = values.size();
  if (values.empty()) return out;
  std::sort(values.begin(), values.end());  // order-independent summation
  double sum = 0.0;
  for (double v : values) sum += v;
  switch (agg) {
    case Aggregation::Sum: out.value = sum; break;
    case Aggregation::Mean: out.value = sum / static_cast<double>(values.size()); break;
    case Aggregation::Count: out.value = static_cast<double>(values.size()); break;
    case Aggregation::Spread: out.value = values.back() - values.front(); break;
  }
  return out;
}

std::vector<GoalResult> goal_eval(const TantraGraph& g, const GoalRecord& goal,
                                  const std::optional<ElementId>& at_event) {
  if (goal.bindings.empty()) {
    throw Error(ErrorCode::InvalidArgument, "goal '" + goal.statement + "' has no metric bindings");
  }
  if (at_event) require_event(g, *at_event);
  std::vector<GoalResult> out;
  for (const auto& b : goal.bindings) {
    const AggregateValue v = aggregate_measures(g, b.metric_name, b.subject, at_event, b.aggregation);
    if (v.count == 0) {
      throw Error(ErrorCode::UnresolvedBinding, "no measure '" + b.metric_name + "' for subject " +
                                                    b.subject.to_string());
    }
    GoalResult r;
    r.metric_name = b.metric_name;
    r.observed = v.value;
    r.target = b.target;
    r.direction = b.direction;
    if (b.target) {
      r.met = b.direction == Direction::Maximize ? v.value >= *b.target : v.value <= *b.target;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<PhenomenonRow> phenomena_report(const TantraGraph& g, const ElementId& baseline,
                                            const ElementId& followup,
                                            const MetricsConfig& config) {
  const Element& base_ev = require_event(g, baseline);
  const Element& follow_ev = require_event(g, followup);

  auto value_at = [&](const MarkerDef& m, const Element& ev) -> double {
    if (m.source == MarkerDef::Source::Measures) {
      return aggregate_measures(g, m.metric_name, m.subject, ev.id(), m.aggregation,
                                config.member_rel_types)
          .value;
    }
    std::optional<Date> when;
    if (ev.span()) when = ev.span()->start;
    std::size_t count = 0;
    for (const auto& t : resolve(g, m.target, config.member_rel_types)) {
      for (const auto& rid : g.adjacency(t).in) {
        const Relationship& r = *g.find_relationship(rid);
        if (r.rel_type == m.rel_type && active_at(r, when)) ++count;
      }
    }
    return static_cast<double>(count);
  };

  std::vector<PhenomenonRow> rows;
  for (Phenomenon p : kPhenomena) {
    for (const auto& m : config.markers) {
      if (m.phenomenon != p) continue;
      PhenomenonRow row;
      row.phenomenon = p;
      row.marker = m.name;
      row.baseline = value_at(m, base_ev);
      row.followup = value_at(m, follow_ev);
      row.delta = row.followup - row.baseline;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

MetricsConfig MetricsConfig::default_config() {
  MetricsConfig c;
  c.separations[SeparationKind::Informational] = {{"INFORMED_BY"}, true, {Aspect::Relators}, {}, {}};
  c.separations[SeparationKind::Spatial] = {{"LOCATED_NEAR", "SERVED_BY"}, false, {}, {}, {}};
  c.separations[SeparationKind::Temporal] = {{"SELLS_DURING"}, false, {}, {}, {"BUYS_DURING"}};
  c.separations[SeparationKind::Financial] = {
      {"FINANCED_BY"}, false, {Aspect::Relators}, {"Money Lender", "Money Lenders"}, {}};
  c.separations[SeparationKind::Capability] = {{"HAS_CAPABILITY"}, false, {}, {}, {}};
  c.separations[SeparationKind::Intellectual] = {{"HAS_KNOWHOW"}, false, {}, {}, {}};
  c.separations[SeparationKind::SocioPolitical] = {{"AFFILIATED_WITH"}, false, {}, {}, {}};

  MarkerDef coevolution;
  coevolution.phenomenon = Phenomenon::Coevolution;
  coevolution.name = "profit_share_spread";
  coevolution.metric_name = "Profit Share";
  coevolution.aggregation = Aggregation::Spread;

  MarkerDef self_org;
  self_org.phenomenon = Phenomenon::SelfOrganization;
  self_org.name = "cooperative_memberships";
  self_org.source = MarkerDef::Source::Edges;
  self_org.rel_type = "MEMBER_OF";
  self_org.target = GroupSelector::parse("Farmer Co-operatives");

  MarkerDef adaptation;
  adaptation.phenomenon = Phenomenon::Adaptation;
  adaptation.name = "diversified_acreage";
  adaptation.metric_name = "Diversified Acreage";
  adaptation.aggregation = Aggregation::Sum;

  MarkerDef emergence;
  emergence.phenomenon = Phenomenon::Emergence;
  emergence.name = "non_farm_income_records";
  emergence.metric_name = "Non-Farm Income";
  emergence.aggregation = Aggregation::Count;

  c.markers = {coevolution, self_org, adaptation, emergence};
  return c;
}

MetricsConfig parse_metrics_config(std::string_view text) {
  const auto lines = codec::split_lines(text);
  if (lines.empty()) throw MalformedRecordError(1, "missing header");
  codec::parse_header(lines[0], "tantra-metrics");
  MetricsConfig c;
  c.member_rel_types = {"IS_A"};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (lines[i].empty()) continue;
    const json rec = codec::parse_line(lines[i], line_no);
    const std::string kind = codec::require_string(rec, "rec", line_no);
    if (kind == "membership") {
      c.member_rel_types = string_set(rec, "rel_types", line_no);
    } else if (kind == "separation") {
      auto k = parse_separation_kind(codec::require_string(rec, "kind", line_no));
      if (!k) throw MalformedRecordError(line_no, "unknown separation kind");
      SeparationRule rule;
      rule.rel_types = string_set(rec, "rel_types", line_no);
      if (rule.rel_types.empty()) throw MalformedRecordError(line_no, "rel_types is required");
      rule.transitive = rec.value("transitive", false);
      for (const auto& name : string_set(rec, "target_aspects", line_no)) {
        auto a = parse_aspect(name);
        if (!a) throw MalformedRecordError(line_no, "unknown aspect '" + name + "'");
        rule.target_aspects.insert(*a);
      }
      rule.exclude_target_names = string_set(rec, "exclude_target_names", line_no);
      rule.window_rel_types = string_set(rec, "window_rel_types", line_no);
      c.separations[*k] = std::move(rule);
    } else if (kind == "marker") {
      MarkerDef m;
      auto p = parse_phenomenon(codec::require_string(rec, "phenomenon", line_no));
      if (!p) throw MalformedRecordError(line_no, "unknown phenomenon");
      m.phenomenon = *p;
      m.name = codec::require_string(rec, "name", line_no);
      const std::string source = codec::require_string(rec, "source", line_no);
      if (source == "measures") {
        m.source = MarkerDef::Source::Measures;
        m.metric_name = codec::require_string(rec, "metric_name", line_no);
        m.subject = GroupSelector::parse(rec.value("subject", std::string("*")));
        auto agg = parse_aggregation(rec.value("aggregation", std::string("sum")));
        if (!agg) throw MalformedRecordError(line_no, "unknown aggregation");
        m.aggregation = *agg;
      } else if (source == "edges") {
        m.source = MarkerDef::Source::Edges;
        m.rel_type = codec::require_string(rec, "rel_type", line_no);
        m.target = GroupSelector::parse(rec.value("target", std::string("*")));
      } else {
        throw MalformedRecordError(line_no, "source must be 'measures' or 'edges'");
      }
      c.markers.push_back(std::move(m));
    } else {
      throw MalformedRecordError(line_no, "unknown record kind '" + kind + "'");
    }
  }
  return c;
}

MetricsConfig load_metrics_config(const std::string& path) {
  return parse_metrics_config(codec::read_file(path));
}

std::string metrics_config_to_jsonl(const MetricsConfig& c) {
  std::string out = codec::dump({{"format", "tantra-metrics"}, {"version", 1}}) + "\n";
  out += codec::dump({{"rec", "membership"}, {"rel_types", c.member_rel_types}}) + "\n";
  for (const auto& [kind, rule] : c.separations) {
    json rec = {{"rec", "separation"},
                {"kind", std::string(to_string(kind))},
                {"rel_types", rule.rel_types},
                {"transitive", rule.transitive}};
    if (!rule.target_aspects.empty()) {
      json aspects = json::array();
      for (Aspect a : rule.target_aspects) aspects.push_back(std::string(to_string(a)));
      rec["target_aspects"] = std::move(aspects);
    }
    if (!rule.exclude_target_names.empty()) rec["exclude_target_names"] = rule.exclude_target_names;
    if (!rule.window_rel_types.empty()) rec["window_rel_types"] = rule.window_rel_types;
    out += codec::dump(rec) + "\n";
  }
  for (const auto& m : c.markers) {
    json rec = {{"rec", "marker"},
                {"phenomenon", std::string(to_string(m.phenomenon))},
                {"name", m.name}};
    if (m.source == MarkerDef::Source::Measures) {
      rec["source"] = "measures";
      rec["metric_name"] = m.metric_name;
      rec["subject"] = m.subject.to_string();
      rec["aggregation"] = std::string(to_string(m.aggregation));
    } else {
      rec["source"] = "edges";
      rec["rel_type"] = m.rel_type;
      rec["target"] = m.target.to_string();
    }
    out += codec::dump(rec) + "\n";
  }
  return out;
}

std::vector<GoalRecord> parse_goals(std::string_view text) {
  const auto lines = codec::split_lines(text);
  if (lines.empty()) throw MalformedRecordError(1, "missing header");
  codec::parse_header(lines[0], "tantra-goals");
  std::vector<GoalRecord> goals;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (lines[i].empty()) continue;
    const json rec = codec::parse_line(lines[i], line_no);
    if (codec::require_string(rec, "rec", line_no) != "goal") {
      throw MalformedRecordError(line_no, "expected a goal record");
    }
    GoalRecord goal;
    auto eco = parse_sub_ecosystem(codec::require_string(rec, "ecosystem", line_no));
    if (!eco) throw MalformedRecordError(line_no, "unknown ecosystem");
    goal.ecosystem = *eco;
    goal.statement = codec::require_string(rec, "statement", line_no);
    const json& bindings = codec::require(rec, "bindings", line_no);
    if (!bindings.is_array() || bindings.empty()) {
      throw MalformedRecordError(line_no, "a goal needs at least one metric binding");
    }
    for (const json& b : bindings) {
      MetricBinding mb;
      mb.metric_name = codec::require_string(b, "metric_name", line_no);
      mb.subject = GroupSelector::parse(b.value("subject", std::string("*")));
      auto dir = parse_direction(b.value("direction", std::string("maximize")));
      if (!dir) throw MalformedRecordError(line_no, "direction must be maximize or minimize");
      mb.direction = *dir;
      if (b.contains("target")) {
        if (!b["target"].is_number()) throw MalformedRecordError(line_no, "target must be a number");
        mb.target = b["target"].get<double>();
      }
      auto agg = parse_aggregation(b.value("aggregation", std::string("sum")));
      if (!agg) throw MalformedRecordError(line_no, "unknown aggregation");
      mb.aggregation = *agg;
      goal.bindings.push_back(std::move(mb));
    }
    goals.push_back(std::move(goal));
  }
  return goals;
}

std::vector<GoalRecord> load_goals(const std::string& path) {
  return parse_goals(codec::read_file(path));
}

std::string goals_to_jsonl(const std::vector<GoalRecord>& goals) {
  std::string out = codec::dump({{"format", "tantra-goals"}, {"version", 1}}) + "\n";
  for (const auto& goal : goals) {
    json bindings = json::array();
    for (const auto& b : goal.bindings) {
      json jb = {{"metric_name", b.metric_name},
                 {"subject", b.subject.to_string()},
                 {"direction", std::string(to_string(b.direction))},
                 {"aggregation", std::string(to_string(b.aggregation))}};
      if (b.target) jb["target"] = *b.target;
      bindings.push_back(std::move(jb));
    }
    out += codec::dump({{"rec", "goal"},
                        {"ecosystem", std::string(to_string(goal.ecosystem))},
                        {"statement", goal.statement},
                        {"bindings", bindings}}) +
           "\n";
  }
  return out;
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string entropy_to_tsv(const std::vector<std::pair<Aspect, double>>& rows) {
  std::string out = "aspect\tentropy_bits\n";
  for (const auto& [a, h] : rows) out += std::string(to_string(a)) + "\t" + format_number(h) + "\n";
  return out;
}

std::string separation_to_tsv(const SeparationAssessment& s) {
  std::string evidence;
  for (const auto& id : s.evidence) evidence += (evidence.empty() ? "" : ",") + id.str();
  return "kind\tfrom\tto\tscore\tqualifying\ttotal\tevidence\n" + std::string(to_string(s.kind)) +
         "\t" + s.group_a + "\t" + s.group_b + "\t" + format_number(s.score) + "\t" +
         std::to_string(s.qualifying) + "\t" + std::to_string(s.total) + "\t" + evidence + "\n";
}

std::string goals_to_tsv(
    const std::vector<std::pair<const GoalRecord*, std::vector<GoalResult>>>& rows) {
  std::string out = "ecosystem\tstatement\tmetric\tobserved\ttarget\tdirection\tmet\n";
  for (const auto& [goal, results] : rows) {
    for (const auto& r : results) {
      out += std::string(to_string(goal->ecosystem)) + "\t" + goal->statement + "\t" +
             r.metric_name + "\t" + format_number(r.observed) + "\t" +
             (r.target ? format_number(*r.target) : "-") + "\t" +
             std::string(to_string(r.direction)) + "\t" +
             (r.met ? (*r.met ? "true" : "false") : "-") + "\n";
    }
  }
  return out;
}

std::string phenomena_to_tsv(const std::vector<PhenomenonRow>& rows) {
  std::string out = "phenomenon\tmarker\tbaseline\tfollowup\tdelta\n";
  for (const auto& r : rows) {
    out += std::string(to_string(r.phenomenon)) + "\t" + r.marker + "\t" +
           format_number(r.baseline) + "\t" + format_number(r.followup) + "\t" +
           format_number(r.delta) + "\n";
  }
  return out;
}

}  // namespace tantra
