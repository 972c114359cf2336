// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "tantra/dataset.hpp"
#include "tantra/error.hpp"
#include "tantra/export.hpp"
#include "tantra/metrics.hpp"
#include "tantra/persistence.hpp"
#include "tantra/query.hpp"
#include "tantra/toc.hpp"
#include "tantra/validator.hpp"

using namespace tantra;
using namespace tantra::testing;

namespace {

constexpr double kEntropyTol = 1e-9;
constexpr double kDeltaTol = 0.0;  // exact: delta must equal followup - baseline bit for bit
constexpr int kRandomGraphs = 220;
constexpr int kSeparationCases = 110;

struct Check {
  bool ok = true;
  std::ostringstream why;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

using Criterion = std::function<void(Check&)>;

std::set<std::string> exported_labels(const TantraGraph& g, const std::string& query) {
  const QueryResult r = execute(g, parse_query(query));
  const std::string dot = export_dot(g, Selection::of(r));
  if (!check_dot(dot).empty()) return {"<invalid DOT>"};
  const auto labels = dot_node_labels(dot);
  return {labels.begin(), labels.end()};
}

std::string view_query(const std::string& name) {
  for (const auto& v : dataset_views()) {
    if (v.name == name) return v.query;
  }
  throw std::runtime_error("no view " + name);
}

std::string diff(const std::set<std::string>& got, const std::set<std::string>& want) {
  std::string out;
  for (const auto& w : want) {
    if (!got.count(w)) out += " missing '" + w + "'";
  }
  for (const auto& x : got) {
    if (!want.count(x)) out += " extra '" + x + "'";
  }
  return out;
}

void matrix_fidelity(Check& c) {
  c.require(kAllAspects.size() == 9, "aspect count");
  c.require(kAllPerspectives.size() == 5, "perspective count");
  const CoverageMatrix m = matrix_coverage(build_agri_dataset());
  for (Aspect a : kAllAspects) {
    c.require(row_total(m, a) > 0, "empty row " + std::string(to_string(a)));
  }
}

void reconstruction(Check& c) {
  const TantraGraph g = build_agri_dataset();
  const std::set<std::string> who = {
      "Farm-owners", "Farmers", "Tenant Farmers", "Farm-workers", "Small-Holdings Farmers",
      "Medium Farmers", "Large Farmers", "Rich Farmers", "Aggregators", "Traders", "Retailers",
      "Consumers", "PDS Beneficiaries", "APL/BPL beneficiaries", "Money Lenders", "Households",
      "Buyers", "Sellers", "MSP Beneficiary", "APMC Farmer", "Contract Farmer", "Commission Agent",
      "APMC Trader"};
  const std::set<std::string> farms = {"Farm",        "Conventional Farm", "Organic Farm",
                                       "Leisure Farm", "Solar Farm",        "Wind Farm"};
  // "Crops" is the structural parent.
  const std::set<std::string> crops = {"Crops",      "Rice",           "Wheat",   "Sugarcane",
                                       "Pulses",     "Vegetables",     "Cereals", "Coarse Cereals",
                                       "Oilseeds",   "Commercial Crops", "Crops under MSP"};
  const std::set<std::string> measures = {"Measures",   "Yield",       "Productivity", "Incomes",
                                          "Production", "Procurement", "Acreage"};
  c.require(who.size() == 23, "who fixture size");
  const std::pair<const char*, const std::set<std::string>*> views[] = {
      {"people", &who}, {"farms", &farms}, {"crops", &crops}, {"measures", &measures}};
  for (const auto& [name, want] : views) {
    const auto got = exported_labels(g, view_query(name));
    c.require(got == *want, std::string(name) + ":" + diff(got, *want));
  }
  const auto msp = execute(g, parse_query(
      "MATCH (c:What)-[:UNDER_MSP]->(p:What {name: \"Crops under MSP\"}) RETURN c"));
  c.require(msp.rows.size() == 6, "MSP grouping has " + std::to_string(msp.rows.size()) + " crops");
}

void entropy(Check& c) {
  for (std::size_t level = 0; level < kPerspectiveCount; ++level) {
    TantraGraph g;
    for (int i = 0; i < 4; ++i) {
      add_element(g, Aspect::What, "d" + std::to_string(i), static_cast<Perspective>(level));
    }
    c.require(reification_entropy(g, Aspect::What) == 0.0, "degenerate distribution not 0");
  }
  TantraGraph u;
  for (std::size_t level = 0; level < kPerspectiveCount; ++level) {
    add_element(u, Aspect::What, "u" + std::to_string(level), static_cast<Perspective>(level));
  }
  c.require(std::fabs(reification_entropy(u, Aspect::What) - std::log2(5.0)) <= kEntropyTol,
            "uniform distribution not log2(5)");
  Rng rng(20240601);
  int graphs = 0;
  for (int i = 0; i < kRandomGraphs; ++i) {
    GraphShape shape;
    shape.elements = static_cast<std::size_t>(rng.uniform(1, 50));
    shape.relationships = 0;
    shape.measures = 0;
    const TantraGraph g = random_graph(rng, shape);
    ++graphs;
    for (Aspect a : kAllAspects) {
      if (g.by_aspect(a).empty()) continue;
      const double h = reification_entropy(g, a);
      c.require(h >= 0.0 && h <= std::log2(5.0) + kEntropyTol, "bound violated");
    }
  }
  c.require(graphs >= 200, "too few graphs");
}

void separations(Check& c) {
  const MetricsConfig config = MetricsConfig::default_config();
  Rng rng(77001);
  for (SeparationKind kind : kAllSeparationKinds) {
    const SeparationRule& rule = config.separations.at(kind);
    const bool temporal = kind == SeparationKind::Temporal;
    for (int i = 0; i < kSeparationCases; ++i) {
      TantraGraph g;
      std::vector<ElementId> a, b, a_events, b_events;
      for (int k = rng.uniform(1, 5); k > 0; --k) {
        a.push_back(add_element(g, Aspect::Who, "a" + std::to_string(k)));
      }
      for (int k = rng.uniform(1, 5); k > 0; --k) {
        b.push_back(add_element(g, Aspect::Relators, "b" + std::to_string(k)));
      }
      if (temporal) {
        for (int k = 0; k < 4; ++k) {
          const int m = rng.uniform(1, 12);
          char start[16], end[16];
          std::snprintf(start, sizeof start, "2019-%02d-01", m);
          std::snprintf(end, sizeof end, "2019-%02d-28", std::min(12, m + rng.uniform(0, 2)));
          a_events.push_back(add_event(g, "sale" + std::to_string(k), start, end));
          b_events.push_back(add_event(g, "window" + std::to_string(k), start, end));
        }
      }
      const std::vector<std::string> rels(rule.rel_types.begin(), rule.rel_types.end());
      std::vector<ElementId> added;
      auto add_link = [&](TantraGraph& h) {
        if (temporal) {
          return add_edge(h, rng.pick(a), rng.pick(rels), rng.pick(a_events));
        }
        return add_edge(h, rng.pick(a), rng.pick(rels), rng.pick(b));
      };
      if (temporal) {
        for (const auto& who : b) {
          add_edge(g, who, *rule.window_rel_types.begin(), rng.pick(b_events));
        }
      }
      for (int k = rng.uniform(0, 6); k > 0; --k) added.push_back(add_link(g));
      const auto sa = GroupSelector::ids(a);
      const auto sb = GroupSelector::ids(b);
      const auto before = separation_score(g, kind, sa, sb, config);
      c.require(before.score >= 0.0 && before.score <= 1.0, "score out of range");
      c.require(before == separation_score(g, kind, sa, sb, config, Execution::Serial),
                "serial and parallel disagree");

      // For Temporal the coordinating link is a buying window on the b side.
      auto add_qualifying = [&](TantraGraph& h) {
        if (temporal) return add_edge(h, rng.pick(b), *rule.window_rel_types.begin(), rng.pick(a_events));
        return add_link(h);
      };
      {
        // A link added: the score does not rise. That link removed: back to before.
        TantraGraph more = g;
        const ElementId extra = add_qualifying(more);
        const auto after = separation_score(more, kind, sa, sb, config);
        c.require(after.score <= before.score, "adding a link raised the score");
        more.remove_relationship(extra);
        c.require(separation_score(more, kind, sa, sb, config).score == before.score,
                  "removing the added link did not restore the score");
      }
      if (!temporal && !added.empty()) {
        TantraGraph fewer = g;
        fewer.remove_relationship(rng.pick(added));
        c.require(separation_score(fewer, kind, sa, sb, config).score >= before.score,
                  "removing a link lowered the score");
      }
      if (!before.evidence.empty()) {
        TantraGraph dup = g;
        const Relationship r = *g.find_relationship(before.evidence.front());
        add_edge(dup, r.source, r.rel_type, r.target, r.relator);
        const auto d = separation_score(dup, kind, sa, sb, config);
        c.require(d.score == before.score && d.qualifying == before.qualifying &&
                      d.total == before.total,
                  "duplication changed score");
      }
    }
  }
}

void relator_mediation(Check& c) {
  const SchemaPolicy policy = SchemaPolicy::default_policy();
  TantraGraph g = build_agri_dataset();
  c.require(validate(g, policy).violations.empty(), "pristine dataset has violations");
  const ElementId farmers = g.find_by_name(Aspect::Who, "Farmers")->id();
  const ElementId benefit = g.find_by_name(Aspect::What, "Price Support")->id();
  add_edge(g, farmers, "RECEIVES_BENEFIT", benefit);
  const ValidationReport r = validate(g, policy);
  c.require(r.violations.size() == 1 && r.count(ViolationCode::RelatorRequired) == 1,
            std::to_string(r.violations.size()) + " violations after injection");
}

void persistence(Check& c) {
  Rng rng(606);
  for (int i = 0; i < kRandomGraphs; ++i) {
    GraphShape shape;
    shape.elements = static_cast<std::size_t>(rng.uniform(0, 40));
    shape.relationships = shape.elements ? static_cast<std::size_t>(rng.uniform(0, 60)) : 0;
    shape.measures = shape.elements ? static_cast<std::size_t>(rng.uniform(0, 12)) : 0;
    const TantraGraph g = random_graph(rng, shape);
    c.require(deserialize(serialize(g)) == g, "random graph round trip " + std::to_string(i));
  }
  const TantraGraph d = build_agri_dataset();
  c.require(deserialize(serialize(d)) == d, "dataset round trip");
  const std::string h1 = sha256_hex(serialize(build_agri_dataset()));
  const std::string h2 = sha256_hex(serialize(build_agri_dataset()));
  c.require(h1 == h2, "dataset bytes differ between builds");
  c.require(sha256_hex(serialize(deserialize(serialize(d)))) == h1, "reload changes bytes");
}

void dsl(Check& c) {
  const std::vector<std::string> corpus = {
      "MATCH (x:Who) RETURN x",
      "match (x:who) return x",
      "MATCH (x) RETURN *",
      "MATCH (x:Who)-[:SELLS_TO]->(y:Who) RETURN x, y",
      "MATCH (x:Who)-[:SELLS_TO VIA \"Mandi\"]->(y) RETURN x",
      "MATCH (x:Who)-[]->(y) RETURN y",
      "MATCH (f:What)-[:IS_A]->(p:What {name: \"Farm\"}) RETURN f, p",
      "MATCH (m:Why)-[:MEASURES]->(s:How) WHERE m.value > 1000 RETURN m, s",
      "MATCH (m:Why)-[:AT_EVENT]->(t:When {name: \"FY 2019-20\"}) RETURN m",
      "MATCH (x:Who) WHERE x.name CONTAINS \"Farm\" AND x.perspective = \"Instantiated\" RETURN x",
      "MATCH (x:Who) WHERE x.name != \"Farmers\" RETURN x",
      "MATCH (x:How) WHERE x.short_name < \"Q\" RETURN x",
      "MATCH (x:Who {includes_apl: true}) RETURN x",
      "MATCH (x:When {start: 2019-04-01}) RETURN x",
      "MATCH (x {name: \"it's \\\"quoted\\\"\"}) RETURN x",
      "MATCH (:Who)-[:FINANCED_BY]->(b:Relators) RETURN b",
      "MATCH (a)-[:IS_A]->(b)-[:IS_A]->(c) RETURN a, c",
      "MATCH (x:Why) WHERE x.value > -2.5 AND x.value < 1e6 RETURN x",
      "MATCH (x:Who {name: \"Farmers\", scope: \"indian-agriculture\"}) RETURN *",
      "MATCH (x:Separations) RETURN x",
  };
  c.require(corpus.size() == 20, "corpus size");
  for (const auto& text : corpus) {
    const Query q = parse_query(text);
    const std::string printed = print_query(q);
    c.require(parse_query(printed) == q && print_query(parse_query(printed)) == printed,
              "fixpoint fails for " + text);
  }
  // Brute force over the demo: restricted to the Who, Relators and Where
  // elements so enumeration stays at most 30 nodes.
  const TantraGraph demo = build_agri_dataset();
  for (const char* text : {"MATCH (x:Who)-[:SELLS_TO]->(y:Who) RETURN x, y",
                           "MATCH (x:Who)-[:IS_A]->(y:Who) RETURN x",
                           "MATCH (x:Who)-[:SELLS_TO VIA \"Mandi\"]->(y) RETURN x, y"}) {
    TantraGraph sub;
    std::set<ElementId> keep;
    for (const auto& id : demo.by_aspect(Aspect::Who)) keep.insert(id);
    keep.insert(demo.find_by_name(Aspect::Relators, "Mandi")->id());
    keep.insert(demo.find_by_name(Aspect::Where, "Mandi")->id());
    for (const auto& id : keep) sub.insert_element(demo.element(id));
    for (const auto& [rid, r] : demo.relationships()) {
      if (keep.count(r.source) && keep.count(r.target) && (!r.relator || keep.count(*r.relator))) {
        sub.insert_relationship(r);
      }
    }
    c.require(sub.element_count() <= 30, "fixture too large");
    const Query q = parse_query(text);
    const auto got = execute(sub, q).rows.size();
    std::set<std::vector<ElementId>> projected;
    for (const auto& m : brute_force_matches(sub, q)) {
      std::vector<ElementId> row;
      for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        for (const auto& v : q.returns) {
          if (q.nodes[i].var == v) row.push_back(m[i]);
        }
      }
      projected.insert(row);
    }
    c.require(got == projected.size() && got > 0, std::string("row count mismatch for ") + text);
  }
  Rng rng(707);
  for (int i = 0; i < 60; ++i) {
    GraphShape shape;
    shape.elements = static_cast<std::size_t>(rng.uniform(2, 22));
    shape.measures = static_cast<std::size_t>(rng.uniform(0, 8));
    const TantraGraph g = random_graph(rng, shape);
    for (const char* text : {"MATCH (a)-[:IS_A]->(b) RETURN a, b",
                             "MATCH (m:Why)-[:MEASURES]->(s) RETURN m, s",
                             "MATCH (a:Who)-[]->(b)-[]->(c) RETURN a, b, c"}) {
      const Query q = parse_query(text);
      c.require(match_all(g, q) == brute_force_matches(g, q), std::string("random mismatch ") + text);
    }
  }
}

void theory_of_change(Check& c) {
  TantraGraph g = build_agri_dataset();
  const InterventionRecord rec = farm_law_one_record(g);
  const ElementId id = register_intervention(g, rec);
  InterventionRecord want = rec;
  want.id = id;
  c.require(fetch_intervention(g, id) == want, "record does not round-trip");
  c.require(kNarrativeFields.size() == 14, "field count");
  c.require(intervention_from_json(intervention_to_json(want)) == want, "JSON round trip");

  const ElementId y0 = add_event(g, "Survey 2020", "2020-06-01");
  const ElementId y1 = add_event(g, "Survey 2021", "2021-06-01");
  const ElementId farmers = g.find_by_name(Aspect::Who, "Farmers")->id();
  const ElementId rice = g.find_by_name(Aspect::What, "Rice")->id();
  const double share0 = 0.10, share1 = 0.25;
  for (const auto& m : rec.change_markers) {
    const ElementId subject = m.subject.kind == GroupSelector::Kind::Label ? rice : farmers;
    const bool share = m.metric_name == "% of farmers selling outside APMC system";
    g.attach_measure(subject, m.metric_name, share ? share0 : 100.0, "", y0);
    g.attach_measure(subject, m.metric_name, share ? share1 : 130.0, "", y1);
  }
  const auto rows = evaluate_intervention(g, id, y0, y1);
  bool seen = false;
  for (const auto& r : rows) {
    if (r.metric_name != "% of farmers selling outside APMC system") continue;
    seen = true;
    c.require(std::fabs(r.delta - (share1 - share0)) <= kDeltaTol, "delta is not followup - baseline");
    c.require(std::fabs(r.delta - 0.15) < 1e-15, "delta is not +0.15");
  }
  c.require(seen, "marker missing from evaluation");
  for (const auto& r : evaluate_intervention(g, id, y1, y1)) {
    c.require(r.delta == 0.0, "baseline=followup gives nonzero delta");
  }
}

void budget(Check& c) {
  const TantraGraph g = build_agri_dataset();
  const Element* fy = g.find_by_name(Aspect::When, "FY 2019-20");
  c.require(fy != nullptr, "no FY 2019-20 event");
  if (!fy) return;
  int hits = 0;
  for (const Measure* m : g.sorted_measures()) {
    const Element& s = g.element(m->subject);
    auto it = s.properties().find("short_name");
    if (it == s.properties().end() || it->second != Literal{std::string("PM-KISAN")}) continue;
    if (m->metric_name == kBudgetMetric && m->at_event == fy->id()) {
      ++hits;
      c.require(m->value == 75000.0 && m->unit == kBudgetUnit, "outlay value or unit");
    }
  }
  c.require(hits == 1, std::to_string(hits) + " PM-KISAN 2019-20 outlay measures");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Criterion>> criteria = {
      {"matrix fidelity", matrix_fidelity},
      {"dataset reconstruction", reconstruction},
      {"reification entropy", entropy},
      {"separation properties", separations},
      {"relator mediation", relator_mediation},
      {"persistence", persistence},
      {"query language", dsl},
      {"theory of change", theory_of_change},
      {"budget measures", budget},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %zu %s", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first);
    if (!c.ok) std::printf(": %s", c.why.str().c_str());
    std::printf("\n");
    failed += c.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
