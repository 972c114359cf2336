#include <gtest/gtest.h>

#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "tantra/dataset.hpp"
#include "tantra/error.hpp"
#include "tantra/persistence.hpp"
#include "tantra/query.hpp"

using namespace tantra;
using namespace tantra::testing;

namespace {

const std::vector<std::string> kCorpus = {
    "MATCH (x:Who) RETURN x",
    "match (x:who) return x",
    "MATCH (x) RETURN *",
    "MATCH (x:Who)-[:SELLS_TO]->(y:Who) RETURN x, y",
    "MATCH (x:Who)-[:SELLS_TO VIA \"Mandi\"]->(y) RETURN x",
    "MATCH (x:Who)-[]->(y) RETURN y",
    "MATCH (f:What)-[:IS_A]->(p:What {name: \"Farm\"}) RETURN f, p",
    "MATCH (m:Why)-[:MEASURES]->(s:Who) WHERE m.value > 1000 RETURN m, s",
    "MATCH (m:Why)-[:AT_EVENT]->(t:When {name: \"FY 2019-20\"}) RETURN m",
    "MATCH (x:Who) WHERE x.name CONTAINS \"Farm\" AND x.perspective = \"Instantiated\" RETURN x",
    "MATCH (x:Who) WHERE x.name != \"Farmers\" RETURN x",
    "MATCH (x:What) WHERE x.short_name < \"Q\" RETURN x",
    "MATCH (x:Who {includes_apl: true}) RETURN x",
    "MATCH (x:When {start: 2019-04-01}) RETURN x",
    "MATCH (x {name: \"it's \\\"quoted\\\"\"}) RETURN x",
    "MATCH (:Who)-[:FINANCED_BY]->(b:Relators) RETURN b",
    "MATCH (a)-[:IS_A]->(b)-[:IS_A]->(c) RETURN a, c",
    "MATCH (x:Why) WHERE x.value > -2.5 AND x.value < 1e6 RETURN x",
    "MATCH (x:Who {name: \"Farmers\", scope: \"indian-agriculture\"}) RETURN *",
    "  MATCH   (x:Separations)\n  RETURN x  ",
};

ElementId id_named(const TantraGraph& g, Aspect a, const char* name) {
  const Element* e = g.find_by_name(a, name);
  if (!e) throw std::runtime_error(std::string("missing ") + name);
  return e->id();
}

std::set<ElementId> column(const QueryResult& r, std::size_t c) {
  std::set<ElementId> out;
  for (const auto& row : r.rows) out.insert(row[c]);
  return out;
}

Query random_query(Rng& rng, const TantraGraph& g) {
  static const std::vector<std::string> labels = {"", "", "Who", "What", "Why", "when", "Relators"};
  static const std::vector<std::string> rels = {"IS_A", "SELLS_TO", "FINANCED_BY", "MEASURES",
                                                "AT_EVENT", "MEMBER_OF"};
  std::vector<std::string> names;
  for (const Element* e : g.sorted_elements()) names.push_back(e->name());
  Query q;
  const int n = rng.uniform(1, 3);
  for (int i = 0; i < n; ++i) {
    NodePattern node;
    node.var = rng.chance(0.85) ? "v" + std::to_string(i) : "";
    node.label = rng.pick(labels);
    if (!names.empty() && rng.chance(0.15)) {
      node.props.push_back({"name", Literal{rng.pick(names)}});
    }
    q.nodes.push_back(node);
    if (i + 1 < n) {
      EdgePattern e;
      if (rng.chance(0.8)) e.rel_type = rng.pick(rels);
      if (rng.chance(0.1)) e.via = g.element(*g.by_aspect(Aspect::Relators).begin()).name();
      q.edges.push_back(e);
    }
  }
  for (const auto& node : q.nodes) {
    if (node.var.empty() || !rng.chance(0.3)) continue;
    switch (rng.uniform(0, 3)) {
      case 0: q.where.push_back({node.var, "value", CompareOp::Gt, Literal{rng.real(-5, 50)}}); break;
      case 1: q.where.push_back({node.var, "name", CompareOp::Contains, Literal{std::string("a")}}); break;
      case 2:
        q.where.push_back({node.var, "perspective", CompareOp::Ne, Literal{std::string("Logical")}});
        break;
      default: q.where.push_back({node.var, "metric_name", CompareOp::Eq, Literal{std::string("yield")}});
    }
  }
  q.return_all = rng.chance(0.3);
  if (!q.return_all) {
    for (const auto& node : q.nodes) {
      if (!node.var.empty() && rng.chance(0.7)) q.returns.push_back(node.var);
    }
    if (q.returns.empty()) {
      q.return_all = true;
    }
  }
  return q;
}

}  // namespace

TEST(QueryParse, PrintParseFixpoint) {
  ASSERT_EQ(kCorpus.size(), 20u);
  for (const auto& text : kCorpus) {
    const Query q = parse_query(text);
    const std::string printed = print_query(q);
    EXPECT_EQ(parse_query(printed), q) << text;
    EXPECT_EQ(print_query(parse_query(printed)), printed) << text;
  }
}

TEST(QueryParse, Structure) {
  const Query q = parse_query(kCorpus[4]);
  ASSERT_EQ(q.nodes.size(), 2u);
  ASSERT_EQ(q.edges.size(), 1u);
  EXPECT_EQ(q.edges[0].rel_type, "SELLS_TO");
  EXPECT_EQ(q.edges[0].via, "Mandi");
  EXPECT_EQ(q.returns, std::vector<std::string>{"x"});
  const Query w = parse_query(kCorpus[9]);
  ASSERT_EQ(w.where.size(), 2u);
  EXPECT_EQ(w.where[0].op, CompareOp::Contains);
  const Query d = parse_query(kCorpus[13]);
  EXPECT_EQ(d.nodes[0].props[0].value, Literal{*Date::parse("2019-04-01")});
  EXPECT_EQ(parse_query(kCorpus[12]).nodes[0].props[0].value, Literal{true});
}

TEST(QueryParse, SyntaxErrors) {
  try {
    parse_query("MATCH (x:");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 10u);
    EXPECT_FALSE(e.expected().empty());
  }
  try {
    parse_query("MATCH (x)\nRETURN y");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  for (const char* bad : {"", "MATCH", "MATCH (x) (y) RETURN x", "MATCH (x)-[:A]-(y) RETURN x",
                          "MATCH (x), (y) RETURN x", "MATCH (x)-[:A]->(x) RETURN x",
                          "MATCH (x) WHERE x.name ~ 1 RETURN x", "MATCH (x {name: }) RETURN x",
                          "MATCH (x) RETURN x, x", "MATCH (x) RETURN", "MATCH (x) RETURN x extra",
                          "MATCH (x {name: \"unterminated}) RETURN x"}) {
    EXPECT_THROW(parse_query(bad), SyntaxError) << bad;
  }
}

TEST(QueryExec, DatasetViews) {
  const TantraGraph g = build_agri_dataset();
  EXPECT_EQ(execute(g, parse_query("MATCH (x:Who) RETURN x")).rows.size(), 23u);

  const auto farms = execute(g, parse_query(kCorpus[6]));
  EXPECT_EQ(farms.columns, (std::vector<std::string>{"f", "p"}));
  EXPECT_EQ(farms.rows.size(), 5u);
  EXPECT_EQ(column(farms, 1), std::set<ElementId>{id_named(g, Aspect::What, "Farm")});

  const auto via = execute(g, parse_query(
      "MATCH (a:Relators {name: \"Intermediaries\"})-[:AGGREGATES_FROM VIA \"Arthiya\"]->(f:Who) "
      "RETURN a, f"));
  const auto& who = g.by_aspect(Aspect::Who);
  ASSERT_EQ(via.rows.size(), 1u);
  EXPECT_TRUE(who.count(via.rows[0][1]));
  EXPECT_EQ(via.rows[0][1], id_named(g, Aspect::Who, "Farmers"));

  const auto fy = execute(g, parse_query(
      "MATCH (m:Why {metric_name: \"budget outlay\"})-[:AT_EVENT]->(t:When {name: \"FY 2019-20\"}) "
      "WHERE m.value > 50000 RETURN m"));
  ASSERT_EQ(fy.rows.size(), 1u);
  EXPECT_EQ(g.find_measure(fy.rows[0][0])->value, 75000.0);

  for (const auto& view : dataset_views()) {
    const QueryResult r = execute(g, parse_query(view.query));
    EXPECT_FALSE(r.rows.empty()) << view.name;
  }
}

TEST(QueryExec, UnknownLabel) {
  const TantraGraph g = build_agri_dataset();
  try {
    execute(g, parse_query("MATCH (x:Whom) RETURN x"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownLabel);
  }
  EXPECT_EQ(execute(g, parse_query("MATCH (x:WHO) RETURN x")).rows.size(), 23u);
}

TEST(QueryExec, AnonymousNodesAreBoundButNotProjected) {
  TantraGraph g;
  const ElementId a = add_element(g, Aspect::Who, "Farmer");
  const ElementId b = add_element(g, Aspect::Relators, "Bank");
  add_edge(g, a, "FINANCED_BY", b);
  const auto r = execute(g, parse_query("MATCH (:Who)-[:FINANCED_BY]->(x) RETURN x"));
  EXPECT_EQ(r.columns, std::vector<std::string>{"x"});
  EXPECT_EQ(r.rows, (std::vector<std::vector<ElementId>>{{b}}));
  EXPECT_EQ(r.bound, (std::vector<ElementId>{std::min(a, b), std::max(a, b)}));
  const auto all = execute(g, parse_query("MATCH (:Who)-[]->(x) RETURN *"));
  EXPECT_EQ(all.columns, std::vector<std::string>{"x"});
}

TEST(QueryExec, OutputFormats) {
  TantraGraph g;
  const ElementId a = add_element(g, Aspect::Who, "Farmer\t\"One\"");
  g.attach_measure(a, "Yield", 2, "t/ha");
  const auto r = execute(g, parse_query("MATCH (m)-[:MEASURES]->(x) RETURN m, x"));
  ASSERT_EQ(r.rows.size(), 1u);
  const std::string tsv = result_to_tsv(g, r);
  EXPECT_EQ(tsv.substr(0, tsv.find('\n')), "m\tm.name\tx\tx.name");
  EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 2);
  EXPECT_NE(tsv.find("Yield"), std::string::npos);
  EXPECT_NE(tsv.find("\tFarmer \"One\"\n"), std::string::npos);
  const std::string jsonl = result_to_jsonl(g, r);
  EXPECT_EQ(std::count(jsonl.begin(), jsonl.end(), '\n'), 1);
  EXPECT_NE(jsonl.find("\"Farmer \\\"One\\\"\""), std::string::npos) << jsonl;
}

TEST(QueryExec, FieldValues) {
  TantraGraph g;
  const ElementId a = add_element(g, Aspect::Who, "Farmer");
  const ElementId fy = add_event(g, "FY", "2019-04-01", "2020-03-31");
  const Measure& m = g.attach_measure(a, "Yield", 2.5, "t/ha", fy);
  EXPECT_EQ(field_value(g, a, "name"), Literal{std::string("Farmer")});
  EXPECT_EQ(field_value(g, a, "aspect"), Literal{std::string("Who")});
  EXPECT_EQ(field_value(g, a, "perspective"), Literal{std::string("Instantiated")});
  EXPECT_EQ(field_value(g, m.id, "value"), Literal{2.5});
  EXPECT_EQ(field_value(g, m.id, "subject"), Literal{a.str()});
  EXPECT_EQ(field_value(g, m.id, "at_event"), Literal{fy.str()});
  EXPECT_EQ(field_value(g, m.id, "aspect"), Literal{std::string("Why")});
  EXPECT_FALSE(field_value(g, a, "no_such_field"));
  EXPECT_FALSE(field_value(g, ElementId("WHO-999999"), "name"));
}

// execute agrees with exhaustive enumeration on small random graphs.
TEST(QueryProperty, MatchesBruteForce) {
  Rng rng(61);
  std::size_t nonempty = 0;
  for (int i = 0; i < 150; ++i) {
    GraphShape shape;
    shape.elements = static_cast<std::size_t>(rng.uniform(2, 20));
    shape.relationships = static_cast<std::size_t>(rng.uniform(0, 40));
    shape.measures = static_cast<std::size_t>(rng.uniform(0, 8));
    const TantraGraph g = random_graph(rng, shape);
    ASSERT_LE(g.element_count() + g.measure_count(), 30u);
    for (int k = 0; k < 6; ++k) {
      const Query q = parse_query(print_query(random_query(rng, g)));
      const auto got = match_all(g, q);
      const auto want = brute_force_matches(g, q);
      ASSERT_EQ(got, want) << print_query(q);
      ASSERT_EQ(match_all(g, q, Execution::Serial), got);
      if (!got.empty()) ++nonempty;

      const QueryResult r = execute(g, q);
      std::set<ElementId> bound;
      for (const auto& m : got) bound.insert(m.begin(), m.end());
      EXPECT_EQ(r.bound, std::vector<ElementId>(bound.begin(), bound.end()));
      for (const auto& id : r.bound) EXPECT_TRUE(g.find_element(id) || g.find_measure(id));
      EXPECT_TRUE(std::is_sorted(r.rows.begin(), r.rows.end()));
      EXPECT_EQ(std::adjacent_find(r.rows.begin(), r.rows.end()), r.rows.end());
    }
  }
  EXPECT_GT(nonempty, 100u);
}

TEST(QueryProperty, InvariantUnderSaveLoad) {
  Rng rng(62);
  for (int i = 0; i < 40; ++i) {
    const TantraGraph g = random_graph(rng);
    const TantraGraph back = deserialize(serialize(g));
    for (int k = 0; k < 5; ++k) {
      const Query q = random_query(rng, g);
      const QueryResult a = execute(g, q);
      const QueryResult b = execute(back, q);
      EXPECT_EQ(a.rows, b.rows);
      EXPECT_EQ(a.bound, b.bound);
      EXPECT_EQ(result_to_tsv(g, a), result_to_tsv(back, b));
    }
  }
}

TEST(QueryProperty, RandomQueriesPrintParseFixpoint) {
  Rng rng(63);
  const TantraGraph g = random_graph(rng);
  for (int i = 0; i < 300; ++i) {
    const Query q = random_query(rng, g);
    const std::string text = print_query(q);
    const Query back = parse_query(text);
    EXPECT_EQ(print_query(back), text);
    EXPECT_EQ(back.nodes, q.nodes) << text;
  }
}
