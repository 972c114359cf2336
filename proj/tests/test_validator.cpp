#include <gtest/gtest.h>

#include "generators.hpp"
#include "tantra/dataset.hpp"
#include "tantra/error.hpp"
#include "tantra/validator.hpp"

using namespace tantra;
using namespace tantra::testing;

namespace {

SchemaPolicy no_required_aspects() {
  SchemaPolicy p = SchemaPolicy::default_policy();
  p.required_aspects.clear();
  return p;
}

const Relationship& first_edge_of(const TantraGraph& g, const std::string& type) {
  for (const Relationship* r : g.sorted_relationships()) {
    if (r->rel_type == type) return *r;
  }
  throw std::runtime_error("no " + type + " edge");
}

}  // namespace

TEST(Validator, DefaultPolicy) {
  const SchemaPolicy p = SchemaPolicy::default_policy();
  EXPECT_EQ(p.relator_mediated_types,
            (std::set<std::string>{"RECEIVES_BENEFIT", "SELLS_AT", "INSURED_BY", "FINANCED_BY"}));
  EXPECT_EQ(p.required_aspects.size(), 9u);
  EXPECT_FALSE(p.allowed_rel_types);
  EXPECT_EQ(parse_policy(policy_to_jsonl(p)), p);
}

TEST(Validator, PolicyFileChecks) {
  SchemaPolicy p = SchemaPolicy::default_policy();
  p.allowed_rel_types = std::set<std::string>{"SELLS_TO"};
  EXPECT_THROW(p.check(), Error);
  EXPECT_THROW(parse_policy(policy_to_jsonl(p)), MalformedRecordError);
  p.allowed_rel_types->insert(p.relator_mediated_types.begin(), p.relator_mediated_types.end());
  EXPECT_NO_THROW(p.check());
  EXPECT_EQ(parse_policy(policy_to_jsonl(p)), p);
  EXPECT_THROW(parse_policy("{\"format\":\"tantra-policy\",\"version\":1}\n"), MalformedRecordError);
}

TEST(Validator, EmptyGraphMissesAllNineAspects) {
  const ValidationReport r = validate(TantraGraph{}, SchemaPolicy::default_policy());
  EXPECT_EQ(r.violations.size(), 9u);
  EXPECT_EQ(r.count(ViolationCode::MissingAspect), 9u);
  EXPECT_EQ(r.matrix_total(), 0u);
}

TEST(Validator, MissingRelatorReportedOnce) {
  TantraGraph g;
  const ElementId farmer = add_element(g, Aspect::Who, "Farmer");
  const ElementId benefit = add_element(g, Aspect::What, "Income Support");
  add_edge(g, farmer, "RECEIVES_BENEFIT", benefit);
  const ValidationReport r = validate(g, no_required_aspects());
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].code, ViolationCode::RelatorRequired);
  EXPECT_EQ(to_string(r.violations[0].code), "RELATOR_REQUIRED");
}

TEST(Validator, EachRuleFires) {
  TantraGraph g;
  const ElementId a = add_element(g, Aspect::Who, "Farmer");
  const ElementId b = add_element(g, Aspect::Who, " farmer ");
  EXPECT_NE(a, b);
  add_element(g, Aspect::Where, "Farmer");  // other aspect: fine
  Element num = make_element(g, Aspect::What, "Tractor");
  num.set_property("horsepower", 45.0);
  g.insert_element(num);
  Element why = make_element(g, Aspect::Why, "Yield");
  why.set_property("baseline", 3.0);
  g.insert_element(why);
  Element::Parts half;
  half.id = g.issue_id(Aspect::How);
  half.aspect = Aspect::How;
  half.perspective = Perspective::Logical;
  half.name = "Contract Farming";
  half.scope = "s";
  half.definition = "d";
  half.logical_attrs = {{"partner", ElementId("WHO-999999")}};
  g.insert_element(Element::from_parts(half));

  SchemaPolicy p = no_required_aspects();
  p.allowed_rel_types = std::set<std::string>{"RECEIVES_BENEFIT", "SELLS_AT", "INSURED_BY",
                                              "FINANCED_BY", "SELLS_TO"};
  add_edge(g, a, "SELLS_TO", b);
  add_edge(g, a, "GOSSIPS_WITH", b);

  const ValidationReport r = validate(g, p);
  EXPECT_EQ(r.count(ViolationCode::DupName), 1u);
  EXPECT_EQ(r.count(ViolationCode::NumericOnNonWhy), 1u);
  EXPECT_EQ(r.count(ViolationCode::DanglingRef), 1u);
  EXPECT_EQ(r.count(ViolationCode::DisallowedRelType), 1u);
  EXPECT_EQ(r.count(ViolationCode::IncompletePayload), 0u);
  EXPECT_EQ(r.violations.size(), 4u);
  // sorted by code
  for (std::size_t i = 1; i < r.violations.size(); ++i) {
    EXPECT_LE(r.violations[i - 1].code, r.violations[i].code);
  }
}

TEST(Validator, IncompletePayloadFromParts) {
  TantraGraph g;
  Element::Parts p;
  p.id = g.issue_id(Aspect::Who);
  p.name = "Farmer";
  p.scope = "s";
  p.perspective = Perspective::Physical;
  g.insert_element(Element::from_parts(p));
  const ValidationReport r = validate(g, no_required_aspects());
  ASSERT_EQ(r.count(ViolationCode::IncompletePayload), 1u);
}

TEST(Validator, MatrixCoverage) {
  TantraGraph g;
  EXPECT_EQ(matrix_coverage(g), CoverageMatrix{});
  add_element(g, Aspect::Who, "Farmer", Perspective::Contextual);
  const CoverageMatrix m = matrix_coverage(g);
  for (Aspect a : kAllAspects) {
    for (Perspective p : kAllPerspectives) {
      const std::size_t want = (a == Aspect::Who && p == Perspective::Contextual) ? 1 : 0;
      EXPECT_EQ(m[index_of(a)][index_of(p)], want);
    }
  }
  EXPECT_EQ(row_total(m, Aspect::Who), 1u);
  EXPECT_EQ(column_total(m, Perspective::Contextual), 1u);
}

TEST(Validator, DatasetClean) {
  const TantraGraph g = build_agri_dataset();
  const ValidationReport r = validate(g, SchemaPolicy::default_policy());
  EXPECT_TRUE(r.ok()) << report_to_tsv(r);
  for (Aspect a : kAllAspects) EXPECT_GT(row_total(r.matrix, a), 0u) << to_string(a);
  EXPECT_EQ(r.matrix_total(), g.element_count());
}

TEST(Validator, Pure) {
  const TantraGraph g = build_agri_dataset();
  EXPECT_EQ(validate(g, SchemaPolicy::default_policy()), validate(g, SchemaPolicy::default_policy()));
  EXPECT_EQ(validate(g, SchemaPolicy::default_policy(), Execution::Serial),
            validate(g, SchemaPolicy::default_policy(), Execution::Parallel));
}

// Mutation testing over the dataset: each single injected fault is found.
TEST(Validator, DatasetMutationsDetected) {
  const SchemaPolicy policy = SchemaPolicy::default_policy();
  for (const char* type : {"RECEIVES_BENEFIT", "SELLS_AT", "INSURED_BY", "FINANCED_BY"}) {
    TantraGraph g = build_agri_dataset();
    Relationship r = first_edge_of(g, type);
    ASSERT_TRUE(r.relator);
    g.remove_relationship(r.id);
    r.relator.reset();
    g.insert_relationship(r);
    const auto rep = validate(g, policy);
    EXPECT_EQ(rep.count(ViolationCode::RelatorRequired), 1u) << type;
    EXPECT_EQ(rep.violations.size(), 1u) << type;
  }
  const TantraGraph base = build_agri_dataset();
  for (const Element* who : base.sorted_elements()) {
    if (who->aspect() != Aspect::Who) continue;
    TantraGraph g = build_agri_dataset();
    Element e = g.element(who->id());
    e.set_property("acreage", 2.5);
    g.replace_element(e);
    const auto rep = validate(g, policy);
    EXPECT_EQ(rep.count(ViolationCode::NumericOnNonWhy), 1u);
    EXPECT_EQ(rep.violations.size(), 1u);
  }
  {
    TantraGraph g = build_agri_dataset();
    add_element(g, Aspect::Who, "CONSUMERS");
    const auto rep = validate(g, policy);
    EXPECT_EQ(rep.count(ViolationCode::DupName), 1u);
    EXPECT_EQ(rep.violations.size(), 1u);
  }
  {
    TantraGraph g = build_agri_dataset();
    const ElementId sep = *g.by_aspect(Aspect::Separations).begin();
    // Removing every element of one aspect.
    for (const ElementId& id : std::vector<ElementId>(g.by_aspect(Aspect::Separations).begin(),
                                                      g.by_aspect(Aspect::Separations).end())) {
      g.remove_element(id);
    }
    EXPECT_FALSE(g.contains(sep));
    const auto rep = validate(g, policy);
    EXPECT_EQ(rep.count(ViolationCode::MissingAspect), 1u);
    EXPECT_EQ(rep.violations.size(), 1u);
  }
}

TEST(Validator, ReportSerializations) {
  TantraGraph g;
  const ElementId a = add_element(g, Aspect::Who, "Farmer");
  add_edge(g, a, "FINANCED_BY", a);
  const auto rep = validate(g, SchemaPolicy::default_policy());
  const std::string jsonl = report_to_jsonl(rep);
  EXPECT_EQ(std::count(jsonl.begin(), jsonl.end(), '\n'),
            static_cast<long>(rep.violations.size() + 1));
  EXPECT_NE(jsonl.find("\"code\":\"RELATOR_REQUIRED\""), std::string::npos);
  EXPECT_NE(jsonl.find("\"rec\":\"matrix\""), std::string::npos);
  const std::string tsv = report_to_tsv(rep);
  EXPECT_EQ(tsv.rfind("code\tsubjects\tmessage\n", 0), 0u);
  EXPECT_NE(tsv.find("Who\t0\t0\t0\t0\t1\t1\n"), std::string::npos);
}
