#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "generators.hpp"
#include "tantra/error.hpp"
#include "tantra/graph.hpp"

using namespace tantra;
using namespace tantra::testing;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

PromotionPayload full_payload(const Element& e) {
  PromotionPayload p;
  p.definition = "one who cultivates, owning or tenant";
  p.logical_attrs = {{"tenure", Literal{std::string("owner|tenant")}}};
  p.schema_config = SchemaConfig{{"Role"}, {"tenure"}};
  p.final_id = e.id();
  return p;
}

}  // namespace

TEST(Model, NineAspectsFivePerspectives) {
  EXPECT_EQ(kAllAspects.size(), 9u);
  EXPECT_EQ(kAllPerspectives.size(), 5u);
  EXPECT_EQ(kAllSeparationKinds.size(), 7u);
  EXPECT_EQ(kAllSubEcosystems.size(), 7u);
  for (Aspect a : kAllAspects) EXPECT_EQ(parse_aspect(to_string(a)), a);
  for (Perspective p : kAllPerspectives) EXPECT_EQ(parse_perspective(to_string(p)), p);
  for (SeparationKind k : kAllSeparationKinds) EXPECT_EQ(parse_separation_kind(to_string(k)), k);
  for (SubEcosystem s : kAllSubEcosystems) EXPECT_EQ(parse_sub_ecosystem(to_string(s)), s);
  EXPECT_FALSE(parse_aspect("Whom"));
  EXPECT_LT(Perspective::Contextual, Perspective::Conceptual);
  EXPECT_LT(Perspective::Physical, Perspective::Instantiated);
}

TEST(Model, NewElementIsContextualWithFreshId) {
  IdIssuer ids;
  Element farmer = new_element(ids, Aspect::Who, "Farmer", "Indian agricultural ecosystem");
  EXPECT_EQ(farmer.aspect(), Aspect::Who);
  EXPECT_EQ(farmer.perspective(), Perspective::Contextual);
  EXPECT_EQ(farmer.id().str(), "WHO-000001");
  EXPECT_FALSE(farmer.definition());
  EXPECT_TRUE(farmer.logical_attrs().empty());
  EXPECT_FALSE(farmer.schema_config());

  Element nabard = new_element(ids, Aspect::Relators, "NABARD", "agricultural finance");
  EXPECT_EQ(nabard.aspect(), Aspect::Relators);
  EXPECT_EQ(nabard.perspective(), Perspective::Contextual);
  EXPECT_EQ(nabard.id().str(), "RLTR-000002");
}

TEST(Model, EmptyNameRejected) {
  IdIssuer ids;
  EXPECT_EQ(code_of([&] { new_element(ids, Aspect::Who, "", "x"); }), ErrorCode::EmptyName);
  EXPECT_EQ(code_of([&] { new_element(ids, Aspect::Who, "  \t ", "x"); }), ErrorCode::EmptyName);
}

TEST(Model, NamesAreCanonicalized) {
  IdIssuer ids;
  Element e = new_element(ids, Aspect::Who, "  Tenant   Farmers ", "x");
  EXPECT_EQ(e.name(), "Tenant Farmers");
  EXPECT_EQ(name_key("CONSUMERS"), name_key(" consumers "));
  EXPECT_NE(canonical_name("Consumers"), canonical_name("consumers"));
}

TEST(Model, PromotionOneLevelAtATime) {
  IdIssuer ids;
  Element e = new_element(ids, Aspect::Who, "Farmer", "scope");
  const PromotionPayload p = full_payload(e);
  EXPECT_EQ(code_of([&] { promote(e, Perspective::Logical, p); }), ErrorCode::SkippedLevel);
  EXPECT_EQ(code_of([&] { promote(e, Perspective::Contextual, p); }), ErrorCode::SkippedLevel);

  Element c = promote(e, Perspective::Conceptual, p);
  EXPECT_EQ(c.perspective(), Perspective::Conceptual);
  EXPECT_EQ(*c.definition(), "one who cultivates, owning or tenant");
  Element l = promote(c, Perspective::Logical, p);
  Element ph = promote(l, Perspective::Physical, p);
  Element in = promote(ph, Perspective::Instantiated, p);
  EXPECT_EQ(in.perspective(), Perspective::Instantiated);
  EXPECT_EQ(in.id(), e.id());
  // Lower-level payloads survive.
  EXPECT_EQ(in.definition(), c.definition());
  EXPECT_EQ(in.logical_attrs(), l.logical_attrs());
  EXPECT_EQ(in.schema_config(), ph.schema_config());
  EXPECT_TRUE(missing_payload(in).empty());
  EXPECT_EQ(code_of([&] { promote(in, Perspective::Instantiated, p); }), ErrorCode::SkippedLevel);
}

TEST(Model, IncompletePayloadPerLevel) {
  IdIssuer ids;
  Element e = new_element(ids, Aspect::Who, "Farmer", "scope");
  PromotionPayload empty;
  EXPECT_EQ(code_of([&] { promote(e, Perspective::Conceptual, empty); }),
            ErrorCode::IncompletePayload);
  PromotionPayload p = full_payload(e);
  Element c = promote(e, Perspective::Conceptual, p);
  EXPECT_EQ(code_of([&] { promote(c, Perspective::Logical, empty); }),
            ErrorCode::IncompletePayload);
  Element l = promote(c, Perspective::Logical, p);
  PromotionPayload no_labels = p;
  no_labels.schema_config = SchemaConfig{};
  EXPECT_EQ(code_of([&] { promote(l, Perspective::Physical, no_labels); }),
            ErrorCode::IncompletePayload);
  Element ph = promote(l, Perspective::Physical, p);
  PromotionPayload wrong_id = p;
  wrong_id.final_id = ElementId("WHO-999999");
  EXPECT_EQ(code_of([&] { promote(ph, Perspective::Instantiated, wrong_id); }),
            ErrorCode::IncompletePayload);
}

TEST(Model, MissingPayloadIsCumulative) {
  Element::Parts parts;
  parts.id = ElementId("WHO-000001");
  parts.name = "Farmer";
  parts.scope = "s";
  parts.perspective = Perspective::Physical;
  const auto missing = missing_payload(Element::from_parts(parts));
  EXPECT_EQ(missing, (std::vector<std::string>{"definition", "logical_attrs", "schema_config"}));
}

TEST(Model, IdIssuerIsMonotoneAcrossPrefixes) {
  IdIssuer ids;
  EXPECT_EQ(ids.issue(Aspect::Who).str(), "WHO-000001");
  EXPECT_EQ(ids.issue(Aspect::When).str(), "WHEN-000002");
  EXPECT_EQ(ids.issue(IdIssuer::kEdgePrefix).str(), "EDGE-000003");
  ids.observe(ElementId("WHY-000100"));
  EXPECT_EQ(ids.issue(Aspect::How).str(), "HOW-000101");
  ids.observe(ElementId("garbage"));
  EXPECT_EQ(ids.next(), 102u);
  for (Aspect a : kAllAspects) EXPECT_FALSE(id_prefix(a).empty());
}

TEST(Model, DatesAndSpans) {
  auto d = Date::parse("2019-04-01");
  ASSERT_TRUE(d);
  EXPECT_EQ(d->to_string(), "2019-04-01");
  EXPECT_FALSE(Date::parse("2019-13-01"));
  EXPECT_FALSE(Date::parse("2019-02-30"));
  EXPECT_FALSE(Date::parse("19-04-01"));
  EXPECT_TRUE(Date::parse("2020-02-29"));
  EXPECT_FALSE(Date::parse("2019-02-29"));
  EventSpan fy{*Date::parse("2019-04-01"), Date::parse("2020-03-31")};
  EventSpan kharif{*Date::parse("2019-10-15"), Date::parse("2019-12-31")};
  EventSpan day{*Date::parse("2018-01-01"), std::nullopt};
  EXPECT_TRUE(fy.overlaps(kharif));
  EXPECT_TRUE(kharif.overlaps(fy));
  EXPECT_FALSE(fy.overlaps(day));
  EXPECT_TRUE(day.contains(*Date::parse("2018-01-01")));
}

TEST(Model, AttachMeasureShapes) {
  TantraGraph g;
  const ElementId farmer = add_element(g, Aspect::Who, "Farmer");
  const Measure& m = g.attach_measure(farmer, "Acreage", 2.5, "hectare");
  EXPECT_EQ(Measure::aspect, Aspect::Why);
  EXPECT_EQ(m.subject, farmer);
  EXPECT_EQ(m.value, 2.5);
  EXPECT_TRUE(m.id.str().starts_with("WHY-"));
  EXPECT_EQ(code_of([&] { g.attach_measure(ElementId("WHO-424242"), "Yield", 3.0, "t/ha"); }),
            ErrorCode::UnknownSubject);
  const ElementId farm = add_element(g, Aspect::What, "Farm");
  EXPECT_EQ(code_of([&] {
              g.attach_measure(farm, "Yield", std::numeric_limits<double>::quiet_NaN(), "t/ha");
            }),
            ErrorCode::NonFiniteValue);
  EXPECT_EQ(code_of([&] {
              g.attach_measure(farm, "Yield", std::numeric_limits<double>::infinity(), "t/ha");
            }),
            ErrorCode::NonFiniteValue);
  EXPECT_EQ(code_of([&] { g.attach_measure(farm, "Yield", 1.0, "t/ha", farmer); }),
            ErrorCode::UnknownEvent);
}

TEST(ModelProperty, PromotionPreservesLowerLevels) {
  Rng rng(7);
  for (int iter = 0; iter < 300; ++iter) {
    IdIssuer ids;
    Element e = new_element(ids, rng.aspect(), rng.word(), rng.word());
    const Aspect aspect = e.aspect();
    PromotionPayload p;
    p.definition = rng.text() + "x";
    p.logical_attrs = {{rng.word(), rng.literal()}};
    p.schema_config = SchemaConfig{{rng.word()}, {}};
    p.final_id = e.id();
    std::vector<Element> history{e};
    const int top = rng.uniform(1, 4);
    for (int l = 1; l <= top; ++l) {
      history.push_back(promote(history.back(), static_cast<Perspective>(l), p));
    }
    for (std::size_t i = 1; i < history.size(); ++i) {
      const auto& before = history[i - 1].parts();
      const auto& after = history[i].parts();
      EXPECT_GT(after.perspective, before.perspective);
      EXPECT_EQ(after.aspect, aspect);
      EXPECT_EQ(after.id, before.id);
      if (before.definition) EXPECT_EQ(after.definition, before.definition);
      for (const auto& [k, v] : before.logical_attrs) EXPECT_EQ(after.logical_attrs.at(k), v);
      if (before.schema_config) EXPECT_EQ(after.schema_config, before.schema_config);
      EXPECT_TRUE(missing_payload(history[i]).empty());
    }
  }
}
