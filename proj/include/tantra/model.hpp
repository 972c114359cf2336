#pragma once
// Domain types of the Tantra matrix: nine aspects (columns) crossed with
// five reification perspectives (rows). Every graph node is an Element that
// sits in exactly one cell of that matrix.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tantra {

enum class Aspect : std::uint8_t {
  Who,
  Where,
  What,
  When,
  How,
  Why,
  Relationships,
  Relators,
  Separations,
};

inline constexpr std::size_t kAspectCount = 9;
inline constexpr std::array<Aspect, kAspectCount> kAllAspects = {
    Aspect::Who,     Aspect::Where,         Aspect::What,
    Aspect::When,    Aspect::How,           Aspect::Why,
    Aspect::Relationships, Aspect::Relators, Aspect::Separations};

// Ordered: Contextual < Conceptual < Logical < Physical < Instantiated.
enum class Perspective : std::uint8_t {
  Contextual,
  Conceptual,
  Logical,
  Physical,
  Instantiated,
};

inline constexpr std::size_t kPerspectiveCount = 5;
inline constexpr std::array<Perspective, kPerspectiveCount> kAllPerspectives = {
    Perspective::Contextual, Perspective::Conceptual, Perspective::Logical,
    Perspective::Physical, Perspective::Instantiated};

enum class SeparationKind : std::uint8_t {
  Informational,
  Spatial,
  Temporal,
  Financial,
  Capability,
  Intellectual,
  SocioPolitical,
};

inline constexpr std::array<SeparationKind, 7> kAllSeparationKinds = {
    SeparationKind::Informational, SeparationKind::Spatial,
    SeparationKind::Temporal,      SeparationKind::Financial,
    SeparationKind::Capability,    SeparationKind::Intellectual,
    SeparationKind::SocioPolitical};

enum class SubEcosystem : std::uint8_t {
  BiologicalNaturalResource,
  Social,
  Economic,
  Business,
  Welfare,
  Industrial,
  Information,
};

inline constexpr std::array<SubEcosystem, 7> kAllSubEcosystems = {
    SubEcosystem::BiologicalNaturalResource, SubEcosystem::Social,
    SubEcosystem::Economic,   SubEcosystem::Business,
    SubEcosystem::Welfare,    SubEcosystem::Industrial,
    SubEcosystem::Information};

constexpr std::size_t index_of(Aspect a) { return static_cast<std::size_t>(a); }
constexpr std::size_t index_of(Perspective p) { return static_cast<std::size_t>(p); }

std::string_view to_string(Aspect a);
std::string_view to_string(Perspective p);
std::string_view to_string(SeparationKind k);
std::string_view to_string(SubEcosystem s);

std::optional<Aspect> parse_aspect(std::string_view text);
std::optional<Perspective> parse_perspective(std::string_view text);
std::optional<SeparationKind> parse_separation_kind(std::string_view text);
std::optional<SubEcosystem> parse_sub_ecosystem(std::string_view text);

// Upper-case prefix used when issuing ids for elements of an aspect.
std::string_view id_prefix(Aspect a);

struct ElementId {
  std::string value;

  ElementId() = default;
  explicit ElementId(std::string v) : value(std::move(v)) {}

  bool empty() const noexcept { return value.empty(); }
  const std::string& str() const noexcept { return value; }

  auto operator<=>(const ElementId&) const = default;
  bool operator==(const ElementId&) const = default;
};

// Issues `<PREFIX>-<counter>` ids from a single monotonic counter, so ids
// are unique across prefixes and sort in issuance order within a prefix.
class IdIssuer {
 public:
  static constexpr std::string_view kEdgePrefix = "EDGE";

  ElementId issue(std::string_view prefix);
  ElementId issue(Aspect a) { return issue(id_prefix(a)); }

  // Moves the counter past the numeric suffix of an externally supplied id.
  void observe(const ElementId& id);

  std::uint64_t next() const noexcept { return next_; }
  void set_next(std::uint64_t n) noexcept { next_ = n; }

 private:
  std::uint64_t next_ = 1;
};

struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  static std::optional<Date> parse(std::string_view iso);  // YYYY-MM-DD
  std::string to_string() const;

  auto operator<=>(const Date&) const = default;
};

using Literal = std::variant<std::string, double, bool, Date>;

inline bool is_numeric(const Literal& v) { return std::holds_alternative<double>(v); }
std::string literal_to_string(const Literal& v);

using AttrValue = std::variant<ElementId, Literal>;

struct SchemaConfig {
  std::set<std::string> labels;
  std::set<std::string> property_keys;

  bool operator==(const SchemaConfig&) const = default;
};

// Events carry a start and, for durations, an end (inclusive).
struct EventSpan {
  Date start;
  std::optional<Date> end;

  Date last() const { return end.value_or(start); }
  bool contains(const Date& d) const { return start <= d && d <= last(); }
  bool overlaps(const EventSpan& other) const {
    return start <= other.last() && other.start <= last();
  }

  bool operator==(const EventSpan&) const = default;
};

// Trim, collapse internal whitespace runs to a single space.
std::string canonical_name(std::string_view name);
// canonical_name, lower-cased: the key for case-insensitive dedup.
std::string name_key(std::string_view name);

class Element {
 public:
  // Every field, for persistence and fixture construction. No completeness
  // checks happen here; the validator reports incomplete elements.
  struct Parts {
    ElementId id;
    Aspect aspect = Aspect::Who;
    Perspective perspective = Perspective::Contextual;
    std::string name;
    std::string scope;
    std::optional<std::string> definition;
    std::map<std::string, AttrValue> logical_attrs;
    std::optional<SchemaConfig> schema_config;
    std::map<std::string, Literal> properties;
    std::optional<SubEcosystem> sub_ecosystem;
    std::optional<EventSpan> span;

    bool operator==(const Parts&) const = default;
  };

  static Element from_parts(Parts parts);
  const Parts& parts() const noexcept { return p_; }

  const ElementId& id() const noexcept { return p_.id; }
  Aspect aspect() const noexcept { return p_.aspect; }
  Perspective perspective() const noexcept { return p_.perspective; }
  const std::string& name() const noexcept { return p_.name; }
  const std::string& scope() const noexcept { return p_.scope; }
  const std::optional<std::string>& definition() const noexcept { return p_.definition; }
  const std::map<std::string, AttrValue>& logical_attrs() const noexcept {
    return p_.logical_attrs;
  }
  const std::optional<SchemaConfig>& schema_config() const noexcept { return p_.schema_config; }
  const std::map<std::string, Literal>& properties() const noexcept { return p_.properties; }
  const std::optional<SubEcosystem>& sub_ecosystem() const noexcept { return p_.sub_ecosystem; }
  const std::optional<EventSpan>& span() const noexcept { return p_.span; }

  const Literal* property(const std::string& key) const;

  void set_property(std::string key, Literal value);
  bool erase_property(const std::string& key);
  void set_sub_ecosystem(std::optional<SubEcosystem> s) { p_.sub_ecosystem = s; }
  void set_span(std::optional<EventSpan> span) { p_.span = span; }

  bool operator==(const Element&) const = default;

 private:
  Element() = default;
  Parts p_;
};

struct PromotionPayload {
  std::optional<std::string> definition;            // -> Conceptual
  std::map<std::string, AttrValue> logical_attrs;   // -> Logical
  std::optional<SchemaConfig> schema_config;        // -> Physical
  std::optional<ElementId> final_id;                // -> Instantiated
};

// Fresh Contextual element; the name is canonicalized. Throws EmptyName.
Element new_element(IdIssuer& ids, Aspect aspect, std::string_view name,
                    std::string_view scope);

// One level up, merging only the payload the target level requires.
// Throws SkippedLevel or IncompletePayload.
Element promote(const Element& e, Perspective to, const PromotionPayload& payload);

// Fields the element's current perspective requires but lacks (cumulative
// over lower levels). Empty means complete.
std::vector<std::string> missing_payload(const Element& e);

struct Relationship {
  ElementId id;
  std::string rel_type;
  ElementId source;
  ElementId target;
  std::optional<ElementId> relator;
  std::map<std::string, Literal> properties;

  bool operator==(const Relationship&) const = default;
};

struct Measure {
  static constexpr Aspect aspect = Aspect::Why;

  ElementId id;
  std::string metric_name;
  double value = 0.0;
  std::string unit;
  ElementId subject;
  std::optional<ElementId> at_event;

  bool operator==(const Measure&) const = default;
};

}  // namespace tantra

template <>
struct std::hash<tantra::ElementId> {
  std::size_t operator()(const tantra::ElementId& id) const noexcept {
    return std::hash<std::string>{}(id.value);
  }
};
