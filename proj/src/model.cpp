#include "tantra/model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "tantra/error.hpp"

namespace tantra {

namespace {

template <typename E, std::size_t N>
std::optional<E> parse_enum(std::string_view text, const std::array<E, N>& all) {
  for (E e : all) {
    if (to_string(e) == text) return e;
  }
  return std::nullopt;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyName: return "EmptyName";
    case ErrorCode::SkippedLevel: return "SkippedLevel";
    case ErrorCode::IncompletePayload: return "IncompletePayload";
    case ErrorCode::UnknownSubject: return "UnknownSubject";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::AspectChanged: return "AspectChanged";
    case ErrorCode::PerspectiveRegressed: return "PerspectiveRegressed";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorCode::RelatorNotARelator: return "RelatorNotARelator";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::EmptyAspect: return "EmptyAspect";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::UnresolvedBinding: return "UnresolvedBinding";
    case ErrorCode::UnknownEvent: return "UnknownEvent";
    case ErrorCode::MissingMarkers: return "MissingMarkers";
    case ErrorCode::UnknownActor: return "UnknownActor";
    case ErrorCode::MarkerUnmeasured: return "MarkerUnmeasured";
    case ErrorCode::UnknownIntervention: return "UnknownIntervention";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::BadMapping: return "BadMapping";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string_view to_string(Aspect a) {
  switch (a) {
    case Aspect::Who: return "Who";
    case Aspect::Where: return "Where";
    case Aspect::What: return "What";
    case Aspect::When: return "When";
    case Aspect::How: return "How";
    case Aspect::Why: return "Why";
    case Aspect::Relationships: return "Relationships";
    case Aspect::Relators: return "Relators";
    case Aspect::Separations: return "Separations";
  }
  return "?";
}

std::string_view to_string(Perspective p) {
  switch (p) {
    case Perspective::Contextual: return "Contextual";
    case Perspective::Conceptual: return "Conceptual";
    case Perspective::Logical: return "Logical";
    case Perspective::Physical: return "Physical";
    case Perspective::Instantiated: return "Instantiated";
  }
  return "?";
}

std::string_view to_string(SeparationKind k) {
  switch (k) {
    case SeparationKind::Informational: return "Informational";
    case SeparationKind::Spatial: return "Spatial";
    case SeparationKind::Temporal: return "Temporal";
    case SeparationKind::Financial: return "Financial";
    case SeparationKind::Capability: return "Capability";
    case SeparationKind::Intellectual: return "Intellectual";
    case SeparationKind::SocioPolitical: return "SocioPolitical";
  }
  return "?";
}

std::string_view to_string(SubEcosystem s) {
  switch (s) {
    case SubEcosystem::BiologicalNaturalResource: return "BiologicalNaturalResource";
    case SubEcosystem::Social: return "Social";
    case SubEcosystem::Economic: return "Economic";
    case SubEcosystem::Business: return "Business";
    case SubEcosystem::Welfare: return "Welfare";
    case SubEcosystem::Industrial: return "Industrial";
    case SubEcosystem::Information: return "Information";
  }
  return "?";
}

std::optional<Aspect> parse_aspect(std::string_view text) {
  return parse_enum(text, kAllAspects);
}
std::optional<Perspective> parse_perspective(std::string_view text) {
  return parse_enum(text, kAllPerspectives);
}
std::optional<SeparationKind> parse_separation_kind(std::string_view text) {
  return parse_enum(text, kAllSeparationKinds);
}
std::optional<SubEcosystem> parse_sub_ecosystem(std::string_view text) {
  return parse_enum(text, kAllSubEcosystems);
}

std::string_view id_prefix(Aspect a) {
  switch (a) {
    case Aspect::Who: return "WHO";
    case Aspect::Where: return "WHERE";
    case Aspect::What: return "WHAT";
    case Aspect::When: return "WHEN";
    case Aspect::How: return "HOW";
    case Aspect::Why: return "WHY";
    case Aspect::Relationships: return "RELN";
    case Aspect::Relators: return "RLTR";
    case Aspect::Separations: return "SEPN";
  }
  return "X";
}

ElementId IdIssuer::issue(std::string_view prefix) {
  char digits[24];
  std::snprintf(digits, sizeof digits, "%06llu", static_cast<unsigned long long>(next_++));
  std::string id(prefix);
  id += '-';
  id += digits;
  return ElementId(std::move(id));
}

void IdIssuer::observe(const ElementId& id) {
  const auto dash = id.value.rfind('-');
  if (dash == std::string::npos) return;
  std::uint64_t n = 0;
  const char* first = id.value.data() + dash + 1;
  const char* last = id.value.data() + id.value.size();
  auto [ptr, ec] = std::from_chars(first, last, n);
  if (ec != std::errc() || ptr != last || first == last) return;
  next_ = std::max(next_, n + 1);
}

std::optional<Date> Date::parse(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
  auto field = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    int v = 0;
    auto [ptr, ec] = std::from_chars(iso.data() + pos, iso.data() + pos + len, v);
    if (ec != std::errc() || ptr != iso.data() + pos + len) return std::nullopt;
    return v;
  };
  auto y = field(0, 4), m = field(5, 2), d = field(8, 2);
  if (!y || !m || !d) return std::nullopt;
  static constexpr int kDays[] = {31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (*m < 1 || *m > 12 || *d < 1 || *d > kDays[*m - 1]) return std::nullopt;
  const bool leap = (*y % 4 == 0 && *y % 100 != 0) || *y % 400 == 0;
  if (*m == 2 && *d == 29 && !leap) return std::nullopt;
  return Date{*y, *m, *d};
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

std::string literal_to_string(const Literal& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return x;
        } else if constexpr (std::is_same_v<T, double>) {
          char buf[64];
          auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
          return std::string(buf, ptr);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else {
          return x.to_string();
        }
      },
      v);
}

std::string canonical_name(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  bool pending_space = false;
  for (char c : name) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

std::string name_key(std::string_view name) {
  std::string key = canonical_name(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return key;
}

Element Element::from_parts(Parts parts) {
  Element e;
  e.p_ = std::move(parts);
  return e;
}

const Literal* Element::property(const std::string& key) const {
  auto it = p_.properties.find(key);
  return it == p_.properties.end() ? nullptr : &it->second;
}

void Element::set_property(std::string key, Literal value) {
  if (const double* d = std::get_if<double>(&value); d && !std::isfinite(*d)) {
    throw Error(ErrorCode::NonFiniteValue, "property '" + key + "' is not finite");
  }
  p_.properties.insert_or_assign(std::move(key), std::move(value));
}

bool Element::erase_property(const std::string& key) {
  return p_.properties.erase(key) > 0;
}

Element new_element(IdIssuer& ids, Aspect aspect, std::string_view name,
                    std::string_view scope) {
  std::string canonical = canonical_name(name);
  if (canonical.empty()) throw Error(ErrorCode::EmptyName, "element name is empty");
  Element::Parts parts;
  parts.id = ids.issue(aspect);
  parts.aspect = aspect;
  parts.perspective = Perspective::Contextual;
  parts.name = std::move(canonical);
  parts.scope = std::string(scope);
  return Element::from_parts(std::move(parts));
}

Element promote(const Element& e, Perspective to, const PromotionPayload& payload) {
  if (e.perspective() == Perspective::Instantiated ||
      index_of(to) != index_of(e.perspective()) + 1) {
    throw Error(ErrorCode::SkippedLevel,
                std::string("cannot promote ") + e.id().str() + " from " +
                    std::string(to_string(e.perspective())) + " to " +
                    std::string(to_string(to)));
  }
  auto incomplete = [&](std::string_view what) {
    return Error(ErrorCode::IncompletePayload,
                 std::string(to_string(to)) + " requires " + std::string(what) +
                     " (element " + e.id().str() + ")");
  };

  Element::Parts parts = e.parts();
  switch (to) {
    case Perspective::Contextual:
      break;
    case Perspective::Conceptual:
      if (!payload.definition || canonical_name(*payload.definition).empty()) {
        throw incomplete("a definition");
      }
      parts.definition = payload.definition;
      break;
    case Perspective::Logical:
      if (payload.logical_attrs.empty()) throw incomplete("logical attributes");
      for (const auto& [k, v] : payload.logical_attrs) parts.logical_attrs.insert_or_assign(k, v);
      break;
    case Perspective::Physical:
      if (!payload.schema_config || payload.schema_config->labels.empty()) {
        throw incomplete("a schema configuration with at least one label");
      }
      parts.schema_config = payload.schema_config;
      break;
    case Perspective::Instantiated:
      if (!payload.final_id) throw incomplete("the final id");
      if (*payload.final_id != e.id()) throw incomplete("the final id to equal the issued id");
      break;
  }
  parts.perspective = to;
  return Element::from_parts(std::move(parts));
}

std::vector<std::string> missing_payload(const Element& e) {
  std::vector<std::string> missing;
  const auto level = index_of(e.perspective());
  if (canonical_name(e.name()).empty()) missing.emplace_back("name");
  if (canonical_name(e.scope()).empty()) missing.emplace_back("scope");
  if (level >= index_of(Perspective::Conceptual) &&
      (!e.definition() || canonical_name(*e.definition()).empty())) {
    missing.emplace_back("definition");
  }
  if (level >= index_of(Perspective::Logical) && e.logical_attrs().empty()) {
    missing.emplace_back("logical_attrs");
  }
  if (level >= index_of(Perspective::Physical) &&
      (!e.schema_config() || e.schema_config()->labels.empty())) {
    missing.emplace_back("schema_config");
  }
  if (level >= index_of(Perspective::Instantiated) && e.id().empty()) {
    missing.emplace_back("id");
  }
  return missing;
}

SyntaxError::SyntaxError(std::size_t line, std::size_t column,
                         std::vector<std::string> expected, const std::string& found)
    : Error(ErrorCode::SyntaxError,
            [&] {
              std::string msg = "syntax error at " + std::to_string(line) + ":" +
                                std::to_string(column) + ": found " + found;
              if (!expected.empty()) {
                msg += ", expected one of:";
                for (const auto& x : expected) msg += " " + x;
              }
              return msg;
            }()),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

}  // namespace tantra
