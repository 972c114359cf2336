#include "tantra/validator.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "json_codec.hpp"

namespace tantra {

using codec::json;

SchemaPolicy SchemaPolicy::default_policy() {
  SchemaPolicy p;
  p.relator_mediated_types = {"RECEIVES_BENEFIT", "SELLS_AT", "INSURED_BY", "FINANCED_BY"};
  p.required_aspects = {kAllAspects.begin(), kAllAspects.end()};
  return p;
}

void SchemaPolicy::check() const {
  if (!allowed_rel_types) return;
  for (const auto& t : relator_mediated_types) {
    if (!allowed_rel_types->count(t)) {
      throw Error(ErrorCode::InvalidArgument,
                  "relator-mediated type " + t + " is not in the allow-list");
    }
  }
}

SchemaPolicy parse_policy(std::string_view text) {
  const auto lines = codec::split_lines(text);
  if (lines.empty()) throw MalformedRecordError(1, "missing header");
  codec::parse_header(lines[0], "tantra-policy");
  std::optional<SchemaPolicy> policy;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (lines[i].empty()) continue;
    const json rec = codec::parse_line(lines[i], line_no);
    if (codec::require_string(rec, "rec", line_no) != "policy") {
      throw MalformedRecordError(line_no, "expected a policy record");
    }
    if (policy) throw MalformedRecordError(line_no, "more than one policy record");
    SchemaPolicy p;
    try {
      p.relator_mediated_types =
          codec::require(rec, "relator_mediated_types", line_no).get<std::set<std::string>>();
      if (rec.contains("allowed_rel_types")) {
        p.allowed_rel_types = rec["allowed_rel_types"].get<std::set<std::string>>();
      }
      for (const auto& name :
           codec::require(rec, "required_aspects", line_no).get<std::vector<std::string>>()) {
        auto a = parse_aspect(name);
        if (!a) throw MalformedRecordError(line_no, "unknown aspect '" + name + "'");
        p.required_aspects.insert(*a);
      }
    } catch (const json::exception& e) {
      throw MalformedRecordError(line_no, e.what());
    }
    try {
      p.check();
    } catch (const Error& e) {
      throw MalformedRecordError(line_no, e.what());
    }
    policy = std::move(p);
  }
  if (!policy) throw MalformedRecordError(lines.size() + 1, "no policy record");
  return *policy;
}

SchemaPolicy load_policy(const std::string& path) { return parse_policy(codec::read_file(path)); }

std::string policy_to_jsonl(const SchemaPolicy& policy) {
  json rec = {{"rec", "policy"}, {"relator_mediated_types", policy.relator_mediated_types}};
  if (policy.allowed_rel_types) rec["allowed_rel_types"] = *policy.allowed_rel_types;
  json aspects = json::array();
  for (Aspect a : policy.required_aspects) aspects.push_back(std::string(to_string(a)));
  rec["required_aspects"] = std::move(aspects);
  return codec::dump({{"format", "tantra-policy"}, {"version", 1}}) + "\n" + codec::dump(rec) +
         "\n";
}

std::string_view to_string(ViolationCode code) {
  switch (code) {
    case ViolationCode::MissingAspect: return "MISSING_ASPECT";
    case ViolationCode::RelatorRequired: return "RELATOR_REQUIRED";
    case ViolationCode::NumericOnNonWhy: return "NUMERIC_ON_NON_WHY";
    case ViolationCode::DanglingRef: return "DANGLING_REF";
    case ViolationCode::DupName: return "DUP_NAME";
    case ViolationCode::IncompletePayload: return "INCOMPLETE_PAYLOAD";
    case ViolationCode::DisallowedRelType: return "DISALLOWED_REL_TYPE";
  }
  return "?";
}

std::size_t ValidationReport::count(ViolationCode code) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; }));
}

std::size_t ValidationReport::matrix_total() const {
  std::size_t total = 0;
  for (const auto& row : matrix) total = std::accumulate(row.begin(), row.end(), total);
  return total;
}

CoverageMatrix matrix_coverage(const TantraGraph& g, Execution ex) {
  const auto elements = g.sorted_elements();
  return kernels::coverage(ex, elements);
}

std::size_t row_total(const CoverageMatrix& m, Aspect a) {
  const auto& row = m[index_of(a)];
  return std::accumulate(row.begin(), row.end(), std::size_t{0});
}

std::size_t column_total(const CoverageMatrix& m, Perspective p) {
  std::size_t total = 0;
  for (const auto& row : m) total += row[index_of(p)];
  return total;
}

ValidationReport validate(const TantraGraph& g, const SchemaPolicy& policy, Execution ex) {
  ValidationReport report;
  auto& out = report.violations;
  const auto elements = g.sorted_elements();
  report.matrix = kernels::coverage(ex, elements);

  for (Aspect a : policy.required_aspects) {
    if (row_total(report.matrix, a) == 0) {
      out.push_back({ViolationCode::MissingAspect, {},
                     "no element of aspect " + std::string(to_string(a))});
    }
  }

  for (std::size_t i : kernels::incomplete(ex, elements)) {
    const Element& e = *elements[i];
    std::string missing;
    for (const auto& f : missing_payload(e)) missing += (missing.empty() ? "" : ",") + f;
    out.push_back({ViolationCode::IncompletePayload, {e.id()},
                   std::string(to_string(e.perspective())) + " element lacks " + missing});
  }

  for (std::size_t i : kernels::numeric_on_non_why(ex, elements)) {
    const Element& e = *elements[i];
    std::string keys;
    for (const auto& [k, v] : e.properties()) {
      if (is_numeric(v)) keys += (keys.empty() ? "" : ",") + k;
    }
    out.push_back({ViolationCode::NumericOnNonWhy, {e.id()},
                   std::string(to_string(e.aspect())) + " element has numeric properties " + keys});
  }

  for (const Element* e : elements) {
    for (const auto& [attr, value] : e->logical_attrs()) {
      const auto* ref = std::get_if<ElementId>(&value);
      if (ref && !g.contains(*ref)) {
        out.push_back({ViolationCode::DanglingRef, {e->id(), *ref},
                       "logical attribute " + attr + " references a missing id"});
      }
    }
  }

  for (const Relationship* r : g.sorted_relationships()) {
    for (const ElementId* end : {&r->source, &r->target}) {
      if (!g.find_element(*end)) {
        out.push_back({ViolationCode::DanglingRef, {r->id, *end}, "relationship endpoint missing"});
      }
    }
    const Element* relator = r->relator ? g.find_element(*r->relator) : nullptr;
    if (r->relator && !relator) {
      out.push_back({ViolationCode::DanglingRef, {r->id, *r->relator}, "relator missing"});
    }
    if (policy.relator_mediated_types.count(r->rel_type) &&
        (!relator || relator->aspect() != Aspect::Relators)) {
      out.push_back({ViolationCode::RelatorRequired, {r->id},
                     r->rel_type + " must be mediated by a Relators element"});
    }
    if (policy.allowed_rel_types && !policy.allowed_rel_types->count(r->rel_type)) {
      out.push_back({ViolationCode::DisallowedRelType, {r->id},
                     r->rel_type + " is not an allowed relationship type"});
    }
  }

  for (const Measure* m : g.sorted_measures()) {
    if (!g.find_element(m->subject)) {
      out.push_back({ViolationCode::DanglingRef, {m->id, m->subject}, "measure subject missing"});
    }
    if (m->at_event && !g.find_element(*m->at_event)) {
      out.push_back({ViolationCode::DanglingRef, {m->id, *m->at_event}, "measure event missing"});
    }
  }

  for (Aspect a : kAllAspects) {
    std::map<std::string, std::vector<ElementId>> by_key;
    for (const auto& id : g.by_aspect(a)) by_key[name_key(g.element(id).name())].push_back(id);
    for (auto& [key, ids] : by_key) {
      if (ids.size() < 2) continue;
      out.push_back({ViolationCode::DupName, ids,
                     "duplicate " + std::string(to_string(a)) + " name '" + key + "'"});
    }
  }

  std::sort(out.begin(), out.end(), [](const Violation& x, const Violation& y) {
    if (x.code != y.code) return x.code < y.code;
    if (x.subjects != y.subjects) return x.subjects < y.subjects;
    return x.message < y.message;
  });
  return report;
}

std::string report_to_jsonl(const ValidationReport& report) {
  std::string out;
  for (const auto& v : report.violations) {
    json subjects = json::array();
    for (const auto& id : v.subjects) subjects.push_back(id.str());
    out += codec::dump({{"rec", "violation"},
                        {"code", std::string(to_string(v.code))},
                        {"subjects", subjects},
                        {"message", v.message}});
    out += '\n';
  }
  json rows = json::object();
  for (Aspect a : kAllAspects) {
    json row = json::object();
    for (Perspective p : kAllPerspectives) {
      row[std::string(to_string(p))] = report.matrix[index_of(a)][index_of(p)];
    }
    rows[std::string(to_string(a))] = std::move(row);
  }
  out += codec::dump({{"rec", "matrix"}, {"cells", rows}, {"total", report.matrix_total()}});
  out += '\n';
  return out;
}

std::string matrix_to_tsv(const CoverageMatrix& m) {
  std::string out = "aspect";
  for (Perspective p : kAllPerspectives) out += "\t" + std::string(to_string(p));
  out += "\ttotal\n";
  for (Aspect a : kAllAspects) {
    out += to_string(a);
    for (Perspective p : kAllPerspectives) {
      out += "\t" + std::to_string(m[index_of(a)][index_of(p)]);
    }
    out += "\t" + std::to_string(row_total(m, a)) + "\n";
  }
  out += "total";
  std::size_t grand = 0;
  for (Perspective p : kAllPerspectives) {
    grand += column_total(m, p);
    out += "\t" + std::to_string(column_total(m, p));
  }
  out += "\t" + std::to_string(grand) + "\n";
  return out;
}

std::string report_to_tsv(const ValidationReport& report) {
  std::string out = "code\tsubjects\tmessage\n";
  for (const auto& v : report.violations) {
    std::string subjects;
    for (const auto& id : v.subjects) subjects += (subjects.empty() ? "" : ",") + id.str();
    out += std::string(to_string(v.code)) + "\t" + subjects + "\t" + v.message + "\n";
  }
  out += "\n";
  out += matrix_to_tsv(report.matrix);
  return out;
}

}  // namespace tantra
