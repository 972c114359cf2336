#include "tantra/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "json_codec.hpp"

namespace tantra {

using codec::json;

CsvTable parse_csv(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  CsvTable table;
  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> lines;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;       // inside a quoted field
  bool was_quoted = false;   // current field started with a quote
  bool record_open = false;  // any byte seen for the current record
  std::size_t line = 1, record_line = 1, quote_line = 1;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    lines.push_back(record_line);
    record.clear();
    record_open = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (!record_open) {
      record_open = true;
      record_line = line;
    }
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"' && field.empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
      quote_line = line;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      // CRLF: the LF ends the record.
    } else if (c == '\n') {
      end_record();
      ++line;
    } else {
      field += c;
    }
  }
  if (quoted) throw MalformedRecordError(quote_line, "unterminated quoted field");
  if (record_open) end_record();

  if (records.empty()) return table;
  table.header = std::move(records.front());
  for (std::size_t i = 1; i < records.size(); ++i) {
    // A blank line is not a record.
    if (records[i].size() == 1 && records[i][0].empty()) continue;
    table.rows.push_back(std::move(records[i]));
    table.row_lines.push_back(lines[i]);
  }
  return table;
}

FieldTemplate FieldTemplate::parse(std::string_view text) {
  FieldTemplate t;
  std::string literal;
  auto flush = [&] {
    if (!literal.empty()) t.parts.push_back({false, std::move(literal)});
    literal.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if ((c == '{' || c == '}') && i + 1 < text.size() && text[i + 1] == c) {
      literal += c;
      ++i;
    } else if (c == '{') {
      auto close = text.find('}', i);
      if (close == std::string_view::npos) {
        throw Error(ErrorCode::BadMapping, "unclosed '{' in template '" + std::string(text) + "'");
      }
      std::string column(text.substr(i + 1, close - i - 1));
      if (column.empty()) throw Error(ErrorCode::BadMapping, "empty column reference in template");
      flush();
      t.parts.push_back({true, std::move(column)});
      i = close;
    } else if (c == '}') {
      throw Error(ErrorCode::BadMapping, "stray '}' in template '" + std::string(text) + "'");
    } else {
      literal += c;
    }
  }
  flush();
  return t;
}

std::vector<std::string> FieldTemplate::columns() const {
  std::vector<std::string> out;
  for (const auto& p : parts) {
    if (p.column) out.push_back(p.text);
  }
  return out;
}

std::vector<std::string> IngestMapping::referenced_columns() const {
  std::set<std::string> cols;
  auto add = [&](const FieldTemplate& t) {
    for (auto& c : t.columns()) cols.insert(c);
  };
  for (const auto& rec : templates) {
    for (const auto& [k, t] : rec.fields) add(t);
    for (const auto& t : rec.labels) add(t);
    for (const auto& [k, t] : rec.attrs) add(t);
    for (const auto& [k, p] : rec.properties) add(p.value);
  }
  return {cols.begin(), cols.end()};
}

namespace {

using Kind = RecordTemplate::Kind;

const std::map<Kind, std::set<std::string>> kAllowedFields = {
    {Kind::Element,
     {"id", "aspect", "perspective", "name", "scope", "definition", "sub_ecosystem"}},
    {Kind::Measure, {"id", "metric_name", "value", "unit", "subject", "subject_aspect", "at_event"}},
    {Kind::Relationship,
     {"id", "rel_type", "source", "target", "relator", "source_aspect", "target_aspect",
      "relator_aspect"}},
};

const std::map<Kind, std::vector<std::string>> kRequiredFields = {
    {Kind::Element, {"aspect", "name"}},
    {Kind::Measure, {"metric_name", "value", "subject"}},
    {Kind::Relationship, {"rel_type", "source", "target"}},
};

bool is_constant(const FieldTemplate& t) { return t.columns().empty(); }

std::string constant_text(const FieldTemplate& t) {
  std::string s;
  for (const auto& p : t.parts) s += p.text;
  return s;
}

[[noreturn]] void bad_mapping(std::size_t line, const std::string& why) {
  throw Error(ErrorCode::BadMapping, "mapping line " + std::to_string(line) + ": " + why);
}

std::optional<ValueType> parse_value_type(std::string_view s) {
  if (s == "string") return ValueType::String;
  if (s == "number") return ValueType::Number;
  if (s == "bool") return ValueType::Bool;
  if (s == "date") return ValueType::Date;
  return std::nullopt;
}

// Row values by column name.
struct Row {
  const std::vector<std::string>& header;
  const std::vector<std::string>& cells;

  const std::string& at(const std::string& column) const {
    auto it = std::find(header.begin(), header.end(), column);
    return cells[static_cast<std::size_t>(it - header.begin())];
  }
};

// Thrown for a row that cannot be ingested; becomes a violation.
struct RowFailure {
  std::string reason;
};

std::string render(const FieldTemplate& t, const Row& row) {
  std::string out;
  for (const auto& p : t.parts) out += p.column ? row.at(p.text) : p.text;
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double to_number(const std::string& raw, const std::string& what) {
  const std::string s = trim(raw);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw RowFailure{what + ": '" + raw + "' is not a number"};
  }
  return v;
}

Literal coerce(const PropertyTemplate& p, const Row& row, const std::string& key) {
  const std::string raw = render(p.value, row);
  switch (p.type) {
    case ValueType::String: return raw;
    case ValueType::Number: return to_number(raw, "property " + key);
    case ValueType::Bool: {
      const std::string s = name_key(raw);
      if (s == "true" || s == "yes" || s == "1") return true;
      if (s == "false" || s == "no" || s == "0") return false;
      throw RowFailure{"property " + key + ": '" + raw + "' is not a boolean"};
    }
    case ValueType::Date: {
      auto d = Date::parse(trim(raw));
      if (!d) throw RowFailure{"property " + key + ": '" + raw + "' is not a YYYY-MM-DD date"};
      return *d;
    }
  }
  return raw;
}

std::optional<std::string> optional_field(const RecordTemplate& t, const char* key, const Row& row) {
  auto it = t.fields.find(key);
  if (it == t.fields.end()) return std::nullopt;
  return render(it->second, row);
}

std::optional<Aspect> constant_aspect(const RecordTemplate& t, const char* key) {
  auto it = t.fields.find(key);
  if (it == t.fields.end()) return std::nullopt;
  return parse_aspect(constant_text(it->second));
}

ElementId resolve_ref(const TantraGraph& g, const std::string& raw, std::optional<Aspect> aspect,
                      const std::string& what) {
  const std::string text = trim(raw);
  if (text.empty()) throw RowFailure{what + " is empty"};
  if (const Element* e = g.find_element(ElementId(text))) {
    if (!aspect || e->aspect() == *aspect) return e->id();
  }
  std::vector<ElementId> hits;
  for (const auto& id : g.by_name(text)) {
    if (!aspect || g.element(id).aspect() == *aspect) hits.push_back(id);
  }
  const std::string where = aspect ? " in " + std::string(to_string(*aspect)) : "";
  if (hits.empty()) throw RowFailure{what + ": no element '" + text + "'" + where};
  if (hits.size() > 1) throw RowFailure{what + ": name '" + text + "' is ambiguous" + where};
  return hits.front();
}

void apply_element(TantraGraph& g, const RecordTemplate& t, const Row& row, std::size_t line) {
  const std::string aspect_text = render(t.fields.at("aspect"), row);
  auto aspect = parse_aspect(trim(aspect_text));
  if (!aspect) throw RowFailure{"unknown aspect '" + aspect_text + "'"};
  Perspective target = Perspective::Instantiated;
  if (auto p = optional_field(t, "perspective", row)) {
    auto parsed = parse_perspective(trim(*p));
    if (!parsed) throw RowFailure{"unknown perspective '" + *p + "'"};
    target = *parsed;
  }
  const std::string name = canonical_name(render(t.fields.at("name"), row));
  if (name.empty()) throw RowFailure{"name is empty"};
  const std::string scope = optional_field(t, "scope", row).value_or("ingest");

  Element::Parts parts;
  if (auto id = optional_field(t, "id", row); id && !trim(*id).empty()) {
    parts.id = ElementId(trim(*id));
    if (g.contains(parts.id)) throw RowFailure{"id " + parts.id.str() + " already in use"};
  } else {
    parts.id = g.issue_id(*aspect);
  }
  parts.aspect = *aspect;
  parts.name = name;
  parts.scope = scope;
  Element e = Element::from_parts(std::move(parts));

  PromotionPayload payload;
  payload.definition = optional_field(t, "definition", row).value_or(name);
  if (payload.definition->empty()) payload.definition = name;
  for (const auto& [k, v] : t.attrs) payload.logical_attrs[k] = Literal{render(v, row)};
  if (payload.logical_attrs.empty()) {
    payload.logical_attrs["ingest.row"] = Literal{"line " + std::to_string(line)};
  }
  SchemaConfig schema;
  for (const auto& l : t.labels) {
    std::string label = trim(render(l, row));
    if (!label.empty()) schema.labels.insert(label);
  }
  if (schema.labels.empty()) schema.labels.insert(std::string(to_string(*aspect)));
  for (const auto& [k, p] : t.properties) schema.property_keys.insert(k);
  payload.schema_config = schema;
  payload.final_id = e.id();
  for (Perspective p : kAllPerspectives) {
    if (p <= e.perspective() || p > target) continue;
    e = promote(e, p, payload);
  }
  for (const auto& [k, p] : t.properties) e.set_property(k, coerce(p, row, k));
  if (auto eco = optional_field(t, "sub_ecosystem", row); eco && !trim(*eco).empty()) {
    auto parsed = parse_sub_ecosystem(trim(*eco));
    if (!parsed) throw RowFailure{"unknown sub_ecosystem '" + *eco + "'"};
    e.set_sub_ecosystem(*parsed);
  }
  g.insert_element(std::move(e));
}

void apply_measure(TantraGraph& g, const RecordTemplate& t, const Row& row) {
  Measure m;
  if (auto id = optional_field(t, "id", row); id && !trim(*id).empty()) m.id = ElementId(trim(*id));
  m.metric_name = canonical_name(render(t.fields.at("metric_name"), row));
  if (m.metric_name.empty()) throw RowFailure{"metric_name is empty"};
  m.value = to_number(render(t.fields.at("value"), row), "measure value");
  m.unit = optional_field(t, "unit", row).value_or("");
  m.subject = resolve_ref(g, render(t.fields.at("subject"), row), constant_aspect(t, "subject_aspect"),
                          "subject");
  if (auto ev = optional_field(t, "at_event", row); ev && !trim(*ev).empty()) {
    m.at_event = resolve_ref(g, *ev, Aspect::When, "at_event");
  }
  g.insert_measure(std::move(m));
}

void apply_relationship(TantraGraph& g, const RecordTemplate& t, const Row& row) {
  Relationship r;
  if (auto id = optional_field(t, "id", row); id && !trim(*id).empty()) r.id = ElementId(trim(*id));
  r.rel_type = trim(render(t.fields.at("rel_type"), row));
  if (r.rel_type.empty()) throw RowFailure{"rel_type is empty"};
  r.source = resolve_ref(g, render(t.fields.at("source"), row), constant_aspect(t, "source_aspect"),
                         "source");
  r.target = resolve_ref(g, render(t.fields.at("target"), row), constant_aspect(t, "target_aspect"),
                         "target");
  if (auto rel = optional_field(t, "relator", row); rel && !trim(*rel).empty()) {
    r.relator = resolve_ref(g, *rel, constant_aspect(t, "relator_aspect").value_or(Aspect::Relators),
                            "relator");
  }
  for (const auto& [k, p] : t.properties) r.properties[k] = coerce(p, row, k);
  g.insert_relationship(std::move(r));
}

}  // namespace

IngestMapping parse_mapping(std::string_view text) {
  const auto lines = codec::split_lines(text);
  if (lines.empty()) bad_mapping(1, "missing header");
  IngestMapping mapping;
  try {
    const json header = codec::parse_header(lines[0], "tantra-mapping");
    if (header.contains("columns")) {
      mapping.columns = header["columns"].get<std::vector<std::string>>();
    }
  } catch (const MalformedRecordError& e) {
    throw Error(ErrorCode::BadMapping, std::string("mapping ") + e.what());
  } catch (const json::exception& e) {
    bad_mapping(1, std::string("columns: ") + e.what());
  }

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (lines[i].empty()) continue;
    const json rec = json::parse(lines[i], nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) bad_mapping(line_no, "not a JSON object");
    if (!rec.contains("rec") || !rec["rec"].is_string()) bad_mapping(line_no, "missing 'rec'");
    RecordTemplate t;
    const std::string kind = rec["rec"].get<std::string>();
    if (kind == "element") {
      t.kind = Kind::Element;
    } else if (kind == "measure") {
      t.kind = Kind::Measure;
    } else if (kind == "relationship") {
      t.kind = Kind::Relationship;
    } else {
      bad_mapping(line_no, "unknown record kind '" + kind + "'");
    }
    const auto& allowed = kAllowedFields.at(t.kind);
    for (const auto& [key, value] : rec.items()) {
      if (key == "rec") continue;
      if (key == "labels" && t.kind == Kind::Element) {
        if (!value.is_array()) bad_mapping(line_no, "labels must be an array");
        for (const auto& l : value) {
          if (!l.is_string()) bad_mapping(line_no, "labels must hold strings");
          t.labels.push_back(FieldTemplate::parse(l.get<std::string>()));
        }
      } else if (key == "attrs" && t.kind == Kind::Element) {
        if (!value.is_object()) bad_mapping(line_no, "attrs must be an object");
        for (const auto& [k, v] : value.items()) {
          if (!v.is_string()) bad_mapping(line_no, "attr " + k + " must be a string template");
          t.attrs[k] = FieldTemplate::parse(v.get<std::string>());
        }
      } else if (key == "properties" && t.kind != Kind::Measure) {
        if (!value.is_object()) bad_mapping(line_no, "properties must be an object");
        for (const auto& [k, v] : value.items()) {
          PropertyTemplate p;
          if (v.is_string()) {
            p.value = FieldTemplate::parse(v.get<std::string>());
          } else if (v.is_object() && v.contains("value") && v["value"].is_string()) {
            p.value = FieldTemplate::parse(v["value"].get<std::string>());
            auto type = parse_value_type(v.value("type", std::string("string")));
            if (!type) bad_mapping(line_no, "property " + k + " has an unknown type");
            p.type = *type;
          } else {
            bad_mapping(line_no, "property " + k + " must be a template or {value, type}");
          }
          t.properties[k] = std::move(p);
        }
      } else if (allowed.count(key)) {
        if (!value.is_string()) bad_mapping(line_no, "field " + key + " must be a string template");
        t.fields[key] = FieldTemplate::parse(value.get<std::string>());
      } else {
        bad_mapping(line_no, "field '" + key + "' is not valid for a " + kind + " template");
      }
    }
    for (const auto& req : kRequiredFields.at(t.kind)) {
      if (!t.fields.count(req)) bad_mapping(line_no, kind + " template needs '" + req + "'");
    }
    for (const char* key : {"aspect", "subject_aspect", "source_aspect", "target_aspect", "relator_aspect"}) {
      auto it = t.fields.find(key);
      if (it == t.fields.end()) continue;
      const bool templated = !is_constant(it->second);
      if (templated && std::string_view(key) != "aspect") {
        bad_mapping(line_no, std::string(key) + " must be a constant aspect name");
      }
      if (!templated && !parse_aspect(constant_text(it->second))) {
        bad_mapping(line_no, "'" + constant_text(it->second) + "' is not one of the nine aspects");
      }
    }
    if (auto it = t.fields.find("perspective"); it != t.fields.end() && is_constant(it->second) &&
                                                !parse_perspective(constant_text(it->second))) {
      bad_mapping(line_no, "unknown perspective '" + constant_text(it->second) + "'");
    }
    mapping.templates.push_back(std::move(t));
  }
  if (mapping.templates.empty()) bad_mapping(lines.size(), "no templates");
  return mapping;
}

IngestMapping load_mapping(const std::string& path) { return parse_mapping(codec::read_file(path)); }

IngestResult ingest_csv_text(TantraGraph& g, std::string_view csv, const IngestMapping& mapping) {
  const CsvTable table = parse_csv(csv);
  if (table.header.empty() || (table.header.size() == 1 && table.header[0].empty())) {
    throw Error(ErrorCode::BadMapping, "CSV has no header row");
  }
  if (mapping.columns && *mapping.columns != table.header) {
    std::string got;
    for (const auto& h : table.header) got += (got.empty() ? "" : ",") + h;
    throw Error(ErrorCode::BadMapping, "CSV header '" + got + "' does not match the mapping columns");
  }
  for (const auto& col : mapping.referenced_columns()) {
    if (std::find(table.header.begin(), table.header.end(), col) == table.header.end()) {
      throw Error(ErrorCode::BadMapping, "mapping references column '" + col + "' absent from the CSV header");
    }
  }

  IngestResult result;
  for (const auto& t : mapping.templates) {
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const std::size_t line = table.row_lines[i];
      const auto& cells = table.rows[i];
      try {
        if (cells.size() != table.header.size()) {
          throw RowFailure{"row has " + std::to_string(cells.size()) + " fields, header has " +
                           std::to_string(table.header.size())};
        }
        Row row{table.header, cells};
        switch (t.kind) {
          case Kind::Element: apply_element(g, t, row, line); break;
          case Kind::Measure: apply_measure(g, t, row); break;
          case Kind::Relationship: apply_relationship(g, t, row); break;
        }
        ++result.inserted;
      } catch (const RowFailure& f) {
        ++result.skipped;
        result.violations.push_back({line, f.reason});
      } catch (const Error& e) {
        ++result.skipped;
        result.violations.push_back({line, e.what()});
      }
    }
  }
  return result;
}

IngestResult ingest_csv(TantraGraph& g, const std::string& path, const IngestMapping& mapping) {
  return ingest_csv_text(g, codec::read_file(path), mapping);
}

IngestResult ingest_jsonl_text(TantraGraph& g, std::string_view text) {
  const auto lines = codec::split_lines(text);
  if (lines.empty()) throw MalformedRecordError(1, "missing header");
  codec::parse_header(lines[0], "tantra-records");
  IngestResult result;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (lines[i].empty()) continue;
    try {
      json rec = json::parse(lines[i], nullptr, false);
      if (rec.is_discarded() || !rec.is_object()) throw codec::DecodeFailure("not a JSON object");
      const std::string kind = rec.value("rec", std::string());
      const bool fresh = !rec.contains("id") || (rec["id"].is_string() && rec["id"].get<std::string>().empty());
      if (kind == "element") {
        if (fresh) {
          auto aspect = parse_aspect(rec.value("aspect", std::string()));
          if (!aspect) throw codec::DecodeFailure("unknown aspect");
          rec["id"] = g.issue_id(*aspect).str();
        }
        g.insert_element(codec::decode_element(rec));
      } else if (kind == "relationship" || kind == "measure") {
        if (fresh) rec["id"] = "PENDING";
        if (kind == "relationship") {
          Relationship r = codec::decode_relationship(rec);
          if (fresh) r.id = ElementId();
          g.insert_relationship(std::move(r));
        } else {
          Measure m = codec::decode_measure(rec);
          if (fresh) m.id = ElementId();
          g.insert_measure(std::move(m));
        }
      } else {
        throw codec::DecodeFailure("unknown record kind '" + kind + "'");
      }
      ++result.inserted;
    } catch (const codec::DecodeFailure& e) {
      ++result.skipped;
      result.violations.push_back({line_no, e.what()});
    } catch (const Error& e) {
      ++result.skipped;
      result.violations.push_back({line_no, e.what()});
    } catch (const json::exception& e) {
      ++result.skipped;
      result.violations.push_back({line_no, e.what()});
    }
  }
  return result;
}

IngestResult ingest_jsonl(TantraGraph& g, const std::string& path) {
  return ingest_jsonl_text(g, codec::read_file(path));
}

std::string ingest_result_to_tsv(const IngestResult& r) {
  std::string out = "inserted\tskipped\n" + std::to_string(r.inserted) + "\t" +
                    std::to_string(r.skipped) + "\n";
  if (!r.violations.empty()) {
    out += "\nrow\treason\n";
    for (const auto& v : r.violations) out += std::to_string(v.row) + "\t" + v.reason + "\n";
  }
  return out;
}

}  // namespace tantra
