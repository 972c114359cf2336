#include "json_codec.hpp"

#include <fstream>
#include <sstream>

namespace tantra::codec {

namespace {

Date decode_date(const json& j) {
  if (!j.is_string()) throw DecodeFailure("date must be a string");
  auto d = Date::parse(j.get<std::string>());
  if (!d) throw DecodeFailure("bad date '" + j.get<std::string>() + "'");
  return *d;
}

ElementId decode_id(const json& j, const char* what) {
  if (!j.is_string() || j.get<std::string>().empty()) {
    throw DecodeFailure(std::string(what) + " must be a non-empty string");
  }
  return ElementId(j.get<std::string>());
}

const json& field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DecodeFailure(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_string()) throw DecodeFailure(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::map<std::string, Literal> decode_properties(const json& obj, const char* key) {
  std::map<std::string, Literal> out;
  auto it = obj.find(key);
  if (it == obj.end()) return out;
  if (!it->is_object()) throw DecodeFailure(std::string(key) + " must be an object");
  for (const auto& [k, v] : it->items()) out.emplace(k, decode_literal(v));
  return out;
}

json encode_properties(const std::map<std::string, Literal>& props) {
  json out = json::object();
  for (const auto& [k, v] : props) out[k] = encode_literal(v);
  return out;
}

}  // namespace

json encode_literal(const Literal& v) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Date>) {
          return json{{"date", x.to_string()}};
        } else {
          return json(x);
        }
      },
      v);
}

Literal decode_literal(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number()) return j.get<double>();
  if (j.is_object() && j.size() == 1 && j.contains("date")) return decode_date(j["date"]);
  throw DecodeFailure("unsupported literal " + j.dump());
}

json encode_attr(const AttrValue& v) {
  if (const auto* id = std::get_if<ElementId>(&v)) return json{{"ref", id->str()}};
  return encode_literal(std::get<Literal>(v));
}

AttrValue decode_attr(const json& j) {
  if (j.is_object() && j.size() == 1 && j.contains("ref")) return decode_id(j["ref"], "ref");
  return decode_literal(j);
}

json encode_element(const Element& e) {
  json j;
  j["rec"] = "element";
  j["id"] = e.id().str();
  j["aspect"] = std::string(to_string(e.aspect()));
  j["perspective"] = std::string(to_string(e.perspective()));
  j["name"] = e.name();
  j["scope"] = e.scope();
  if (e.definition()) j["definition"] = *e.definition();
  json attrs = json::object();
  for (const auto& [k, v] : e.logical_attrs()) attrs[k] = encode_attr(v);
  j["logical_attrs"] = std::move(attrs);
  if (e.schema_config()) {
    j["schema_config"] = {{"labels", e.schema_config()->labels},
                          {"property_keys", e.schema_config()->property_keys}};
  }
  j["properties"] = encode_properties(e.properties());
  if (e.sub_ecosystem()) j["sub_ecosystem"] = std::string(to_string(*e.sub_ecosystem()));
  if (e.span()) {
    json span = {{"start", e.span()->start.to_string()}};
    if (e.span()->end) span["end"] = e.span()->end->to_string();
    j["span"] = std::move(span);
  }
  return j;
}

Element decode_element(const json& j) {
  Element::Parts p;
  p.id = decode_id(field(j, "id"), "id");
  auto aspect = parse_aspect(string_field(j, "aspect"));
  if (!aspect) throw DecodeFailure("unknown aspect '" + string_field(j, "aspect") + "'");
  p.aspect = *aspect;
  auto perspective = parse_perspective(string_field(j, "perspective"));
  if (!perspective) {
    throw DecodeFailure("unknown perspective '" + string_field(j, "perspective") + "'");
  }
  p.perspective = *perspective;
  p.name = string_field(j, "name");
  p.scope = string_field(j, "scope");
  if (j.contains("definition")) p.definition = string_field(j, "definition");
  if (auto it = j.find("logical_attrs"); it != j.end()) {
    if (!it->is_object()) throw DecodeFailure("logical_attrs must be an object");
    for (const auto& [k, v] : it->items()) p.logical_attrs.emplace(k, decode_attr(v));
  }
  if (auto it = j.find("schema_config"); it != j.end()) {
    SchemaConfig sc;
    sc.labels = field(*it, "labels").get<std::set<std::string>>();
    sc.property_keys = field(*it, "property_keys").get<std::set<std::string>>();
    p.schema_config = std::move(sc);
  }
  p.properties = decode_properties(j, "properties");
  if (j.contains("sub_ecosystem")) {
    auto s = parse_sub_ecosystem(string_field(j, "sub_ecosystem"));
    if (!s) throw DecodeFailure("unknown sub_ecosystem");
    p.sub_ecosystem = *s;
  }
  if (auto it = j.find("span"); it != j.end()) {
    EventSpan span;
    span.start = decode_date(field(*it, "start"));
    if (it->contains("end")) span.end = decode_date((*it)["end"]);
    p.span = span;
  }
  return Element::from_parts(std::move(p));
}

json encode_relationship(const Relationship& r) {
  json j;
  j["rec"] = "relationship";
  j["id"] = r.id.str();
  j["rel_type"] = r.rel_type;
  j["source"] = r.source.str();
  j["target"] = r.target.str();
  if (r.relator) j["relator"] = r.relator->str();
  j["properties"] = encode_properties(r.properties);
  return j;
}

Relationship decode_relationship(const json& j) {
  Relationship r;
  r.id = decode_id(field(j, "id"), "id");
  r.rel_type = string_field(j, "rel_type");
  r.source = decode_id(field(j, "source"), "source");
  r.target = decode_id(field(j, "target"), "target");
  if (j.contains("relator")) r.relator = decode_id(j["relator"], "relator");
  r.properties = decode_properties(j, "properties");
  return r;
}

json encode_measure(const Measure& m) {
  json j;
  j["rec"] = "measure";
  j["id"] = m.id.str();
  j["metric_name"] = m.metric_name;
  j["value"] = m.value;
  j["unit"] = m.unit;
  j["subject"] = m.subject.str();
  if (m.at_event) j["at_event"] = m.at_event->str();
  return j;
}

Measure decode_measure(const json& j) {
  Measure m;
  m.id = decode_id(field(j, "id"), "id");
  m.metric_name = string_field(j, "metric_name");
  const json& v = field(j, "value");
  if (!v.is_number()) throw DecodeFailure("value must be a number");
  m.value = v.get<double>();
  m.unit = string_field(j, "unit");
  m.subject = decode_id(field(j, "subject"), "subject");
  if (j.contains("at_event")) m.at_event = decode_id(j["at_event"], "at_event");
  return m;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

json parse_line(std::string_view line, std::size_t line_no) {
  json j = json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded()) throw MalformedRecordError(line_no, "invalid JSON");
  if (!j.is_object()) throw MalformedRecordError(line_no, "record is not a JSON object");
  return j;
}

const json& require(const json& obj, const char* key, std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw MalformedRecordError(line_no, std::string("missing field '") + key + "'");
  }
  return *it;
}

std::string require_string(const json& obj, const char* key, std::size_t line_no) {
  const json& v = require(obj, key, line_no);
  if (!v.is_string()) {
    throw MalformedRecordError(line_no, std::string("field '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

json parse_header(std::string_view line, std::string_view format, std::size_t line_no) {
  json h = parse_line(line, line_no);
  if (require_string(h, "format", line_no) != format) {
    throw MalformedRecordError(line_no, "expected format '" + std::string(format) + "'");
  }
  const json& version = require(h, "version", line_no);
  if (!version.is_number_integer() || version.get<int>() != 1) {
    throw MalformedRecordError(line_no, "unsupported version");
  }
  return h;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoFailure, "read failed: " + path);
  return ss.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "write failed: " + path);
}
}  // namespace tantra::codec
