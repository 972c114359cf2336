#pragma once
// JSON encodings shared by every JSON-lines file family (graph, policy,
// metrics config, mapping, interventions). Internal to the library.

#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "tantra/error.hpp"
#include "tantra/model.hpp"

namespace tantra::codec {

using json = nlohmann::json;

// Raised by the decode_* functions; readers attach the line number.
struct DecodeFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json encode_literal(const Literal& v);
// Accepts string, number, bool, or {"date": "YYYY-MM-DD"}.
Literal decode_literal(const json& j);

json encode_attr(const AttrValue& v);
AttrValue decode_attr(const json& j);

json encode_element(const Element& e);
Element decode_element(const json& j);
json encode_relationship(const Relationship& r);
Relationship decode_relationship(const json& j);
json encode_measure(const Measure& m);
Measure decode_measure(const json& j);

// One compact line, no trailing newline.
inline std::string dump(const json& j) { return j.dump(); }

// Splits text on LF; a trailing empty line is dropped. CR before LF is kept
// out of the line.
std::vector<std::string_view> split_lines(std::string_view text);

// Parses one JSON-lines record, mapping parser failures to MalformedRecord.
json parse_line(std::string_view line, std::size_t line_no);

// Typed field access with MalformedRecord on absence or wrong type.
const json& require(const json& obj, const char* key, std::size_t line_no);
std::string require_string(const json& obj, const char* key, std::size_t line_no);

// Validates a {"format": ..., "version": 1} header line.
json parse_header(std::string_view line, std::string_view format, std::size_t line_no = 1);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

}  // namespace tantra::codec
