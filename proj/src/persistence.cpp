#include "tantra/persistence.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>

#include "json_codec.hpp"

namespace tantra {

using codec::json;

std::string serialize(const TantraGraph& g) {
  json header = {{"format", "tantra-graph"},
                 {"version", 1},
                 {"next_id", g.ids().next()},
                 {"elements", g.element_count()},
                 {"relationships", g.relationship_count()},
                 {"measures", g.measure_count()}};
  std::string out = codec::dump(header);
  out += '\n';
  for (const Element* e : g.sorted_elements()) {
    out += codec::dump(codec::encode_element(*e));
    out += '\n';
  }
  for (const Relationship* r : g.sorted_relationships()) {
    out += codec::dump(codec::encode_relationship(*r));
    out += '\n';
  }
  for (const Measure* m : g.sorted_measures()) {
    out += codec::dump(codec::encode_measure(*m));
    out += '\n';
  }
  return out;
}

TantraGraph deserialize(std::string_view text) {
  const auto lines = codec::split_lines(text);
  if (lines.empty()) throw MalformedRecordError(1, "missing header");
  const json header = codec::parse_header(lines[0], "tantra-graph");

  auto count = [&](const char* key) -> std::size_t {
    const json& v = codec::require(header, key, 1);
    if (!v.is_number_unsigned()) throw MalformedRecordError(1, std::string(key) + " must be a count");
    return v.get<std::size_t>();
  };
  const std::size_t next_id = count("next_id");
  const std::size_t want_elements = count("elements");
  const std::size_t want_relationships = count("relationships");
  const std::size_t want_measures = count("measures");

  TantraGraph g;
  // Records must appear grouped: elements, then relationships, then measures.
  int stage = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (lines[i].empty()) throw MalformedRecordError(line_no, "empty line");
    const json rec = codec::parse_line(lines[i], line_no);
    const std::string kind = codec::require_string(rec, "rec", line_no);
    try {
      if (kind == "element") {
        if (stage > 0) throw MalformedRecordError(line_no, "element after edges or measures");
        g.insert_element(codec::decode_element(rec));
      } else if (kind == "relationship") {
        if (stage > 1) throw MalformedRecordError(line_no, "relationship after measures");
        stage = 1;
        g.insert_relationship(codec::decode_relationship(rec));
      } else if (kind == "measure") {
        stage = 2;
        g.insert_measure(codec::decode_measure(rec));
      } else {
        throw MalformedRecordError(line_no, "unknown record kind '" + kind + "'");
      }
    } catch (const MalformedRecordError&) {
      throw;
    } catch (const Error& e) {
      throw MalformedRecordError(line_no, e.what());
    } catch (const codec::DecodeFailure& e) {
      throw MalformedRecordError(line_no, e.what());
    } catch (const json::exception& e) {
      throw MalformedRecordError(line_no, e.what());
    }
  }

  if (g.element_count() != want_elements || g.relationship_count() != want_relationships ||
      g.measure_count() != want_measures) {
    throw MalformedRecordError(lines.size() + 1, "record count does not match header (truncated?)");
  }
  if (next_id < g.ids().next()) {
    throw MalformedRecordError(1, "next_id is below an id already in use");
  }
  g.ids().set_next(next_id);
  return g;
}

std::size_t save(const TantraGraph& g, const std::filesystem::path& path) {
  const std::string bytes = serialize(g);
  codec::write_file(path.string(), bytes);
  return bytes.size();
}

TantraGraph load(const std::filesystem::path& path) {
  return deserialize(codec::read_file(path.string()));
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::InvalidArgument, "SHA-256 computation failed");
  }
  std::string hex;
  hex.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string structural_hash(const TantraGraph& g) { return sha256_hex(serialize(g)); }

}  // namespace tantra
