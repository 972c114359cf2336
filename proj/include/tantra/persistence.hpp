#pragma once
// JSON-lines persistence. Line 1 is a header
//   {"format":"tantra-graph","version":1,"next_id":N,"elements":E,...}
// followed by element, relationship and measure records (each sorted by id).
// The header counts let load() detect truncation at a line boundary.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "tantra/graph.hpp"

namespace tantra {

std::string serialize(const TantraGraph& g);
// Throws MalformedRecordError.
TantraGraph deserialize(std::string_view text);

// Returns the number of bytes written. Throws IoFailure.
std::size_t save(const TantraGraph& g, const std::filesystem::path& path);
TantraGraph load(const std::filesystem::path& path);

std::string sha256_hex(std::string_view bytes);
// SHA-256 of the canonical save bytes.
std::string structural_hash(const TantraGraph& g);

}  // namespace tantra
