#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pdss/field.hpp"
#include "pdss/simnet.hpp"

namespace pdss {

// Reads a whole text file; throws std::runtime_error naming the path on failure.
std::string read_text_file(const std::string& path);

// Reads a whole file as raw bytes; throws std::runtime_error naming the path.
std::vector<std::uint8_t> read_binary_file(const std::string& path);

// Writes text to a file, replacing any previous content; throws
// std::runtime_error naming the path on failure.
void write_text_file(const std::string& path, const std::string& text);

// Parses a whitespace-separated integer grid.  '#' starts a comment, blank
// lines are skipped, and every row must have the same number of entries.
// Errors mention `name` and the 1-based line they occurred on.
std::vector<std::vector<Fe>> parse_int_matrix(const std::string& text, const std::string& name);

// Convenience: read_text_file + parse_int_matrix with the path as the name.
std::vector<std::vector<Fe>> load_int_matrix(const std::string& path);

// Renders a grid one space-separated row per line.
std::string int_matrix_to_text(const std::vector<std::vector<Fe>>& rows);

// Converts raw bytes into exactly `count` field elements:
//  - over gf(2), bits are consumed most-significant first and the input must
//    be ceil(count/8) bytes with all padding bits zero;
//  - over fields with at most 256 elements, each byte is one symbol and must
//    be a canonical element;
//  - over larger fields, each symbol is two bytes, big-endian.
// The byte count must match exactly; violations throw std::invalid_argument.
std::vector<Fe> bytes_to_symbols(const Field& f, std::span<const std::uint8_t> bytes,
                                 std::size_t count);

// Serializes a cluster (configuration, vector assignment, and per-node state)
// into a canonical versioned text form.  Parsing the result reproduces the
// cluster exactly, and re-serializing reproduces the text byte for byte.
// The bandwidth ledger is runtime accounting and is not part of a snapshot.
std::string snapshot_to_text(const Cluster& cluster);

// Parses the snapshot text form.  Errors mention `name` and a 1-based line.
Cluster snapshot_from_text(const std::string& text, const std::string& name);

}  // namespace pdss
