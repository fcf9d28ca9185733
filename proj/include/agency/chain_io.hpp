#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "agency/chain.hpp"
#include "agency/errors.hpp"

namespace agency {

// Chain definition document:
//
//   {
//     "spatial":    ["M", "E"],
//     "t_max":      2,
//     "alphabets":  ["0", "1"]          // or {"default": [...], "M": [...], "M@1": [...]}
//     "parents":    {"M@1": ["M@0", "E@0"], ...},
//     "mechanisms": {"M@0": {"": ["1/2", "1/2"]},
//                    "M@1": {"0,0": ["1/1", "0/1"], "0,1": [...], ...}, ...}
//   }
//
// Row keys list the parent symbols in canonical parent order joined by ','.
// Row entries are probabilities over the child's alphabet in declaration order.

Json chain_to_json(const MarkovChain& chain);
/// Throws ParseError naming the offending field.
MarkovChain chain_from_json(const Json& doc);

/// Canonical serialization: two-space indent, trailing newline.
std::string dump_chain(const MarkovChain& chain);
/// Parses text; JSON syntax errors are reported with line and column.
MarkovChain parse_chain(std::string_view text);
MarkovChain load_chain(const std::filesystem::path& path);

/// Parses JSON text, mapping syntax errors to ParseError("line L, column C").
Json parse_json_text(std::string_view text);
std::string read_file(const std::filesystem::path& path);

}  // namespace agency
