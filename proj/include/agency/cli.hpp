#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "agency/support.hpp"

namespace agency::cli {

enum class Format { Json, Text };

struct RunConfig {
    std::string command;  // "validate", ..., "paloop verify", "fixture"
    std::vector<std::string> inputs;
    std::optional<std::string> entity_set;
    std::optional<std::string> entity;
    std::optional<std::string> trajectory;
    std::optional<std::string> anchor;
    std::optional<std::string> fixture;
    std::optional<std::string> output;
    std::optional<int> t;
    int r = 1;
    int history = 0;
    std::size_t support_cap = kDefaultSupportCap;
    Format format = Format::Json;
    std::uint64_t seed = 0;
    int seeds = 0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitMalformed = 1;
inline constexpr int kExitDomain = 2;

/// Executes one command and writes its report once, to `output` when set and
/// to `out` otherwise. Exit 0 on success, 2 on domain errors, 1 on malformed
/// input or usage errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (long-form flags only) and calls run. Reads AGENCY_SUPPORT_CAP
/// for the default enumeration cap.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace agency::cli
