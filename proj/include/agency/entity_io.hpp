#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "agency/entity_set.hpp"
#include "agency/errors.hpp"
#include "agency/support.hpp"

namespace agency {

// Entity-set document, either an explicit list
//
//   [{"id": "y", "assignment": {"a@0": "1", "a@1": "1"}}, ...]
//
// or a directive
//
//   {"builtin": "all-stps", "max_domain_size": 2}
//   {"builtin": "pa-loop"}

/// Throws ParseError for malformed documents, DomainError for directives the
/// chain cannot satisfy (EntityCapExceeded, NotAPaLoop).
EntitySet entity_set_from_json(const MarkovChain& chain, const Json& doc, std::size_t cap = kDefaultEntityCap);
EntitySet load_entity_set(const MarkovChain& chain, const std::filesystem::path& path,
                          std::size_t cap = kDefaultEntityCap);

/// Always the explicit-list form.
Json entity_set_to_json(const MarkovChain& chain, const EntitySet& es);

/// Resolves a trajectory selector: a support index ("3") or a full assignment
/// ("a@0=1,a@1=1"). Throws DomainError(QueryInvariantViolated) when the
/// selection is not a support trajectory, ParseError when it does not parse.
std::size_t select_trajectory(const Support& support, std::string_view selector);

}  // namespace agency
