#pragma once

#include <string>
#include <string_view>

#include "agency/actions.hpp"
#include "agency/chain.hpp"
#include "agency/errors.hpp"
#include "agency/paloop.hpp"
#include "agency/partition.hpp"
#include "agency/perceptions.hpp"
#include "agency/support.hpp"

namespace agency::report {

inline constexpr std::string_view kSchemaVersion = "1.0";

/// {"variables": ["a@0", ...], "alphabets": {"a@0": [...], ...}}
Json canonical_order(const MarkovChain& chain);

/// Report envelope: schema_version, command, optional canonical_order, result.
Json envelope(std::string_view command, const MarkovChain* chain, Json result);
/// Error envelope: {"kind", "message", "detail"} under "error".
Json error_envelope(std::string_view command, std::string_view kind, std::string_view message, Json detail);

Json rational(const Rational& r);
Json validation(const ValidationReport& report, const MarkovChain& chain);
Json trajectory(const Support& support, std::size_t index);
Json partition(const Partition& p);
/// `t` is the query time; the co-action's slice at t+1 is reported.
Json co_action(const EntityModel& model, const CoAction& c, int t);
Json co_action_class(const EntityModel& model, const CoActionClass& c);
Json branch_morph(const MarkovChain& chain, const BranchMorph& m);
Json perception(const EntityModel& model, const PerceptionResult& result);
Json exclusivity_witness(const EntityModel& model, const ExclusivityWitness& w);

/// Readable rendering of a report; carries no information the JSON lacks.
std::string render_text(const Json& report);

}  // namespace agency::report
