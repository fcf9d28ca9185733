#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "agency/entity_set.hpp"

namespace agency {

struct ActionQuery {
    std::size_t entity;      // index into the entity-set
    std::size_t trajectory;  // index into the support
    int t = 0;
    int history = 0;  // occupation and environment must match on [t - history, t]
};

enum class ActionKind { Value, Extent };
std::string_view to_string(ActionKind kind);

struct CoAction {
    std::size_t entity;
    std::size_t trajectory;
    ActionKind kind;

    friend bool operator==(const CoAction&, const CoAction&) = default;
};

/// Throws DomainError(QueryInvariantViolated) unless the query is well formed:
/// trajectory in the support, entity occurring in it, non-empty slices at t and
/// t+1, t+1 <= t_max and t - history >= 0.
void check_query(const EntityModel& model, const ActionQuery& q);

/// Every (entity, trajectory) pair witnessing that the query entity acts at t,
/// ordered by (entity, trajectory). Empty means no action.
std::vector<CoAction> find_co_actions(const EntityModel& model, const ActionQuery& q);

/// Same conditions as find_co_actions, stopping at the first witness.
bool has_co_action(const EntityModel& model, const ActionQuery& q);

/// One class of co-actions sharing the same slice at t+1.
struct CoActionClass {
    Stp next_slice;
    bool contains_query = false;
    std::vector<CoAction> members;
};

/// {query slice} plus co-action slices grouped by slice-(t+1) equality.
/// The query's class comes first, the rest in canonical STP order.
std::vector<CoActionClass> co_action_sets(const EntityModel& model, const ActionQuery& q);

struct ActionRow {
    int t;
    bool acted;
    std::size_t classes;  // n
    bool has_value = false;
    bool has_extent = false;
    double log2_classes;
};

/// One row per t where the entity has non-empty slices at t and t+1.
std::vector<ActionRow> action_report(const EntityModel& model, std::size_t entity, std::size_t trajectory,
                                     int history = 0);

}  // namespace agency
