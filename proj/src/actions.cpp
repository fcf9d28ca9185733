#include "agency/actions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "agency/errors.hpp"

namespace agency {

std::string_view to_string(ActionKind kind) { return kind == ActionKind::Value ? "value" : "extent"; }

void check_query(const EntityModel& model, const ActionQuery& q) {
    auto fail = [](const std::string& msg) { throw DomainError(ErrorKind::QueryInvariantViolated, msg); };
    const auto& chain = model.chain();
    if (q.entity >= model.entities().size()) fail("entity index out of range");
    if (q.trajectory >= model.support().size()) fail("trajectory is not in the support");
    if (q.t < 0 || q.t + 1 > chain.t_max()) fail("t+1 must not exceed t_max");
    if (q.history < 0 || q.t - q.history < 0) fail("history window starts before t=0");
    const auto& occ = model.occurrences(q.entity);
    if (!std::binary_search(occ.begin(), occ.end(), q.trajectory))
        fail("entity '" + model.id(q.entity) + "' does not occur in the trajectory");
    if (model.slice(q.entity, q.t).empty() || model.slice(q.entity, q.t + 1).empty())
        fail("entity '" + model.id(q.entity) + "' needs non-empty slices at t and t+1");
}

namespace {

/// Calls `emit(co_action)` for each witness; stops when emit returns false.
template <typename Emit>
void scan_co_actions(const EntityModel& model, const ActionQuery& q, Emit&& emit) {
    check_query(model, q);
    const auto& chain = model.chain();
    const auto& support = model.support();
    const auto& x = support[q.trajectory].values;
    const int from = q.t - q.history;

    // Environment variables of the query entity over the window.
    std::vector<std::size_t> env_vars;
    for (int s = from; s <= q.t; ++s)
        for (const auto v : environment_domain(chain, model.slice(q.entity, s), s)) env_vars.push_back(chain.flat(v));

    const auto& next = model.slice(q.entity, q.t + 1);
    for (std::size_t tr = 0; tr < support.size(); ++tr) {
        if (tr == q.trajectory) continue;
        const auto& y = support[tr].values;
        if (!std::all_of(env_vars.begin(), env_vars.end(), [&](std::size_t i) { return x[i] == y[i]; })) continue;
        for (const auto e : model.present(tr)) {
            bool same_occupation = true;
            for (int s = from; s <= q.t && same_occupation; ++s)
                same_occupation = model.slice(e, s).same_domain(model.slice(q.entity, s));
            if (!same_occupation || model.slice(e, q.t).empty()) continue;
            const auto& other_next = model.slice(e, q.t + 1);
            if (other_next.empty() || other_next == next) continue;
            const auto kind = other_next.same_domain(next) ? ActionKind::Value : ActionKind::Extent;
            if (!emit(CoAction{e, tr, kind})) return;
        }
    }
}

}  // namespace

std::vector<CoAction> find_co_actions(const EntityModel& model, const ActionQuery& q) {
    std::vector<CoAction> out;
    scan_co_actions(model, q, [&](const CoAction& c) {
        out.push_back(c);
        return true;
    });
    std::sort(out.begin(), out.end(), [](const CoAction& a, const CoAction& b) {
        return a.entity != b.entity ? a.entity < b.entity : a.trajectory < b.trajectory;
    });
    return out;
}

bool has_co_action(const EntityModel& model, const ActionQuery& q) {
    bool found = false;
    scan_co_actions(model, q, [&](const CoAction&) {
        found = true;
        return false;
    });
    return found;
}

std::vector<CoActionClass> co_action_sets(const EntityModel& model, const ActionQuery& q) {
    const auto co_actions = find_co_actions(model, q);
    std::vector<CoActionClass> out;
    out.push_back({model.slice(q.entity, q.t + 1), true, {}});
    std::map<Stp, std::vector<CoAction>> others;
    for (const auto& c : co_actions) others[model.slice(c.entity, q.t + 1)].push_back(c);
    for (auto& [slice, members] : others) out.push_back({slice, false, std::move(members)});
    return out;
}

std::vector<ActionRow> action_report(const EntityModel& model, std::size_t entity, std::size_t trajectory,
                                     int history) {
    std::vector<ActionRow> rows;
    for (int t = 0; t + 1 <= model.chain().t_max(); ++t) {
        if (model.slice(entity, t).empty() || model.slice(entity, t + 1).empty()) continue;
        if (t - history < 0) continue;
        const auto classes = co_action_sets(model, {entity, trajectory, t, history});
        ActionRow row{t, classes.size() > 1, classes.size(), false, false, std::log2(static_cast<double>(classes.size()))};
        for (const auto& c : classes)
            for (const auto& m : c.members) (m.kind == ActionKind::Value ? row.has_value : row.has_extent) = true;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace agency
