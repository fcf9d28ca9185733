#include "agency/perceptions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "agency/errors.hpp"

namespace agency {

namespace {

void require_anchor_slices(const EntityModel& model, std::size_t anchor, int t) {
    if (anchor >= model.entities().size())
        throw DomainError(ErrorKind::UnknownEntity, "anchor index out of range");
    if (t < 0 || t + 1 > model.chain().t_max() || model.slice(anchor, t).empty() ||
        model.slice(anchor, t + 1).empty())
        throw DomainError(ErrorKind::AnchorSliceMissing,
                          "anchor '" + model.id(anchor) + "' needs non-empty slices at t=" + std::to_string(t) +
                              " and t+1");
}

bool matches(const MarkovChain& chain, const Stp& env, std::span<const Symbol> values) {
    return env.occurs_in(chain, values);
}

}  // namespace

std::vector<std::size_t> co_perception_entities(const EntityModel& model, std::size_t anchor, int t) {
    require_anchor_slices(model, anchor, t);
    const auto anchor_prefix = model.pattern(anchor).prefix(t);
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < model.entities().size(); ++e) {
        if (model.slice(e, t).empty() || model.slice(e, t + 1).empty()) continue;
        if (model.pattern(e).prefix(t) == anchor_prefix) out.push_back(e);
    }
    return out;
}

std::vector<Stp> co_perception_environments(const EntityModel& model, std::size_t anchor, int t) {
    const auto co = co_perception_entities(model, anchor, t);
    const auto& chain = model.chain();
    const auto vars = environment_domain(chain, model.pattern(anchor), t);
    std::set<Stp> envs;
    for (const auto e : co)
        for (const auto tr : model.occurrences(e)) envs.insert(restrict_values(chain, model.support()[tr].values, vars));
    if (envs.empty())
        throw DomainError(ErrorKind::EmptyEnvironmentSet,
                          "no co-perception entity of '" + model.id(anchor) + "' has positive probability");
    return {envs.begin(), envs.end()};
}

BranchingPartition branching_partition(const EntityModel& model, std::size_t anchor, int t, int r) {
    if (r < 1 || t + r > model.chain().t_max())
        throw DomainError(ErrorKind::HorizonExceedsChain,
                          "horizon t+r=" + std::to_string(t + r) + " exceeds t_max=" +
                              std::to_string(model.chain().t_max()));
    BranchingPartition out;
    out.co_entities = co_perception_entities(model, anchor, t);
    std::vector<Stp> keys;
    std::vector<std::string> names;
    for (const auto e : out.co_entities) {
        keys.push_back(model.pattern(e).window(t + 1, t + r));
        names.push_back(model.id(e));
    }
    out.partition = Partition::from_keys(std::move(names), keys);
    for (const auto& block : out.partition.blocks()) out.branch_windows.push_back(keys[block.front()]);
    const auto pos = std::find(out.co_entities.begin(), out.co_entities.end(), anchor) - out.co_entities.begin();
    out.anchor_block = out.partition.block_of(static_cast<std::size_t>(pos));
    return out;
}

std::optional<ExclusivityWitness> mutual_exclusivity_check(const EntityModel& model, std::size_t anchor, int t) {
    const auto co = co_perception_entities(model, anchor, t);
    const auto envs = co_perception_environments(model, anchor, t);
    const auto& chain = model.chain();
    const auto prefix = model.pattern(anchor).prefix(t);
    for (std::size_t a = 0; a < co.size(); ++a) {
        for (std::size_t b = a + 1; b < co.size(); ++b) {
            const auto& oa = model.occurrences(co[a]);
            const auto& ob = model.occurrences(co[b]);
            std::vector<std::size_t> joint;
            std::set_intersection(oa.begin(), oa.end(), ob.begin(), ob.end(), std::back_inserter(joint));
            if (joint.empty()) continue;
            for (const auto& env : envs) {
                for (const auto tr : joint) {
                    const auto& values = model.support()[tr].values;
                    if (matches(chain, env, values) && prefix.occurs_in(chain, values))
                        return ExclusivityWitness{co[a], co[b], env, tr};
                }
            }
        }
    }
    return std::nullopt;
}

PerceptionEngine::PerceptionEngine(const EntityModel& model)
    : model_(&model), witness_(check_non_interpenetration(model)) {}

void PerceptionEngine::require_non_interpenetrating() const {
    if (!witness_) return;
    throw DomainError(ErrorKind::InterpenetratingEntitySet,
                      "entity-set is interpenetrating: '" + model_->id(witness_->first) + "' and '" +
                          model_->id(witness_->second) + "' share a prefix up to t=" + std::to_string(witness_->t) +
                          " and co-occur",
                      Json{{"witness", to_json(*model_, *witness_)}});
}

BranchMorph PerceptionEngine::branch_morph(std::size_t anchor, int t, const Stp& environment, int r) const {
    require_non_interpenetrating();
    return branch_morph(branching_partition(*model_, anchor, t, r), anchor, t, environment);
}

BranchMorph PerceptionEngine::branch_morph(const BranchingPartition& branching, std::size_t anchor, int t,
                                           const Stp& environment) const {
    require_non_interpenetrating();
    const auto& model = *model_;
    const auto& chain = model.chain();
    const auto envs = co_perception_environments(model, anchor, t);
    if (!std::binary_search(envs.begin(), envs.end(), environment))
        throw DomainError(ErrorKind::EnvironmentNotCoPerception,
                          "{" + format_stp(chain, environment) + "} is not a co-perception environment");

    const auto condition = environment.merge(model.pattern(anchor).prefix(t));
    const auto cond_prob = condition ? stp_probability(model.support(), *condition) : Rational::zero();
    if (cond_prob.is_zero())
        throw DomainError(ErrorKind::ConditionHasZeroProbability,
                          "environment and anchor prefix have probability 0 jointly");

    BranchMorph morph;
    morph.environment = environment;
    for (const auto& block : branching.partition.blocks()) {
        Rational mass;
        for (const auto pos : block) {
            // prefix(y) equals the anchor prefix, so suffix(y) with the condition is y with the environment.
            Rational joint;
            for (const auto tr : model.occurrences(branching.co_entities[pos]))
                if (environment.occurs_in(chain, model.support()[tr].values)) joint += model.support()[tr].probability;
            mass += joint / cond_prob;
        }
        morph.block_mass.push_back(mass);
        morph.total += mass;
    }
    for (const auto& m : morph.block_mass) morph.distribution.push_back(m / morph.total);
    return morph;
}

PerceptionResult perception_partition(const PerceptionEngine& engine, std::size_t anchor, int t, int r) {
    engine.require_non_interpenetrating();
    const auto& model = engine.model();
    PerceptionResult out;
    out.branching = branching_partition(model, anchor, t, r);
    out.co_entities = out.branching.co_entities;
    out.environments = co_perception_environments(model, anchor, t);
    std::vector<std::vector<Rational>> keys;
    std::vector<std::string> names;
    for (const auto& env : out.environments) {
        out.morphs.push_back(engine.branch_morph(out.branching, anchor, t, env));
        keys.push_back(out.morphs.back().distribution);
        names.push_back(format_stp(model.chain(), env));
    }
    out.perceptions = Partition::from_keys(std::move(names), keys);
    return out;
}

}  // namespace agency
