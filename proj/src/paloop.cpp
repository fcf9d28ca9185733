#include "agency/paloop.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "agency/errors.hpp"

namespace agency {

PaLoop PaLoop::from_chain(MarkovChain chain) {
    const auto m = chain.find_spatial("M");
    const auto e = chain.find_spatial("E");
    if (chain.num_spatial() != 2 || !m || !e)
        throw DomainError(ErrorKind::NotAPaLoop, "a PA-loop has exactly the spatial labels M and E");
    require_valid(chain);
    for (int t = 1; t <= chain.t_max(); ++t) {
        std::vector<VarIndex> full{{*m, t - 1}, {*e, t - 1}};
        std::sort(full.begin(), full.end());
        for (const VarIndex v : {VarIndex{*m, t}, VarIndex{*e, t}})
            if (chain.mechanism(v).parents != full)
                throw DomainError(ErrorKind::NotAPaLoop, chain.label(v) + " must have parents {M@" +
                                                             std::to_string(t - 1) + ", E@" +
                                                             std::to_string(t - 1) + "}");
    }
    return PaLoop(std::move(chain), *m, *e);
}

std::size_t PaLoop::row(VarIndex child, Symbol m, Symbol e) const {
    // Parents are sorted by spatial position.
    const std::vector<Symbol> values = memory_ < environment_ ? std::vector<Symbol>{m, e} : std::vector<Symbol>{e, m};
    return chain_.row_index_of(child, values);
}

const Rational& PaLoop::memory_transition(int t, Symbol m, Symbol e, Symbol next) const {
    const auto child = memory(t + 1);
    return chain_.entry(child, row(child, m, e), next);
}

const Rational& PaLoop::environment_transition(int t, Symbol m, Symbol e, Symbol next) const {
    const auto child = environment(t + 1);
    return chain_.entry(child, row(child, m, e), next);
}

EntitySet build_paloop_entity_set(const PaLoop& pa) {
    return build_process_entity_set(pa.chain(), pa.memory(0).j, Provenance::PaLoop);
}

namespace {

void require_step(const PaLoop& pa, int t) {
    if (t < 0 || t + 1 > pa.t_max())
        throw DomainError(ErrorKind::PreconditionViolated,
                          "t=" + std::to_string(t) + " needs t+1 <= t_max=" + std::to_string(pa.t_max()));
}

std::vector<std::string> labels(const MarkovChain& chain, VarIndex v) { return chain.alphabet(v); }

}  // namespace

Partition extract_sensor_partition(const PaLoop& pa, int t) {
    require_step(pa, t);
    std::vector<std::vector<Rational>> keys;
    for (Symbol e = 0; e < pa.environment_size(t); ++e) {
        std::vector<Rational> key;
        for (Symbol m = 0; m < pa.memory_size(t); ++m)
            for (Symbol next = 0; next < pa.memory_size(t + 1); ++next)
                key.push_back(pa.memory_transition(t, m, e, next));
        keys.push_back(std::move(key));
    }
    return Partition::from_keys(labels(pa.chain(), pa.environment(t)), keys);
}

Partition extract_action_partition(const PaLoop& pa, int t) {
    require_step(pa, t);
    std::vector<std::vector<Rational>> keys;
    for (Symbol m = 0; m < pa.memory_size(t); ++m) {
        std::vector<Rational> key;
        for (Symbol e = 0; e < pa.environment_size(t); ++e)
            for (Symbol next = 0; next < pa.environment_size(t + 1); ++next)
                key.push_back(pa.environment_transition(t, m, e, next));
        keys.push_back(std::move(key));
    }
    return Partition::from_keys(labels(pa.chain(), pa.memory(t)), keys);
}

ExtendedPaLoop extend_paloop(const PaLoop& pa) {
    using X = ExtendedPaLoop;
    const int steps = pa.t_max();
    const auto& src = pa.chain();
    ExtendedPaLoop ext;
    ext.original_t_max = steps;
    ext.chain = MarkovChain({"M", "A", "S", "E"}, 2 * steps, {"-"});
    auto& chain = ext.chain;

    auto block_labels = [](const Partition& p, char prefix) {
        std::vector<std::string> out;
        for (std::size_t b = 0; b < p.num_blocks(); ++b) out.push_back(std::string(1, prefix) + std::to_string(b));
        return out;
    };
    auto identity = [](std::size_t size) {
        return [size](std::span<const Symbol> pa_values) { return deterministic_row(size, pa_values[0]); };
    };

    // Alphabets.
    for (int t = 0; t <= steps; ++t) {
        chain.set_alphabet(X::memory(t), src.alphabet(pa.memory(t)));
        chain.set_alphabet(X::environment(t), src.alphabet(pa.environment(t)));
    }
    for (int t = 0; t < steps; ++t) {
        ext.sensor.push_back(extract_sensor_partition(pa, t));
        ext.action.push_back(extract_action_partition(pa, t));
        chain.set_alphabet({X::kMemory, 2 * t + 1}, src.alphabet(pa.memory(t)));
        chain.set_alphabet({X::kEnvironment, 2 * t + 1}, src.alphabet(pa.environment(t)));
        chain.set_alphabet(X::sensor_var(t), block_labels(ext.sensor.back(), 's'));
        chain.set_alphabet(X::action_var(t), block_labels(ext.action.back(), 'a'));
    }

    // Placeholders on every S/A cell that is not a live sensor/action node.
    for (int slice = 0; slice <= 2 * steps; ++slice) {
        for (const int j : {X::kAction, X::kSensor}) {
            if (slice % 2 == 1) continue;
            chain.set_mechanism({j, slice}, {}, deterministic_row(1, 0));
        }
    }

    // Initial distribution copied from the PA-loop.
    chain.set_mechanism(X::memory(0), {}, src.mechanism(pa.memory(0)).table);
    chain.set_mechanism(X::environment(0), {}, src.mechanism(pa.environment(0)).table);

    for (int t = 0; t < steps; ++t) {
        const auto& sensor = ext.sensor[static_cast<std::size_t>(t)];
        const auto& action = ext.action[static_cast<std::size_t>(t)];
        const int mid = 2 * t + 1;
        const VarIndex m_relay{X::kMemory, mid};
        const VarIndex e_relay{X::kEnvironment, mid};
        chain.set_mechanism(m_relay, {X::memory(t)}, identity(pa.memory_size(t)));
        chain.set_mechanism(e_relay, {X::environment(t)}, identity(pa.environment_size(t)));
        chain.set_mechanism(X::sensor_var(t), {X::environment(t)}, [&](std::span<const Symbol> v) {
            return deterministic_row(sensor.num_blocks(), static_cast<Symbol>(sensor.block_of(v[0])));
        });
        chain.set_mechanism(X::action_var(t), {X::memory(t)}, [&](std::span<const Symbol> v) {
            return deterministic_row(action.num_blocks(), static_cast<Symbol>(action.block_of(v[0])));
        });
        // M_{t+1}: parents (relay M_t, S_t); any environment state of the block gives the same row.
        chain.set_mechanism(X::memory(t + 1), {m_relay, X::sensor_var(t)}, [&](std::span<const Symbol> v) {
            const auto e = static_cast<Symbol>(sensor.blocks()[v[1]].front());
            std::vector<Rational> row;
            for (Symbol next = 0; next < pa.memory_size(t + 1); ++next)
                row.push_back(pa.memory_transition(t, v[0], e, next));
            return row;
        });
        // E_{t+1}: parents (A_t, relay E_t).
        chain.set_mechanism(X::environment(t + 1), {X::action_var(t), e_relay}, [&](std::span<const Symbol> v) {
            const auto m = static_cast<Symbol>(action.blocks()[v[0]].front());
            std::vector<Rational> row;
            for (Symbol next = 0; next < pa.environment_size(t + 1); ++next)
                row.push_back(pa.environment_transition(t, m, v[1], next));
            return row;
        });
    }
    return ext;
}

InvarianceResult verify_invariant_extension(const PaLoop& pa, const ExtendedPaLoop& ext, std::size_t cap) {
    const auto& src = pa.chain();
    if (ext.original_t_max != pa.t_max() || ext.chain.t_max() != 2 * pa.t_max() || ext.chain.num_spatial() != 4)
        throw DomainError(ErrorKind::PreconditionViolated, "extended loop does not match the PA-loop's shape");

    const auto original = enumerate_support(src, cap);
    const auto extended = enumerate_support(ext.chain, cap);

    std::map<std::vector<Symbol>, Rational> marginal;
    for (const auto& tr : extended.trajectories()) {
        std::vector<Symbol> key(src.num_vars());
        for (int t = 0; t <= pa.t_max(); ++t) {
            key[src.flat(pa.memory(t))] = tr.values[ext.chain.flat(ExtendedPaLoop::memory(t))];
            key[src.flat(pa.environment(t))] = tr.values[ext.chain.flat(ExtendedPaLoop::environment(t))];
        }
        marginal[key] += tr.probability;
    }

    InvarianceResult result;
    auto note = [&](const Rational& a, const Rational& b) {
        if (a == b) return;
        ++result.mismatches;
        result.max_discrepancy = std::max(result.max_discrepancy, abs(a - b));
    };
    for (const auto& tr : original.trajectories()) {
        auto it = marginal.find(tr.values);
        note(tr.probability, it == marginal.end() ? Rational::zero() : it->second);
    }
    for (const auto& [key, p] : marginal)
        if (!original.find(key)) note(Rational::zero(), p);
    result.equal = result.mismatches == 0;
    return result;
}

PaLoopAnalysis::PaLoopAnalysis(PaLoop pa, std::size_t cap)
    : pa_(std::move(pa)), support_(enumerate_support(pa_.chain(), cap)), entities_(build_paloop_entity_set(pa_)) {
    model_ = std::make_unique<EntityModel>(support_, entities_);
    engine_ = std::make_unique<PerceptionEngine>(*model_);
}

std::size_t PaLoopAnalysis::memory_entity_of_path(std::span<const Symbol> path) const {
    std::size_t index = 0;
    for (int t = 0; t <= pa_.t_max(); ++t) index = index * pa_.memory_size(t) + path[static_cast<std::size_t>(t)];
    return index;
}

std::size_t PaLoopAnalysis::memory_entity(std::span<const Symbol> values) const {
    std::vector<Symbol> path;
    for (int t = 0; t <= pa_.t_max(); ++t) path.push_back(values[pa_.chain().flat(pa_.memory(t))]);
    return memory_entity_of_path(path);
}

namespace {

/// Joint table p(E_t = e, M_{t+1} = m') from the support.
std::vector<std::vector<Rational>> env_next_memory_joint(const PaLoop& pa, const Support& support, int t) {
    std::vector<std::vector<Rational>> joint(pa.environment_size(t), std::vector<Rational>(pa.memory_size(t + 1)));
    const auto ei = pa.chain().flat(pa.environment(t));
    const auto mi = pa.chain().flat(pa.memory(t + 1));
    for (const auto& tr : support.trajectories()) joint[tr.values[ei]][tr.values[mi]] += tr.probability;
    return joint;
}

}  // namespace

EntropyResult conditional_entropy_next_memory(const PaLoopAnalysis& analysis, int t) {
    const auto& pa = analysis.loop();
    require_step(pa, t);
    const auto joint = env_next_memory_joint(pa, analysis.support(), t);
    EntropyResult result;
    for (const auto& row : joint) {
        Rational pe;
        std::size_t reachable = 0;
        for (const auto& p : row) {
            pe += p;
            if (p.is_positive()) ++reachable;
        }
        if (pe.is_zero()) continue;
        if (reachable >= 2) result.positive = true;
        for (const auto& p : row) {
            if (!p.is_positive()) continue;
            result.bits -= p.to_double() * std::log2((p / pe).to_double());
        }
    }
    if (!result.positive) result.bits = 0.0;
    return result;
}

EntropyResult conditional_entropy_next_memory(const PaLoop& pa, int t) {
    return conditional_entropy_next_memory(PaLoopAnalysis(pa), t);
}

ActionEntropyEquivalence verify_action_entropy_equivalence(const PaLoopAnalysis& analysis, int t) {
    const auto entropy = conditional_entropy_next_memory(analysis, t);
    ActionEntropyEquivalence out;
    out.entropy_positive = entropy.positive;
    out.bits = entropy.bits;
    const auto& support = analysis.support();
    for (std::size_t tr = 0; tr < support.size(); ++tr) {
        const auto entity = analysis.memory_entity(support[tr].values);
        if (has_co_action(analysis.model(), {entity, tr, t, 0})) {
            out.action_exists = true;
            out.witness_trajectory = tr;
            break;
        }
    }
    out.holds = out.action_exists == out.entropy_positive;
    return out;
}

std::size_t max_co_action_classes(const PaLoopAnalysis& analysis, int t) {
    std::size_t n = 1;
    const auto& support = analysis.support();
    for (std::size_t tr = 0; tr < support.size(); ++tr) {
        const auto entity = analysis.memory_entity(support[tr].values);
        n = std::max(n, co_action_sets(analysis.model(), {entity, tr, t, 0}).size());
    }
    return n;
}

PerceptionSpecialization verify_perception_specialization(const PaLoopAnalysis& analysis, std::size_t anchor, int t) {
    const auto& pa = analysis.loop();
    const auto& model = analysis.model();
    require_step(pa, t);
    if (anchor >= model.entities().size())
        throw DomainError(ErrorKind::UnknownEntity, "anchor index out of range");
    if (stp_probability(analysis.support(), model.pattern(anchor).prefix(t)).is_zero())
        throw DomainError(ErrorKind::PreconditionViolated,
                          "anchor '" + model.id(anchor) + "' has a zero-probability prefix at t=" + std::to_string(t));

    PerceptionSpecialization out;
    out.perception = perception_partition(analysis.perception(), anchor, t, 1);
    const auto env_var = pa.environment(t);
    const auto anchor_m = *model.pattern(anchor).value_of(pa.memory(t));

    std::vector<std::size_t> env_elements;
    for (const auto& env : out.perception.environments) {
        const auto e = *env.value_of(env_var);
        out.environment_symbols.push_back(e);
        env_elements.push_back(e);
    }
    for (const auto& window : out.perception.branching.branch_windows)
        out.branch_symbols.push_back(*window.value_of(pa.memory(t + 1)));

    out.sensor = extract_sensor_partition(pa, t);
    out.sensor_restricted = out.sensor.restrict_to(env_elements);
    out.holds = out.perception.perceptions == out.sensor_restricted;

    std::vector<std::vector<Rational>> anchor_rows;
    std::vector<std::string> names;
    for (const auto e : out.environment_symbols) {
        std::vector<Rational> row;
        for (Symbol next = 0; next < pa.memory_size(t + 1); ++next)
            row.push_back(pa.memory_transition(t, anchor_m, e, next));
        anchor_rows.push_back(std::move(row));
        names.push_back(pa.chain().alphabet(env_var)[e]);
    }
    out.anchor_conditioned = Partition::from_keys(std::move(names), anchor_rows);
    out.anchor_conditioned_holds = out.perception.perceptions == out.anchor_conditioned;

    out.morph_matches_mechanism = true;
    for (std::size_t i = 0; i < out.perception.morphs.size(); ++i) {
        const auto& morph = out.perception.morphs[i];
        for (std::size_t b = 0; b < morph.distribution.size(); ++b)
            if (morph.distribution[b] != anchor_rows[i][out.branch_symbols[b]]) out.morph_matches_mechanism = false;
    }
    return out;
}

}  // namespace agency
