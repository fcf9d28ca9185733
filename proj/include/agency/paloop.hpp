#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "agency/actions.hpp"
#include "agency/chain.hpp"
#include "agency/entity_set.hpp"
#include "agency/partition.hpp"
#include "agency/perceptions.hpp"
#include "agency/support.hpp"

namespace agency {

/// Two-process chain over spatial labels "M" (agent memory) and "E"
/// (environment), each node at t >= 1 having both previous nodes as parents.
class PaLoop {
public:
    /// Throws DomainError(NotAPaLoop) when the labels or wiring do not match,
    /// DomainError(InvalidChain) when the chain is invalid.
    static PaLoop from_chain(MarkovChain chain);

    const MarkovChain& chain() const { return chain_; }
    int t_max() const { return chain_.t_max(); }
    VarIndex memory(int t) const { return {memory_, t}; }
    VarIndex environment(int t) const { return {environment_, t}; }
    std::size_t memory_size(int t) const { return chain_.alphabet_size(memory(t)); }
    std::size_t environment_size(int t) const { return chain_.alphabet_size(environment(t)); }

    /// p(M_{t+1} = next | M_t = m, E_t = e), 0 <= t < t_max.
    const Rational& memory_transition(int t, Symbol m, Symbol e, Symbol next) const;
    /// p(E_{t+1} = next | M_t = m, E_t = e).
    const Rational& environment_transition(int t, Symbol m, Symbol e, Symbol next) const;

private:
    PaLoop(MarkovChain chain, int memory, int environment)
        : chain_(std::move(chain)), memory_(memory), environment_(environment) {}
    std::size_t row(VarIndex child, Symbol m, Symbol e) const;

    MarkovChain chain_;
    int memory_ = 0;
    int environment_ = 1;
};

/// One entity per full memory evolution (the whole product set).
EntitySet build_paloop_entity_set(const PaLoop& pa);

/// Environment states grouped by identical memory-transition rows over all
/// memory states. Requires t + 1 <= t_max (DomainError(PreconditionViolated)).
Partition extract_sensor_partition(const PaLoop& pa, int t);
/// Memory states grouped by identical environment-transition rows.
Partition extract_action_partition(const PaLoop& pa, int t);

/// The PA-loop with explicit sensor and action processes.
///
/// Encoded as a layered chain over slices 0..2*T: memory and environment of
/// step t live at slice 2t; sensor S_t and action A_t live at slice 2t+1 next
/// to deterministic relay copies of M_t and E_t. M_{t+1} reads (relay M_t, S_t)
/// and E_{t+1} reads (A_t, relay E_t). S and A cells at even slices hold the
/// single placeholder symbol "-".
struct ExtendedPaLoop {
    static constexpr int kMemory = 0;
    static constexpr int kAction = 1;
    static constexpr int kSensor = 2;
    static constexpr int kEnvironment = 3;

    MarkovChain chain;
    int original_t_max = 0;
    std::vector<Partition> sensor;  // per t < original_t_max
    std::vector<Partition> action;

    static VarIndex memory(int t) { return {kMemory, 2 * t}; }
    static VarIndex environment(int t) { return {kEnvironment, 2 * t}; }
    static VarIndex sensor_var(int t) { return {kSensor, 2 * t + 1}; }
    static VarIndex action_var(int t) { return {kAction, 2 * t + 1}; }
};

ExtendedPaLoop extend_paloop(const PaLoop& pa);

struct InvarianceResult {
    bool equal = false;
    Rational max_discrepancy;
    std::size_t mismatches = 0;  // joint (M, E) assignments that differ
};

/// Compares p over all (M, E) trajectories with the extended chain's marginal.
InvarianceResult verify_invariant_extension(const PaLoop& pa, const ExtendedPaLoop& ext,
                                            std::size_t cap = kDefaultSupportCap);

struct EntropyResult {
    double bits = 0.0;
    bool positive = false;  // decided on exact probabilities
};

/// Owns everything derived from one PA-loop: support, the memory-evolution
/// entity-set, its occurrence index and perception engine. Not movable.
class PaLoopAnalysis {
public:
    explicit PaLoopAnalysis(PaLoop pa, std::size_t cap = kDefaultSupportCap);
    PaLoopAnalysis(const PaLoopAnalysis&) = delete;
    PaLoopAnalysis& operator=(const PaLoopAnalysis&) = delete;

    const PaLoop& loop() const { return pa_; }
    const Support& support() const { return support_; }
    const EntitySet& entities() const { return entities_; }
    const EntityModel& model() const { return *model_; }
    const PerceptionEngine& perception() const { return *engine_; }

    /// Entity index of the memory evolution in a full value vector.
    std::size_t memory_entity(std::span<const Symbol> values) const;
    /// Entity index of an explicit memory path m_0..m_T.
    std::size_t memory_entity_of_path(std::span<const Symbol> path) const;

private:
    PaLoop pa_;
    Support support_;
    EntitySet entities_;
    std::unique_ptr<EntityModel> model_;
    std::unique_ptr<PerceptionEngine> engine_;
};

/// H(M_{t+1} | E_t) in bits.
EntropyResult conditional_entropy_next_memory(const PaLoopAnalysis& analysis, int t);
EntropyResult conditional_entropy_next_memory(const PaLoop& pa, int t);

struct ActionEntropyEquivalence {
    bool holds = false;
    bool action_exists = false;
    bool entropy_positive = false;
    double bits = 0.0;
    std::optional<std::size_t> witness_trajectory;  // a trajectory whose memory entity acts
};

/// Runs the action detector for the memory entity of every support trajectory
/// at t and compares "some entity acts" with the exact positivity of
/// H(M_{t+1} | E_t).
ActionEntropyEquivalence verify_action_entropy_equivalence(const PaLoopAnalysis& analysis, int t);

/// Largest number of distinct next-slice classes over support trajectories at t.
std::size_t max_co_action_classes(const PaLoopAnalysis& analysis, int t);

struct PerceptionSpecialization {
    bool holds = false;  // perception partition == sensor partition restricted
    PerceptionResult perception;
    std::vector<Symbol> environment_symbols;  // E_t value of each co-perception environment
    std::vector<Symbol> branch_symbols;       // M_{t+1} value labelling each branch
    Partition sensor;                         // full sensor partition at t
    Partition sensor_restricted;              // restricted to co-perception environments
    /// Environments grouped by the memory-transition row of the anchor's own
    /// m_t only; the relation obtained by fixing m_t.
    Partition anchor_conditioned;
    bool anchor_conditioned_holds = false;
    /// Every branch-morph entry equals p(m_{t+1} | e_t, m_t).
    bool morph_matches_mechanism = false;
};

/// Builds the perception partition of `anchor` (a memory-evolution entity) at t
/// through the general perception engine and compares it with the sensor
/// partition restricted to the co-perception environments. Requires positive
/// probability of the anchor's prefix (DomainError(PreconditionViolated)).
PerceptionSpecialization verify_perception_specialization(const PaLoopAnalysis& analysis, std::size_t anchor, int t);

}  // namespace agency
