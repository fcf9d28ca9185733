#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "agency/entity_set.hpp"
#include "agency/partition.hpp"

namespace agency {

/// Entities with non-empty slices at t and t+1 whose prefix up to t equals the
/// anchor's (anchor included). Throws DomainError(AnchorSliceMissing).
std::vector<std::size_t> co_perception_entities(const EntityModel& model, std::size_t anchor, int t);

/// Full assignments of the time-t variables outside the anchor's slice that
/// co-occur with positive probability with at least one co-perception entity,
/// in canonical order. Throws DomainError(EmptyEnvironmentSet) if none do.
std::vector<Stp> co_perception_environments(const EntityModel& model, std::size_t anchor, int t);

struct BranchingPartition {
    std::vector<std::size_t> co_entities;  // carrier, in entity order
    Partition partition;                   // over positions in co_entities
    std::vector<Stp> branch_windows;       // shared slices t+1..t+r per block
    std::size_t anchor_block = 0;
};

/// Classes of co-perception entities with equal slices over t+1..t+r.
/// Throws DomainError(HorizonExceedsChain) when t + r > t_max or r < 1.
BranchingPartition branching_partition(const EntityModel& model, std::size_t anchor, int t, int r = 1);

/// Exact conditional distribution over branches for one environment.
struct BranchMorph {
    Stp environment;
    std::vector<Rational> block_mass;  // p(b | env, prefix) before normalization
    Rational total;                    // sum over blocks; positive
    std::vector<Rational> distribution;
};

struct ExclusivityWitness {
    std::size_t first;  // entity indices
    std::size_t second;
    Stp environment;
    std::size_t trajectory;
};

/// Pairwise zero joint probability of distinct co-perception entities under
/// each co-perception environment. nullopt means mutually exclusive.
std::optional<ExclusivityWitness> mutual_exclusivity_check(const EntityModel& model, std::size_t anchor, int t);

/// Perception machinery over a fixed entity model. Construction decides
/// non-interpenetration once; the morph-based operations refuse to run on
/// interpenetrating sets.
class PerceptionEngine {
public:
    explicit PerceptionEngine(const EntityModel& model);

    const EntityModel& model() const { return *model_; }
    const std::optional<InterpenetrationWitness>& interpenetration() const { return witness_; }

    /// Throws DomainError(InterpenetratingEntitySet) carrying the witness.
    void require_non_interpenetrating() const;

    /// Throws InterpenetratingEntitySet, EnvironmentNotCoPerception or
    /// ConditionHasZeroProbability.
    BranchMorph branch_morph(std::size_t anchor, int t, const Stp& environment, int r = 1) const;
    BranchMorph branch_morph(const BranchingPartition& branching, std::size_t anchor, int t,
                             const Stp& environment) const;

private:
    const EntityModel* model_;
    std::optional<InterpenetrationWitness> witness_;
};

struct PerceptionResult {
    std::vector<std::size_t> co_entities;
    std::vector<Stp> environments;
    BranchingPartition branching;
    std::vector<BranchMorph> morphs;  // one per environment
    Partition perceptions;            // over environments
};

/// Environments grouped by identical branch-morphs; each block is one perception.
PerceptionResult perception_partition(const PerceptionEngine& engine, std::size_t anchor, int t, int r = 1);

}  // namespace agency
