#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agency/errors.hpp"
#include "agency/stp.hpp"
#include "agency/support.hpp"

namespace agency {

struct Entity {
    std::string id;
    Stp pattern;
};

enum class Provenance { Explicit, AllStps, PaLoop };
std::string_view to_string(Provenance p);

/// A chosen collection of STPs regarded as the entities of a chain.
class EntitySet {
public:
    EntitySet() = default;
    /// Throws std::invalid_argument on duplicate ids or duplicate patterns.
    EntitySet(std::vector<Entity> entities, Provenance provenance);

    const std::vector<Entity>& entities() const { return entities_; }
    const Entity& operator[](std::size_t i) const { return entities_[i]; }
    std::size_t size() const { return entities_.size(); }
    bool empty() const { return entities_.empty(); }
    Provenance provenance() const { return provenance_; }

    std::optional<std::size_t> index_of(std::string_view id) const;
    std::optional<std::size_t> index_of(const Stp& pattern) const;
    /// Like index_of but throws DomainError(UnknownEntity).
    std::size_t require(std::string_view id) const;

private:
    std::vector<Entity> entities_;
    Provenance provenance_ = Provenance::Explicit;
};

inline constexpr std::size_t kDefaultEntityCap = 1'000'000;

/// Number of non-empty STPs with domain size <= max_domain_size.
double count_stps(const MarkovChain& chain, int max_domain_size);

/// Every non-empty STP of domain size <= max_domain_size in canonical order,
/// with ids "e0", "e1", ... Throws DomainError(EntityCapExceeded).
EntitySet build_all_stps(const MarkovChain& chain, int max_domain_size, std::size_t cap = kDefaultEntityCap);

/// Every full time-evolution of spatial index `j`, including evolutions of
/// probability zero. Ids are "<label>:<v0>,<v1>,...". Ordered with the
/// earliest timestep varying slowest.
EntitySet build_process_entity_set(const MarkovChain& chain, int j, Provenance provenance = Provenance::Explicit);

/// Read-only occurrence index of an entity-set over a chain's support.
/// Holds references: `support` and `entities` must outlive the model.
class EntityModel {
public:
    /// Throws DomainError(QueryInvariantViolated) if a pattern leaves the chain.
    EntityModel(const Support& support, const EntitySet& entities);

    const Support& support() const { return *support_; }
    const MarkovChain& chain() const { return support_->chain(); }
    const EntitySet& entities() const { return *entities_; }
    const Stp& pattern(std::size_t e) const { return (*entities_)[e].pattern; }
    const std::string& id(std::size_t e) const { return (*entities_)[e].id; }

    /// Support trajectories (ascending) in which entity `e` occurs.
    const std::vector<std::size_t>& occurrences(std::size_t e) const { return occurrences_[e]; }
    /// Entities (ascending) occurring in trajectory `tr`.
    const std::vector<std::size_t>& present(std::size_t tr) const { return present_[tr]; }
    /// Cached time slice of entity `e` at t (empty outside 0..t_max).
    const Stp& slice(std::size_t e, int t) const;

    Rational probability(std::size_t e) const;
    /// First support trajectory where both entities occur.
    std::optional<std::size_t> first_joint_occurrence(std::size_t a, std::size_t b) const;

private:
    const Support* support_;
    const EntitySet* entities_;
    std::vector<std::vector<std::size_t>> occurrences_;
    std::vector<std::vector<std::size_t>> present_;
    std::vector<std::vector<Stp>> slices_;
    Stp empty_;
};

/// A pair of entities with equal prefixes up to t and different suffixes that
/// still co-occur in a positive-probability trajectory.
struct InterpenetrationWitness {
    std::size_t first;   // entity index, first < second
    std::size_t second;
    int t;
    std::size_t trajectory;
};

/// Witness for one unordered pair, smallest t and trajectory; nullopt when the
/// pair respects non-interpenetration.
std::optional<InterpenetrationWitness> interpenetration_witness(const EntityModel& model, std::size_t y, std::size_t z);

/// nullopt iff the entity-set is non-interpenetrating; otherwise the first
/// witness in (pair, t, trajectory) order.
std::optional<InterpenetrationWitness> check_non_interpenetration(const EntityModel& model);

/// {"first": id, "second": id, "first_pattern", "second_pattern", "t", "trajectory", "trajectory_index"}
Json to_json(const EntityModel& model, const InterpenetrationWitness& w);

}  // namespace agency
