#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "agency/chain.hpp"
#include "agency/rational.hpp"
#include "agency/stp.hpp"

namespace agency {

inline constexpr std::size_t kDefaultSupportCap = 1'000'000;

/// A full assignment x_V with its (positive) chain-rule probability.
/// `values` is indexed by MarkovChain::flat.
struct Trajectory {
    std::vector<Symbol> values;
    Rational probability;

    Stp stp(const MarkovChain& chain) const;
};

/// The positive-probability trajectories of a valid chain, sorted
/// lexicographically by value vector. Owns a copy of the chain.
class Support {
public:
    Support(MarkovChain chain, std::vector<Trajectory> trajectories)
        : chain_(std::move(chain)), trajectories_(std::move(trajectories)) {}

    const MarkovChain& chain() const { return chain_; }
    const std::vector<Trajectory>& trajectories() const { return trajectories_; }
    const Trajectory& operator[](std::size_t i) const { return trajectories_[i]; }
    std::size_t size() const { return trajectories_.size(); }

    /// Index of the trajectory with exactly these values, if in the support.
    std::optional<std::size_t> find(std::span<const Symbol> values) const;

private:
    MarkovChain chain_;
    std::vector<Trajectory> trajectories_;
};

/// Product over variables of the largest number of positive entries in one
/// mechanism row. An upper bound on the support size.
double support_bound(const MarkovChain& chain);

/// Depth-first enumeration over variables in canonical order, pruning zero
/// mechanism entries. Requires a valid chain (DomainError(InvalidChain)) and
/// support_bound <= cap (DomainError(SupportCapExceeded)).
Support enumerate_support(const MarkovChain& chain, std::size_t cap = kDefaultSupportCap);

/// Probability that `pattern` occurs; 1 for the empty pattern.
Rational stp_probability(const Support& support, const Stp& pattern);

/// P(target | given). Zero when the two patterns conflict. Throws
/// DomainError(ConditionHasZeroProbability) when P(given) = 0.
Rational conditional_probability(const Support& support, const Stp& target, const Stp& given);

}  // namespace agency
