#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agency/chain.hpp"

namespace agency {

struct Assignment {
    VarIndex var;
    Symbol value = 0;

    friend bool operator==(const Assignment&, const Assignment&) = default;
    friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

/// Spatiotemporal pattern: a value assignment on an arbitrary subset of the
/// chain's variables. Assignments are kept sorted by variable, one per variable.
class Stp {
public:
    Stp() = default;
    /// Sorts; throws std::invalid_argument if a variable is assigned twice.
    explicit Stp(std::vector<Assignment> assignments);

    const std::vector<Assignment>& assignments() const { return assignments_; }
    bool empty() const { return assignments_.empty(); }
    std::size_t size() const { return assignments_.size(); }
    auto begin() const { return assignments_.begin(); }
    auto end() const { return assignments_.end(); }

    std::vector<VarIndex> domain() const;
    bool same_domain(const Stp& other) const;
    std::optional<Symbol> value_of(VarIndex v) const;
    bool has_slice(int t) const;
    int min_time() const { return empty() ? -1 : assignments_.front().var.t; }
    int max_time() const { return empty() ? -1 : assignments_.back().var.t; }

    /// Restriction to variables with from <= t <= to.
    Stp window(int from, int to) const;
    Stp slice(int t) const { return window(t, t); }
    Stp prefix(int t) const { return window(0, t); }
    Stp suffix(int t) const;

    /// True when the two patterns assign equal values to their shared variables.
    bool compatible(const Stp& other) const;
    /// Union; nullopt when the patterns disagree on a shared variable.
    std::optional<Stp> merge(const Stp& other) const;

    bool occurs_in(const MarkovChain& chain, std::span<const Symbol> values) const {
        for (const auto& a : assignments_)
            if (values[chain.flat(a.var)] != a.value) return false;
        return true;
    }

    /// Canonical order: domain size, then domain, then values.
    friend std::strong_ordering operator<=>(const Stp& a, const Stp& b);
    friend bool operator==(const Stp& a, const Stp& b) { return a.assignments_ == b.assignments_; }

private:
    std::vector<Assignment> assignments_;
};

/// Time-t values of every variable not occupied by `pattern` at t, read off a
/// full value vector. Throws DomainError(PatternNotInTrajectory) when the
/// pattern does not occur in it.
Stp environment(const MarkovChain& chain, std::span<const Symbol> trajectory, const Stp& pattern, int t);

/// The time-t variables not in `pattern`'s time-t slice.
std::vector<VarIndex> environment_domain(const MarkovChain& chain, const Stp& pattern, int t);

/// Restriction of a full value vector to `vars`.
Stp restrict_values(const MarkovChain& chain, std::span<const Symbol> values, std::span<const VarIndex> vars);

/// "a@0=1,b@0=0"; the empty pattern renders as "".
std::string format_stp(const MarkovChain& chain, const Stp& stp);
/// Inverse of format_stp. Throws ParseError on unknown variables or symbols.
Stp parse_stp(const MarkovChain& chain, std::string_view text);

}  // namespace agency
