#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agency/rational.hpp"

namespace agency {

/// Index of a symbol within a variable's alphabet (declaration order).
using Symbol = std::uint16_t;

/// A node (j, t) of the time-unrolled chain. `j` is the position of the
/// spatial label in the chain's declared label list. Ordered by (t, j).
struct VarIndex {
    int j = 0;
    int t = 0;

    friend bool operator==(const VarIndex&, const VarIndex&) = default;
    friend std::strong_ordering operator<=>(const VarIndex& a, const VarIndex& b) {
        if (auto c = a.t <=> b.t; c != 0) return c;
        return a.j <=> b.j;
    }
};

/// Conditional table p(x_v | x_pa(v)). Parents are kept in canonical order;
/// row r (mixed radix over parent symbols, last parent fastest) occupies
/// table[r * alphabet_size .. (r+1) * alphabet_size).
struct Mechanism {
    std::vector<VarIndex> parents;
    std::vector<Rational> table;
};

/// Finite multivariate Markov chain unrolled over timesteps 0..t_max.
///
/// Every (j, t) carries its own alphabet and mechanism. A freshly constructed
/// chain has empty mechanisms; callers fill them with set_mechanism. Structural
/// rules (parents in the previous slice, normalized rows) are checked by
/// validate_chain rather than on mutation, so malformed chains can still be
/// loaded and diagnosed.
class MarkovChain {
public:
    MarkovChain() = default;
    MarkovChain(std::vector<std::string> spatial, int t_max, std::vector<std::string> default_alphabet);

    const std::vector<std::string>& spatial() const { return spatial_; }
    int t_max() const { return t_max_; }
    int num_spatial() const { return static_cast<int>(spatial_.size()); }
    int num_timesteps() const { return t_max_ + 1; }
    std::size_t num_vars() const { return alphabets_.size(); }

    std::size_t flat(VarIndex v) const { return static_cast<std::size_t>(v.t) * spatial_.size() + v.j; }
    VarIndex var_at(std::size_t flat_index) const {
        const auto n = spatial_.size();
        return {static_cast<int>(flat_index % n), static_cast<int>(flat_index / n)};
    }
    bool contains(VarIndex v) const { return v.j >= 0 && v.j < num_spatial() && v.t >= 0 && v.t <= t_max_; }

    /// "label@t"
    std::string label(VarIndex v) const;
    std::optional<int> find_spatial(std::string_view label) const;
    /// Parses "label@t"; nullopt when malformed or out of range.
    std::optional<VarIndex> parse_var(std::string_view text) const;

    const std::vector<std::string>& alphabet(VarIndex v) const { return alphabets_[flat(v)]; }
    std::size_t alphabet_size(VarIndex v) const { return alphabets_[flat(v)].size(); }
    std::optional<Symbol> find_symbol(VarIndex v, std::string_view label) const;
    void set_alphabet(VarIndex v, std::vector<std::string> labels);

    const Mechanism& mechanism(VarIndex v) const { return mechanisms_[flat(v)]; }
    /// Parents must be strictly increasing; `table` must have one row per
    /// parent assignment. Throws std::invalid_argument otherwise.
    void set_mechanism(VarIndex v, std::vector<VarIndex> parents, std::vector<Rational> table);
    /// Builds the table row by row from `row(parent_values)`.
    void set_mechanism(VarIndex v, std::vector<VarIndex> parents,
                       const std::function<std::vector<Rational>(std::span<const Symbol>)>& row);

    std::size_t num_rows(VarIndex v) const;
    /// Row index of the parent assignment read from a full value vector.
    std::size_t row_index(VarIndex v, std::span<const Symbol> values) const;
    /// Row index from parent symbols listed in canonical parent order.
    std::size_t row_index_of(VarIndex v, std::span<const Symbol> parent_values) const;
    /// Inverse of row_index_of.
    std::vector<Symbol> row_parent_values(VarIndex v, std::size_t row) const;
    const Rational& entry(VarIndex v, std::size_t row, Symbol x) const {
        return mechanisms_[flat(v)].table[row * alphabet_size(v) + x];
    }
    /// p(x_v = x | parents as found in the full value vector `values`).
    const Rational& prob(VarIndex v, Symbol x, std::span<const Symbol> values) const {
        return entry(v, row_index(v, values), x);
    }

    /// Canonical order of all variables (flat order).
    std::vector<VarIndex> variables() const;

private:
    std::vector<std::string> spatial_;
    int t_max_ = 0;
    std::vector<std::vector<std::string>> alphabets_;
    std::vector<Mechanism> mechanisms_;
};

enum class ViolationKind { ParentLayer, Normalization, EntryRange, TableShape, EmptyAlphabet };

struct Violation {
    ViolationKind kind;
    VarIndex var;
    std::string message;
};

std::string_view to_string(ViolationKind kind);

struct ValidationReport {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
};

/// Lists every violated structural invariant, in canonical variable order.
ValidationReport validate_chain(const MarkovChain& chain);

/// Throws DomainError(InvalidChain) carrying the report when invalid.
void require_valid(const MarkovChain& chain);

/// Table helper: deterministic row putting all mass on `x` over `size` symbols.
std::vector<Rational> deterministic_row(std::size_t size, Symbol x);
std::vector<Rational> uniform_row(std::size_t size);

}  // namespace agency
