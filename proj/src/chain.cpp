#include "agency/chain.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "agency/errors.hpp"

namespace agency {

MarkovChain::MarkovChain(std::vector<std::string> spatial, int t_max, std::vector<std::string> default_alphabet)
    : spatial_(std::move(spatial)), t_max_(t_max) {
    if (spatial_.empty()) throw std::invalid_argument("chain needs at least one spatial label");
    if (t_max_ < 0) throw std::invalid_argument("t_max must be non-negative");
    const auto n = spatial_.size() * static_cast<std::size_t>(t_max_ + 1);
    alphabets_.assign(n, default_alphabet);
    mechanisms_.assign(n, Mechanism{});
}

std::string MarkovChain::label(VarIndex v) const {
    return spatial_.at(static_cast<std::size_t>(v.j)) + "@" + std::to_string(v.t);
}

std::optional<int> MarkovChain::find_spatial(std::string_view label) const {
    for (std::size_t j = 0; j < spatial_.size(); ++j)
        if (spatial_[j] == label) return static_cast<int>(j);
    return std::nullopt;
}

std::optional<VarIndex> MarkovChain::parse_var(std::string_view text) const {
    const auto at = text.rfind('@');
    if (at == std::string_view::npos) return std::nullopt;
    const auto j = find_spatial(text.substr(0, at));
    if (!j) return std::nullopt;
    const auto digits = text.substr(at + 1);
    int t = -1;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) return std::nullopt;
    VarIndex v{*j, t};
    if (!contains(v)) return std::nullopt;
    return v;
}

std::optional<Symbol> MarkovChain::find_symbol(VarIndex v, std::string_view label) const {
    const auto& alph = alphabet(v);
    for (std::size_t i = 0; i < alph.size(); ++i)
        if (alph[i] == label) return static_cast<Symbol>(i);
    return std::nullopt;
}

void MarkovChain::set_alphabet(VarIndex v, std::vector<std::string> labels) {
    if (!contains(v)) throw std::invalid_argument("set_alphabet: variable out of range");
    alphabets_[flat(v)] = std::move(labels);
}

void MarkovChain::set_mechanism(VarIndex v, std::vector<VarIndex> parents, std::vector<Rational> table) {
    if (!contains(v)) throw std::invalid_argument("set_mechanism: variable out of range");
    for (std::size_t i = 0; i < parents.size(); ++i) {
        if (!contains(parents[i])) throw std::invalid_argument("set_mechanism: parent out of range");
        if (i > 0 && !(parents[i - 1] < parents[i]))
            throw std::invalid_argument("set_mechanism: parents must be strictly increasing");
    }
    auto& mech = mechanisms_[flat(v)];
    mech.parents = std::move(parents);
    const auto expected = num_rows(v) * alphabet_size(v);
    if (table.size() != expected)
        throw std::invalid_argument("set_mechanism: table for " + label(v) + " has " +
                                    std::to_string(table.size()) + " entries, expected " +
                                    std::to_string(expected));
    mech.table = std::move(table);
}

void MarkovChain::set_mechanism(VarIndex v, std::vector<VarIndex> parents,
                                const std::function<std::vector<Rational>(std::span<const Symbol>)>& row) {
    if (!contains(v)) throw std::invalid_argument("set_mechanism: variable out of range");
    std::size_t rows = 1;
    for (const auto& p : parents) {
        if (!contains(p)) throw std::invalid_argument("set_mechanism: parent out of range");
        rows *= alphabet_size(p);
    }
    const auto size = alphabet_size(v);
    std::vector<Rational> table;
    table.reserve(rows * size);
    std::vector<Symbol> values(parents.size(), 0);
    for (std::size_t r = 0; r < rows; ++r) {
        auto entries = row(values);
        if (entries.size() != size)
            throw std::invalid_argument("set_mechanism: row for " + label(v) + " has wrong length");
        table.insert(table.end(), entries.begin(), entries.end());
        for (std::size_t i = values.size(); i-- > 0;) {
            if (++values[i] < alphabet_size(parents[i])) break;
            values[i] = 0;
        }
    }
    set_mechanism(v, std::move(parents), std::move(table));
}

std::size_t MarkovChain::num_rows(VarIndex v) const {
    std::size_t rows = 1;
    for (const auto& p : mechanism(v).parents) rows *= alphabet_size(p);
    return rows;
}

std::size_t MarkovChain::row_index(VarIndex v, std::span<const Symbol> values) const {
    std::size_t row = 0;
    for (const auto& p : mechanism(v).parents) row = row * alphabet_size(p) + values[flat(p)];
    return row;
}

std::size_t MarkovChain::row_index_of(VarIndex v, std::span<const Symbol> parent_values) const {
    const auto& parents = mechanism(v).parents;
    std::size_t row = 0;
    for (std::size_t i = 0; i < parents.size(); ++i) row = row * alphabet_size(parents[i]) + parent_values[i];
    return row;
}

std::vector<Symbol> MarkovChain::row_parent_values(VarIndex v, std::size_t row) const {
    const auto& parents = mechanism(v).parents;
    std::vector<Symbol> out(parents.size());
    for (std::size_t i = parents.size(); i-- > 0;) {
        const auto size = alphabet_size(parents[i]);
        out[i] = static_cast<Symbol>(row % size);
        row /= size;
    }
    return out;
}

std::vector<VarIndex> MarkovChain::variables() const {
    std::vector<VarIndex> out;
    out.reserve(num_vars());
    for (std::size_t i = 0; i < num_vars(); ++i) out.push_back(var_at(i));
    return out;
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::ParentLayer: return "parent-layer";
        case ViolationKind::Normalization: return "normalization";
        case ViolationKind::EntryRange: return "entry-range";
        case ViolationKind::TableShape: return "table-shape";
        case ViolationKind::EmptyAlphabet: return "empty-alphabet";
    }
    return "unknown";
}

ValidationReport validate_chain(const MarkovChain& chain) {
    ValidationReport report;
    auto add = [&](ViolationKind kind, VarIndex v, std::string msg) {
        report.violations.push_back({kind, v, std::move(msg)});
    };
    for (const auto v : chain.variables()) {
        const auto& mech = chain.mechanism(v);
        const auto size = chain.alphabet_size(v);
        if (size == 0) {
            add(ViolationKind::EmptyAlphabet, v, chain.label(v) + " has an empty alphabet");
            continue;
        }
        std::string offenders;
        for (const auto& p : mech.parents) {
            if (p.t != v.t - 1) offenders += (offenders.empty() ? "" : ", ") + chain.label(p);
        }
        if (!offenders.empty())
            add(ViolationKind::ParentLayer, v,
                chain.label(v) + " has parents outside timestep " + std::to_string(v.t - 1) + ": " + offenders);
        const auto rows = chain.num_rows(v);
        if (mech.table.size() != rows * size) {
            add(ViolationKind::TableShape, v,
                chain.label(v) + " table has " + std::to_string(mech.table.size()) + " entries, expected " +
                    std::to_string(rows * size));
            continue;
        }
        for (std::size_t r = 0; r < rows; ++r) {
            Rational sum;
            bool in_range = true;
            for (std::size_t x = 0; x < size; ++x) {
                const auto& p = mech.table[r * size + x];
                if (p.is_negative() || p > Rational::one()) in_range = false;
                sum += p;
            }
            if (!in_range)
                add(ViolationKind::EntryRange, v,
                    chain.label(v) + " row " + std::to_string(r) + " has an entry outside [0,1]");
            if (sum != Rational::one())
                add(ViolationKind::Normalization, v,
                    chain.label(v) + " row " + std::to_string(r) + " sums to " + sum.str());
        }
    }
    return report;
}

void require_valid(const MarkovChain& chain) {
    const auto report = validate_chain(chain);
    if (report.valid()) return;
    Json list = Json::array();
    for (const auto& v : report.violations)
        list.push_back({{"kind", to_string(v.kind)}, {"var", chain.label(v.var)}, {"message", v.message}});
    throw DomainError(ErrorKind::InvalidChain, "chain violates " + std::to_string(report.violations.size()) +
                                                   " structural invariant(s): " + report.violations.front().message,
                      Json{{"violations", list}});
}

std::vector<Rational> deterministic_row(std::size_t size, Symbol x) {
    std::vector<Rational> row(size);
    row.at(x) = Rational::one();
    return row;
}

std::vector<Rational> uniform_row(std::size_t size) {
    return std::vector<Rational>(size, Rational(1, static_cast<long>(size)));
}

}  // namespace agency
