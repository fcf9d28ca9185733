#include "agency/stp.hpp"

#include <algorithm>
#include <stdexcept>

#include "agency/errors.hpp"

namespace agency {

Stp::Stp(std::vector<Assignment> assignments) : assignments_(std::move(assignments)) {
    std::sort(assignments_.begin(), assignments_.end());
    for (std::size_t i = 1; i < assignments_.size(); ++i)
        if (assignments_[i - 1].var == assignments_[i].var)
            throw std::invalid_argument("Stp: variable assigned twice");
}

std::vector<VarIndex> Stp::domain() const {
    std::vector<VarIndex> out;
    out.reserve(assignments_.size());
    for (const auto& a : assignments_) out.push_back(a.var);
    return out;
}

bool Stp::same_domain(const Stp& other) const {
    return std::equal(assignments_.begin(), assignments_.end(), other.assignments_.begin(),
                      other.assignments_.end(), [](const Assignment& a, const Assignment& b) { return a.var == b.var; });
}

std::optional<Symbol> Stp::value_of(VarIndex v) const {
    auto it = std::lower_bound(assignments_.begin(), assignments_.end(), v,
                               [](const Assignment& a, VarIndex key) { return a.var < key; });
    if (it == assignments_.end() || it->var != v) return std::nullopt;
    return it->value;
}

bool Stp::has_slice(int t) const {
    return std::any_of(assignments_.begin(), assignments_.end(), [t](const Assignment& a) { return a.var.t == t; });
}

Stp Stp::window(int from, int to) const {
    Stp out;
    for (const auto& a : assignments_)
        if (a.var.t >= from && a.var.t <= to) out.assignments_.push_back(a);
    return out;
}

Stp Stp::suffix(int t) const {
    Stp out;
    for (const auto& a : assignments_)
        if (a.var.t > t) out.assignments_.push_back(a);
    return out;
}

bool Stp::compatible(const Stp& other) const {
    auto i = assignments_.begin();
    auto j = other.assignments_.begin();
    while (i != assignments_.end() && j != other.assignments_.end()) {
        if (i->var < j->var) ++i;
        else if (j->var < i->var) ++j;
        else {
            if (i->value != j->value) return false;
            ++i;
            ++j;
        }
    }
    return true;
}

std::optional<Stp> Stp::merge(const Stp& other) const {
    if (!compatible(other)) return std::nullopt;
    Stp out;
    std::set_union(assignments_.begin(), assignments_.end(), other.assignments_.begin(), other.assignments_.end(),
                   std::back_inserter(out.assignments_),
                   [](const Assignment& a, const Assignment& b) { return a.var < b.var; });
    return out;
}

std::strong_ordering operator<=>(const Stp& a, const Stp& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (auto c = a.assignments_[i].var <=> b.assignments_[i].var; c != 0) return c;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (auto c = a.assignments_[i].value <=> b.assignments_[i].value; c != 0) return c;
    return std::strong_ordering::equal;
}

std::vector<VarIndex> environment_domain(const MarkovChain& chain, const Stp& pattern, int t) {
    std::vector<VarIndex> out;
    for (int j = 0; j < chain.num_spatial(); ++j) {
        const VarIndex v{j, t};
        if (!pattern.value_of(v)) out.push_back(v);
    }
    return out;
}

Stp restrict_values(const MarkovChain& chain, std::span<const Symbol> values, std::span<const VarIndex> vars) {
    std::vector<Assignment> out;
    out.reserve(vars.size());
    for (const auto v : vars) out.push_back({v, values[chain.flat(v)]});
    return Stp(std::move(out));
}

Stp environment(const MarkovChain& chain, std::span<const Symbol> trajectory, const Stp& pattern, int t) {
    if (!pattern.occurs_in(chain, trajectory))
        throw DomainError(ErrorKind::PatternNotInTrajectory, "pattern does not occur in the trajectory");
    const auto vars = environment_domain(chain, pattern, t);
    return restrict_values(chain, trajectory, vars);
}

std::string format_stp(const MarkovChain& chain, const Stp& stp) {
    std::string out;
    for (const auto& a : stp) {
        if (!out.empty()) out += ',';
        out += chain.label(a.var) + "=" + chain.alphabet(a.var).at(a.value);
    }
    return out;
}

Stp parse_stp(const MarkovChain& chain, std::string_view text) {
    std::vector<Assignment> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = text.substr(0, comma);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw ParseError(std::string{item}, "expected j@t=symbol");
        const auto var = chain.parse_var(item.substr(0, eq));
        if (!var) throw ParseError(std::string{item}, "unknown variable");
        const auto sym = chain.find_symbol(*var, item.substr(eq + 1));
        if (!sym) throw ParseError(std::string{item}, "symbol not in alphabet of " + chain.label(*var));
        out.push_back({*var, *sym});
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    try {
        return Stp(std::move(out));
    } catch (const std::invalid_argument&) {
        throw ParseError("", "variable assigned twice in pattern");
    }
}

}  // namespace agency
