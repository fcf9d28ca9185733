#include "agency/support.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <string>

#include "agency/errors.hpp"

namespace agency {

Stp Trajectory::stp(const MarkovChain& chain) const {
    std::vector<Assignment> out;
    out.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out.push_back({chain.var_at(i), values[i]});
    return Stp(std::move(out));
}

std::optional<std::size_t> Support::find(std::span<const Symbol> values) const {
    auto it = std::lower_bound(trajectories_.begin(), trajectories_.end(), values,
                               [](const Trajectory& tr, std::span<const Symbol> key) {
                                   return std::lexicographical_compare(tr.values.begin(), tr.values.end(),
                                                                       key.begin(), key.end());
                               });
    if (it == trajectories_.end() || !std::equal(it->values.begin(), it->values.end(), values.begin(), values.end()))
        return std::nullopt;
    return static_cast<std::size_t>(it - trajectories_.begin());
}

double support_bound(const MarkovChain& chain) {
    // Every trajectory picks one positive entry of one row per variable.
    double bound = 1.0;
    for (const auto v : chain.variables()) {
        const auto size = chain.alphabet_size(v);
        std::size_t widest = 0;
        for (std::size_t r = 0; r < chain.num_rows(v); ++r) {
            std::size_t positive = 0;
            for (Symbol x = 0; x < size; ++x)
                if (chain.entry(v, r, x).is_positive()) ++positive;
            widest = std::max(widest, positive);
        }
        bound *= static_cast<double>(widest);
    }
    return bound;
}

namespace {

std::string format_count(double n) {
    std::ostringstream out;
    out << std::setprecision(17) << n;
    return out.str();
}

struct Enumerator {
    const MarkovChain& chain;
    std::vector<VarIndex> order;
    std::vector<Symbol> values;
    std::vector<Trajectory> out;

    void visit(std::size_t depth, const Rational& prob) {
        if (depth == order.size()) {
            out.push_back({values, prob});
            return;
        }
        const auto v = order[depth];
        const auto row = chain.row_index(v, values);
        for (Symbol x = 0; x < chain.alphabet_size(v); ++x) {
            const auto& p = chain.entry(v, row, x);
            if (!p.is_positive()) continue;
            values[depth] = x;
            visit(depth + 1, prob * p);
        }
        values[depth] = 0;
    }
};

}  // namespace

Support enumerate_support(const MarkovChain& chain, std::size_t cap) {
    require_valid(chain);
    const auto bound = support_bound(chain);
    if (bound > static_cast<double>(cap))
        throw DomainError(ErrorKind::SupportCapExceeded,
                          "support bound " + format_count(bound) + " exceeds cap " +
                              std::to_string(cap),
                          Json{{"bound", bound}, {"cap", cap}});
    // Flat order is canonical order and every parent precedes its child.
    Enumerator e{chain, chain.variables(), std::vector<Symbol>(chain.num_vars(), 0), {}};
    e.out.reserve(static_cast<std::size_t>(std::min(bound, 4096.0)));
    e.visit(0, Rational::one());
    return Support(chain, std::move(e.out));
}

Rational stp_probability(const Support& support, const Stp& pattern) {
    if (pattern.empty()) return Rational::one();
    Rational sum;
    for (const auto& tr : support.trajectories())
        if (pattern.occurs_in(support.chain(), tr.values)) sum += tr.probability;
    return sum;
}

Rational conditional_probability(const Support& support, const Stp& target, const Stp& given) {
    const auto denom = stp_probability(support, given);
    if (denom.is_zero())
        throw DomainError(ErrorKind::ConditionHasZeroProbability,
                          "conditioning pattern {" + format_stp(support.chain(), given) + "} has probability 0");
    const auto joint = target.merge(given);
    if (!joint) return Rational::zero();
    return stp_probability(support, *joint) / denom;
}

}  // namespace agency
