#pragma once

// Independent reference computations used by the test suites. Each one avoids
// the code path it checks: no support pruning, no occurrence index.

#include <map>
#include <vector>

#include "agency/actions.hpp"
#include "agency/chain.hpp"
#include "agency/entity_set.hpp"
#include "agency/stp.hpp"
#include "agency/support.hpp"

namespace agency::oracle {

/// Chain-rule product for one full assignment.
inline Rational joint(const MarkovChain& chain, const std::vector<Symbol>& values) {
    Rational p = Rational::one();
    for (const auto v : chain.variables()) p *= chain.prob(v, values[chain.flat(v)], values);
    return p;
}

/// Every full assignment with positive probability, in odometer order
/// (last variable fastest), which is lexicographic order of value vectors.
inline std::vector<Trajectory> brute_force_support(const MarkovChain& chain) {
    const auto vars = chain.variables();
    std::vector<Symbol> values(vars.size(), 0);
    std::vector<Trajectory> out;
    while (true) {
        const auto p = joint(chain, values);
        if (p.is_positive()) out.push_back({values, p});
        std::size_t i = vars.size();
        while (i-- > 0) {
            if (++values[i] < chain.alphabet_size(vars[i])) break;
            values[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

/// Forward elimination slice by slice: the distribution over the current
/// slice restricted to assignments consistent with `pattern`.
inline Rational eliminate(const MarkovChain& chain, const Stp& pattern) {
    const auto n = static_cast<std::size_t>(chain.num_spatial());
    auto slice_assignments = [&](int t) {
        std::vector<std::vector<Symbol>> out;
        std::vector<Symbol> values(n, 0);
        while (true) {
            bool ok = true;
            for (std::size_t j = 0; j < n; ++j)
                if (auto v = pattern.value_of({static_cast<int>(j), t}); v && *v != values[j]) ok = false;
            if (ok) out.push_back(values);
            std::size_t j = n;
            while (j-- > 0) {
                if (++values[j] < chain.alphabet_size({static_cast<int>(j), t})) break;
                values[j] = 0;
            }
            if (j == static_cast<std::size_t>(-1)) break;
        }
        return out;
    };
    // Full value vector with only slices t-1 and t filled; enough for prob().
    auto local_prob = [&](int t, const std::vector<Symbol>& prev, const std::vector<Symbol>& cur) {
        std::vector<Symbol> values(chain.num_vars(), 0);
        for (std::size_t j = 0; j < n; ++j) {
            if (t > 0) values[chain.flat({static_cast<int>(j), t - 1})] = prev[j];
            values[chain.flat({static_cast<int>(j), t})] = cur[j];
        }
        Rational p = Rational::one();
        for (std::size_t j = 0; j < n; ++j) p *= chain.prob({static_cast<int>(j), t}, cur[j], values);
        return p;
    };

    std::map<std::vector<Symbol>, Rational> dist;
    for (const auto& s : slice_assignments(0)) {
        const auto p = local_prob(0, {}, s);
        if (p.is_positive()) dist[s] += p;
    }
    for (int t = 1; t <= chain.t_max(); ++t) {
        std::map<std::vector<Symbol>, Rational> next;
        const auto candidates = slice_assignments(t);
        for (const auto& [prev, mass] : dist)
            for (const auto& s : candidates) {
                const auto p = local_prob(t, prev, s);
                if (p.is_positive()) next[s] += mass * p;
            }
        dist = std::move(next);
    }
    Rational total;
    for (const auto& [s, p] : dist) total += p;
    return total;
}

/// Literal conditions (i)-(iv) for one query, looping over every entity and
/// every support trajectory. Uses Stp operations only.
inline std::vector<CoAction> co_actions(const Support& support, const EntitySet& es, std::size_t x_entity,
                                        std::size_t x_traj, int t, int history) {
    const auto& chain = support.chain();
    const auto& x_a = es[x_entity].pattern;
    const auto& x_v = support[x_traj].values;
    std::vector<CoAction> out;
    for (std::size_t y = 0; y < es.size(); ++y) {
        const auto& y_b = es[y].pattern;
        if (y_b.slice(t).empty() || y_b.slice(t + 1).empty()) continue;
        for (std::size_t tr = 0; tr < support.size(); ++tr) {
            const auto& y_v = support[tr].values;
            if (tr == x_traj || !y_b.occurs_in(chain, y_v)) continue;  // (i)
            bool ok = true;
            for (int s = t - history; s <= t && ok; ++s) {
                if (y_b.slice(s).domain() != x_a.slice(s).domain()) ok = false;  // (ii)
                const auto vars = environment_domain(chain, x_a, s);
                if (restrict_values(chain, x_v, vars) != restrict_values(chain, y_v, vars)) ok = false;  // (iii)
            }
            if (!ok || y_b.slice(t + 1) == x_a.slice(t + 1)) continue;  // (iv)
            const auto kind = y_b.slice(t + 1).domain() == x_a.slice(t + 1).domain() ? ActionKind::Value
                                                                                      : ActionKind::Extent;
            out.push_back({y, tr, kind});
        }
    }
    return out;
}

}  // namespace agency::oracle
