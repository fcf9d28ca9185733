#include "agency/entity_set.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "agency/errors.hpp"

namespace agency {

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::Explicit: return "explicit";
        case Provenance::AllStps: return "all-stps";
        case Provenance::PaLoop: return "pa-loop";
    }
    return "explicit";
}

EntitySet::EntitySet(std::vector<Entity> entities, Provenance provenance)
    : entities_(std::move(entities)), provenance_(provenance) {
    std::map<std::string_view, std::size_t> ids;
    std::map<Stp, std::size_t> patterns;
    for (std::size_t i = 0; i < entities_.size(); ++i) {
        if (!ids.emplace(entities_[i].id, i).second)
            throw std::invalid_argument("duplicate entity id '" + entities_[i].id + "'");
        if (!patterns.emplace(entities_[i].pattern, i).second)
            throw std::invalid_argument("entity '" + entities_[i].id + "' duplicates the pattern of '" +
                                        entities_[patterns[entities_[i].pattern]].id + "'");
    }
}

std::optional<std::size_t> EntitySet::index_of(std::string_view id) const {
    for (std::size_t i = 0; i < entities_.size(); ++i)
        if (entities_[i].id == id) return i;
    return std::nullopt;
}

std::optional<std::size_t> EntitySet::index_of(const Stp& pattern) const {
    for (std::size_t i = 0; i < entities_.size(); ++i)
        if (entities_[i].pattern == pattern) return i;
    return std::nullopt;
}

std::size_t EntitySet::require(std::string_view id) const {
    if (auto i = index_of(id)) return *i;
    throw DomainError(ErrorKind::UnknownEntity, "no entity with id '" + std::string{id} + "'");
}

double count_stps(const MarkovChain& chain, int max_domain_size) {
    // Coefficient of x^k in prod_v (1 + |X_v| x), summed over 1..max.
    const auto n = chain.num_vars();
    const auto kmax = static_cast<std::size_t>(std::max(0, std::min<int>(max_domain_size, static_cast<int>(n))));
    std::vector<double> coeff(kmax + 1, 0.0);
    coeff[0] = 1.0;
    for (const auto v : chain.variables()) {
        const auto a = static_cast<double>(chain.alphabet_size(v));
        for (std::size_t k = kmax; k >= 1; --k) coeff[k] += coeff[k - 1] * a;
    }
    double total = 0.0;
    for (std::size_t k = 1; k <= kmax; ++k) total += coeff[k];
    return total;
}

EntitySet build_all_stps(const MarkovChain& chain, int max_domain_size, std::size_t cap) {
    const auto count = count_stps(chain, max_domain_size);
    if (count > static_cast<double>(cap))
        throw DomainError(ErrorKind::EntityCapExceeded,
                          "all-stps would create " + std::to_string(static_cast<long double>(count)) +
                              " entities, cap is " + std::to_string(cap),
                          Json{{"count", count}, {"cap", cap}});
    const auto vars = chain.variables();
    const auto n = vars.size();
    const auto kmax = static_cast<std::size_t>(std::max(0, std::min<int>(max_domain_size, static_cast<int>(n))));
    std::vector<Entity> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::size_t k = 1; k <= kmax; ++k) {
        std::vector<std::size_t> combo(k);
        for (std::size_t i = 0; i < k; ++i) combo[i] = i;
        while (true) {
            std::vector<Symbol> values(k, 0);
            while (true) {
                std::vector<Assignment> as;
                for (std::size_t i = 0; i < k; ++i) as.push_back({vars[combo[i]], values[i]});
                out.push_back({"e" + std::to_string(out.size()), Stp(std::move(as))});
                std::size_t i = k;
                while (i-- > 0) {
                    if (++values[i] < chain.alphabet_size(vars[combo[i]])) break;
                    values[i] = 0;
                }
                if (i == static_cast<std::size_t>(-1)) break;
            }
            // Next combination in lexicographic order.
            std::size_t i = k;
            while (i-- > 0 && combo[i] == n - k + i) {
            }
            if (i == static_cast<std::size_t>(-1)) break;
            ++combo[i];
            for (std::size_t m = i + 1; m < k; ++m) combo[m] = combo[m - 1] + 1;
        }
    }
    return EntitySet(std::move(out), Provenance::AllStps);
}

EntitySet build_process_entity_set(const MarkovChain& chain, int j, Provenance provenance) {
    const auto steps = static_cast<std::size_t>(chain.num_timesteps());
    std::vector<Symbol> values(steps, 0);
    std::vector<Entity> out;
    while (true) {
        std::vector<Assignment> as;
        std::string id = chain.spatial().at(static_cast<std::size_t>(j)) + ":";
        for (std::size_t t = 0; t < steps; ++t) {
            const VarIndex v{j, static_cast<int>(t)};
            as.push_back({v, values[t]});
            if (t > 0) id += ',';
            id += chain.alphabet(v)[values[t]];
        }
        out.push_back({std::move(id), Stp(std::move(as))});
        std::size_t t = steps;
        while (t-- > 0) {
            if (++values[t] < chain.alphabet_size({j, static_cast<int>(t)})) break;
            values[t] = 0;
        }
        if (t == static_cast<std::size_t>(-1)) break;
    }
    return EntitySet(std::move(out), provenance);
}

EntityModel::EntityModel(const Support& support, const EntitySet& entities)
    : support_(&support), entities_(&entities) {
    const auto& chain = support.chain();
    const auto n = entities.size();
    occurrences_.resize(n);
    present_.resize(support.size());
    slices_.resize(n);
    for (std::size_t e = 0; e < n; ++e) {
        const auto& p = entities[e].pattern;
        for (const auto& a : p) {
            if (!chain.contains(a.var) || a.value >= chain.alphabet_size(a.var))
                throw DomainError(ErrorKind::QueryInvariantViolated,
                                  "entity '" + entities[e].id + "' assigns a variable or symbol outside the chain");
        }
        slices_[e].resize(static_cast<std::size_t>(chain.num_timesteps()));
        for (int t = 0; t <= chain.t_max(); ++t) slices_[e][static_cast<std::size_t>(t)] = p.slice(t);
    }
    for (std::size_t tr = 0; tr < support.size(); ++tr) {
        const auto& values = support[tr].values;
        for (std::size_t e = 0; e < n; ++e) {
            if (entities[e].pattern.occurs_in(chain, values)) {
                occurrences_[e].push_back(tr);
                present_[tr].push_back(e);
            }
        }
    }
}

const Stp& EntityModel::slice(std::size_t e, int t) const {
    if (t < 0 || t > chain().t_max()) return empty_;
    return slices_[e][static_cast<std::size_t>(t)];
}

Rational EntityModel::probability(std::size_t e) const {
    Rational sum;
    for (const auto tr : occurrences_[e]) sum += (*support_)[tr].probability;
    return sum;
}

std::optional<std::size_t> EntityModel::first_joint_occurrence(std::size_t a, std::size_t b) const {
    const auto& x = occurrences_[a];
    const auto& y = occurrences_[b];
    auto i = x.begin();
    auto j = y.begin();
    while (i != x.end() && j != y.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else return *i;
    }
    return std::nullopt;
}

std::optional<InterpenetrationWitness> interpenetration_witness(const EntityModel& model, std::size_t y, std::size_t z) {
    if (y == z) return std::nullopt;
    if (z < y) std::swap(y, z);
    const auto& py = model.pattern(y);
    const auto& pz = model.pattern(z);
    std::optional<int> first_t;
    for (int t = 0; t < model.chain().t_max(); ++t) {
        if (py.prefix(t) == pz.prefix(t) && py.suffix(t) != pz.suffix(t)) {
            first_t = t;
            break;
        }
    }
    if (!first_t) return std::nullopt;
    // With equal prefixes, both suffixes plus the prefix occurring means both
    // full patterns occur; the event is the same for every qualifying t.
    const auto tr = model.first_joint_occurrence(y, z);
    if (!tr) return std::nullopt;
    return InterpenetrationWitness{y, z, *first_t, *tr};
}

std::optional<InterpenetrationWitness> check_non_interpenetration(const EntityModel& model) {
    const auto n = model.entities().size();
    // Only pairs that co-occur somewhere can be witnesses.
    std::vector<std::vector<bool>> co_occur(n, std::vector<bool>(n, false));
    for (std::size_t tr = 0; tr < model.support().size(); ++tr) {
        const auto& present = model.present(tr);
        for (std::size_t a = 0; a < present.size(); ++a)
            for (std::size_t b = a + 1; b < present.size(); ++b) co_occur[present[a]][present[b]] = true;
    }
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = y + 1; z < n; ++z)
            if (co_occur[y][z])
                if (auto w = interpenetration_witness(model, y, z)) return w;
    return std::nullopt;
}

Json to_json(const EntityModel& model, const InterpenetrationWitness& w) {
    const auto& chain = model.chain();
    return Json{{"first", model.id(w.first)},
                {"first_pattern", format_stp(chain, model.pattern(w.first))},
                {"second", model.id(w.second)},
                {"second_pattern", format_stp(chain, model.pattern(w.second))},
                {"t", w.t},
                {"trajectory_index", w.trajectory},
                {"trajectory", format_stp(chain, model.support()[w.trajectory].stp(chain))}};
}

}  // namespace agency
