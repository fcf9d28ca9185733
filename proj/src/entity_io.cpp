#include "agency/entity_io.hpp"

#include <charconv>

#include "agency/chain_io.hpp"
#include "agency/paloop.hpp"

namespace agency {

namespace {

Entity parse_entity(const MarkovChain& chain, const Json& node, const std::string& where) {
    if (!node.is_object()) throw ParseError(where, "expected an object with \"id\" and \"assignment\"");
    if (!node.contains("id") || !node["id"].is_string()) throw ParseError(where + ".id", "expected a string");
    if (!node.contains("assignment") || !node["assignment"].is_object())
        throw ParseError(where + ".assignment", "expected an object mapping \"j@t\" to a symbol");
    std::vector<Assignment> as;
    for (const auto& [key, value] : node["assignment"].items()) {
        const auto at = where + ".assignment." + key;
        const auto var = chain.parse_var(key);
        if (!var) throw ParseError(at, "unknown variable");
        if (!value.is_string()) throw ParseError(at, "expected a symbol string");
        const auto sym = chain.find_symbol(*var, value.get<std::string>());
        if (!sym) throw ParseError(at, "symbol '" + value.get<std::string>() + "' not in alphabet");
        as.push_back({*var, *sym});
    }
    try {
        return {node["id"].get<std::string>(), Stp(std::move(as))};
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ".assignment", e.what());
    }
}

}  // namespace

EntitySet entity_set_from_json(const MarkovChain& chain, const Json& doc, std::size_t cap) {
    if (doc.is_object()) {
        if (!doc.contains("builtin") || !doc["builtin"].is_string())
            throw ParseError("builtin", "expected \"all-stps\" or \"pa-loop\"");
        const auto name = doc["builtin"].get<std::string>();
        if (name == "all-stps") {
            if (!doc.contains("max_domain_size") || !doc["max_domain_size"].is_number_integer())
                throw ParseError("max_domain_size", "expected a non-negative integer");
            const auto k = doc["max_domain_size"].get<long>();
            if (k < 0) throw ParseError("max_domain_size", "expected a non-negative integer");
            return build_all_stps(chain, static_cast<int>(std::min<long>(k, 1 << 20)), cap);
        }
        if (name == "pa-loop") return build_paloop_entity_set(PaLoop::from_chain(chain));
        throw ParseError("builtin", "unknown directive '" + name + "'");
    }
    if (!doc.is_array()) throw ParseError("", "expected an entity list or a builtin directive");
    std::vector<Entity> entities;
    for (std::size_t i = 0; i < doc.size(); ++i)
        entities.push_back(parse_entity(chain, doc[i], "[" + std::to_string(i) + "]"));
    try {
        return EntitySet(std::move(entities), Provenance::Explicit);
    } catch (const std::invalid_argument& e) {
        throw ParseError("", e.what());
    }
}

EntitySet load_entity_set(const MarkovChain& chain, const std::filesystem::path& path, std::size_t cap) {
    return entity_set_from_json(chain, parse_json_text(read_file(path)), cap);
}

Json entity_set_to_json(const MarkovChain& chain, const EntitySet& es) {
    Json out = Json::array();
    for (const auto& e : es.entities()) {
        Json assignment = Json::object();
        for (const auto& a : e.pattern) assignment[chain.label(a.var)] = chain.alphabet(a.var)[a.value];
        out.push_back(Json{{"id", e.id}, {"assignment", assignment}});
    }
    return out;
}

std::size_t select_trajectory(const Support& support, std::string_view selector) {
    std::size_t index = 0;
    const auto* end = selector.data() + selector.size();
    if (const auto [ptr, ec] = std::from_chars(selector.data(), end, index); ec == std::errc{} && ptr == end) {
        if (index >= support.size())
            throw DomainError(ErrorKind::QueryInvariantViolated,
                              "trajectory index " + std::to_string(index) + " out of range (support has " +
                                  std::to_string(support.size()) + ")");
        return index;
    }
    const auto& chain = support.chain();
    const auto pattern = parse_stp(chain, selector);
    if (pattern.size() != chain.num_vars())
        throw DomainError(ErrorKind::QueryInvariantViolated, "trajectory selector must assign every variable");
    std::vector<Symbol> values(chain.num_vars());
    for (const auto& a : pattern) values[chain.flat(a.var)] = a.value;
    if (const auto found = support.find(values)) return *found;
    throw DomainError(ErrorKind::QueryInvariantViolated, "trajectory has probability 0");
}

}  // namespace agency
