#include "agency/chain_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace agency {

namespace {

std::string join_symbols(const MarkovChain& chain, const std::vector<VarIndex>& vars,
                         const std::vector<Symbol>& values) {
    std::string out;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i > 0) out += ',';
        out += chain.alphabet(vars[i])[values[i]];
    }
    return out;
}

void check_label(const std::string& where, const std::string& label, std::string_view forbidden) {
    if (label.empty()) throw ParseError(where, "empty label");
    if (label.find_first_of(forbidden) != std::string::npos)
        throw ParseError(where, "label '" + label + "' contains one of \"" + std::string{forbidden} + "\"");
}

std::vector<std::string> string_list(const Json& node, const std::string& where) {
    if (!node.is_array()) throw ParseError(where, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
        if (!node[i].is_string()) throw ParseError(where + "[" + std::to_string(i) + "]", "expected a string");
        out.push_back(node[i].get<std::string>());
    }
    return out;
}

Rational parse_entry(const Json& node, const std::string& where) {
    try {
        if (node.is_string()) return Rational::parse(node.get<std::string>());
        if (node.is_number_integer()) return Rational(node.get<long>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(where, e.what());
    }
    throw ParseError(where, "expected a rational string \"p/q\"");
}

}  // namespace

Json chain_to_json(const MarkovChain& chain) {
    Json doc;
    doc["spatial"] = chain.spatial();
    doc["t_max"] = chain.t_max();

    const auto vars = chain.variables();
    const bool uniform_alphabets = std::all_of(vars.begin(), vars.end(), [&](VarIndex v) {
        return chain.alphabet(v) == chain.alphabet(vars.front());
    });
    if (uniform_alphabets) {
        doc["alphabets"] = chain.alphabet(vars.front());
    } else {
        Json alph = Json::object();
        for (const auto v : vars) alph[chain.label(v)] = chain.alphabet(v);
        doc["alphabets"] = alph;
    }

    Json parents = Json::object();
    for (const auto v : vars) {
        const auto& pa = chain.mechanism(v).parents;
        if (v.t == 0 && pa.empty()) continue;
        Json list = Json::array();
        for (const auto p : pa) list.push_back(chain.label(p));
        parents[chain.label(v)] = list;
    }
    doc["parents"] = parents;

    Json mechanisms = Json::object();
    for (const auto v : vars) {
        const auto& mech = chain.mechanism(v);
        Json table = Json::object();
        const auto size = chain.alphabet_size(v);
        for (std::size_t r = 0; r < chain.num_rows(v) && (r + 1) * size <= mech.table.size(); ++r) {
            Json row = Json::array();
            for (std::size_t x = 0; x < size; ++x) row.push_back(mech.table[r * size + x].str());
            table[join_symbols(chain, mech.parents, chain.row_parent_values(v, r))] = row;
        }
        mechanisms[chain.label(v)] = table;
    }
    doc["mechanisms"] = mechanisms;
    return doc;
}

MarkovChain chain_from_json(const Json& doc) {
    if (!doc.is_object()) throw ParseError("", "chain document must be a JSON object");
    for (const char* key : {"spatial", "t_max", "alphabets", "mechanisms"})
        if (!doc.contains(key)) throw ParseError(key, "missing required key");

    auto spatial = string_list(doc["spatial"], "spatial");
    if (spatial.empty()) throw ParseError("spatial", "needs at least one label");
    for (std::size_t i = 0; i < spatial.size(); ++i) {
        check_label("spatial[" + std::to_string(i) + "]", spatial[i], "@,=");
        if (std::count(spatial.begin(), spatial.end(), spatial[i]) > 1)
            throw ParseError("spatial", "duplicate label '" + spatial[i] + "'");
    }
    if (!doc["t_max"].is_number_integer() || doc["t_max"].get<long>() < 0)
        throw ParseError("t_max", "expected a non-negative integer");
    const int t_max = doc["t_max"].get<int>();

    MarkovChain chain(spatial, t_max, {});
    const auto vars = chain.variables();

    // Alphabets: array default, or object with "default", per-label, per-variable keys.
    const auto& alph = doc["alphabets"];
    std::vector<bool> assigned(chain.num_vars(), false);
    auto install = [&](VarIndex v, const std::vector<std::string>& labels, const std::string& where) {
        if (labels.empty()) throw ParseError(where, "alphabet must be non-empty");
        for (const auto& l : labels) {
            check_label(where, l, ",=");
            if (std::count(labels.begin(), labels.end(), l) > 1)
                throw ParseError(where, "duplicate symbol '" + l + "'");
        }
        if (labels.size() > 65535) throw ParseError(where, "alphabet too large");
        chain.set_alphabet(v, labels);
        assigned[chain.flat(v)] = true;
    };
    if (alph.is_array()) {
        const auto labels = string_list(alph, "alphabets");
        for (const auto v : vars) install(v, labels, "alphabets");
    } else if (alph.is_object()) {
        if (alph.contains("default")) {
            const auto labels = string_list(alph["default"], "alphabets.default");
            for (const auto v : vars) install(v, labels, "alphabets.default");
        }
        // Per-label entries first, then per-variable entries take precedence.
        for (const auto& [key, value] : alph.items()) {
            if (key == "default" || key.find('@') != std::string::npos) continue;
            const auto j = chain.find_spatial(key);
            if (!j) throw ParseError("alphabets." + key, "unknown spatial label");
            const auto labels = string_list(value, "alphabets." + key);
            for (int t = 0; t <= t_max; ++t) install({*j, t}, labels, "alphabets." + key);
        }
        for (const auto& [key, value] : alph.items()) {
            if (key.find('@') == std::string::npos) continue;
            const auto v = chain.parse_var(key);
            if (!v) throw ParseError("alphabets." + key, "unknown variable");
            install(*v, string_list(value, "alphabets." + key), "alphabets." + key);
        }
    } else {
        throw ParseError("alphabets", "expected an array or an object");
    }
    for (const auto v : vars)
        if (!assigned[chain.flat(v)]) throw ParseError("alphabets", "no alphabet for " + chain.label(v));

    // Parents.
    std::vector<std::vector<VarIndex>> parents(chain.num_vars());
    if (doc.contains("parents")) {
        const auto& pa = doc["parents"];
        if (!pa.is_object()) throw ParseError("parents", "expected an object");
        for (const auto& [key, value] : pa.items()) {
            const auto where = "parents." + key;
            const auto v = chain.parse_var(key);
            if (!v) throw ParseError(where, "unknown variable");
            std::vector<VarIndex> list;
            for (const auto& name : string_list(value, where)) {
                const auto p = chain.parse_var(name);
                if (!p) throw ParseError(where, "unknown parent '" + name + "'");
                list.push_back(*p);
            }
            std::sort(list.begin(), list.end());
            if (std::adjacent_find(list.begin(), list.end()) != list.end())
                throw ParseError(where, "duplicate parent");
            parents[chain.flat(*v)] = std::move(list);
        }
    }

    // Mechanisms.
    const auto& mechs = doc["mechanisms"];
    if (!mechs.is_object()) throw ParseError("mechanisms", "expected an object");
    for (const auto& [key, value] : mechs.items())
        if (!chain.parse_var(key)) throw ParseError("mechanisms." + key, "unknown variable");
    for (const auto v : vars) {
        const auto label = chain.label(v);
        const auto where = "mechanisms." + label;
        if (!mechs.contains(label)) throw ParseError(where, "missing mechanism");
        const auto& table = mechs[label];
        if (!table.is_object()) throw ParseError(where, "expected an object of rows");
        const auto& pa = parents[chain.flat(v)];
        std::size_t rows = 1;
        for (const auto p : pa) rows *= chain.alphabet_size(p);
        const auto size = chain.alphabet_size(v);
        std::map<std::string, std::size_t> row_of_key;
        {
            std::vector<Symbol> values(pa.size(), 0);
            for (std::size_t r = 0; r < rows; ++r) {
                row_of_key[join_symbols(chain, pa, values)] = r;
                for (std::size_t i = values.size(); i-- > 0;) {
                    if (++values[i] < chain.alphabet_size(pa[i])) break;
                    values[i] = 0;
                }
            }
        }
        std::vector<Rational> entries(rows * size);
        std::vector<bool> seen(rows, false);
        for (const auto& [row_key, row] : table.items()) {
            const auto row_where = where + "[\"" + row_key + "\"]";
            auto it = row_of_key.find(row_key);
            if (it == row_of_key.end()) throw ParseError(row_where, "row key is not a parent assignment");
            if (!row.is_array() || row.size() != size)
                throw ParseError(row_where, "expected " + std::to_string(size) + " entries");
            for (std::size_t x = 0; x < size; ++x)
                entries[it->second * size + x] = parse_entry(row[x], row_where + "[" + std::to_string(x) + "]");
            seen[it->second] = true;
        }
        for (const auto& [row_key, r] : row_of_key)
            if (!seen[r]) throw ParseError(where, "missing row \"" + row_key + "\"");
        chain.set_mechanism(v, pa, std::move(entries));
    }
    return chain;
}

std::string dump_chain(const MarkovChain& chain) { return chain_to_json(chain).dump(2) + "\n"; }

Json parse_json_text(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        const auto offset = std::min<std::size_t>(e.byte, text.size());
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < offset; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column), "invalid JSON");
    }
}

MarkovChain parse_chain(std::string_view text) { return chain_from_json(parse_json_text(text)); }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

MarkovChain load_chain(const std::filesystem::path& path) { return parse_chain(read_file(path)); }

}  // namespace agency
