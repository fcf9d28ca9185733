#include "agency/report.hpp"

#include <algorithm>
#include <sstream>

namespace agency::report {

Json canonical_order(const MarkovChain& chain) {
    Json vars = Json::array();
    Json alphabets = Json::object();
    for (const auto v : chain.variables()) {
        vars.push_back(chain.label(v));
        alphabets[chain.label(v)] = chain.alphabet(v);
    }
    return Json{{"variables", vars}, {"alphabets", alphabets}};
}

Json envelope(std::string_view command, const MarkovChain* chain, Json result) {
    Json out{{"schema_version", kSchemaVersion}, {"command", command}};
    if (chain) out["canonical_order"] = canonical_order(*chain);
    out["result"] = std::move(result);
    return out;
}

Json error_envelope(std::string_view command, std::string_view kind, std::string_view message, Json detail) {
    return Json{{"schema_version", kSchemaVersion},
                {"command", command},
                {"error", Json{{"kind", kind}, {"message", message}, {"detail", std::move(detail)}}}};
}

Json rational(const Rational& r) { return r.str(); }

Json validation(const ValidationReport& report, const MarkovChain& chain) {
    Json list = Json::array();
    for (const auto& v : report.violations)
        list.push_back(Json{{"kind", to_string(v.kind)}, {"variable", chain.label(v.var)}, {"message", v.message}});
    return Json{{"valid", report.valid()}, {"violations", list}};
}

Json trajectory(const Support& support, std::size_t index) {
    const auto& chain = support.chain();
    return Json{{"index", index},
                {"assignment", format_stp(chain, support[index].stp(chain))},
                {"probability", rational(support[index].probability)}};
}

Json partition(const Partition& p) {
    Json blocks = Json::array();
    for (const auto& block : p.blocks()) {
        Json names = Json::array();
        for (const auto i : block) names.push_back(p.names()[i]);
        blocks.push_back(names);
    }
    return blocks;
}

Json co_action(const EntityModel& model, const CoAction& c, int t) {
    const auto& chain = model.chain();
    return Json{{"entity", model.id(c.entity)},
                {"trajectory", trajectory(model.support(), c.trajectory)},
                {"kind", to_string(c.kind)},
                {"next_slice", format_stp(chain, model.slice(c.entity, t + 1))}};
}

Json co_action_class(const EntityModel& model, const CoActionClass& c) {
    Json members = Json::array();
    for (const auto& m : c.members) members.push_back(Json{{"entity", model.id(m.entity)}, {"trajectory_index", m.trajectory}});
    return Json{{"next_slice", format_stp(model.chain(), c.next_slice)},
                {"contains_query", c.contains_query},
                {"members", members}};
}

Json branch_morph(const MarkovChain& chain, const BranchMorph& m) {
    Json mass = Json::array();
    Json dist = Json::array();
    for (const auto& x : m.block_mass) mass.push_back(rational(x));
    for (const auto& x : m.distribution) dist.push_back(rational(x));
    return Json{{"environment", format_stp(chain, m.environment)},
                {"block_mass", mass},
                {"total", rational(m.total)},
                {"distribution", dist}};
}

Json perception(const EntityModel& model, const PerceptionResult& result) {
    const auto& chain = model.chain();
    Json co = Json::array();
    for (const auto e : result.co_entities) co.push_back(model.id(e));
    Json envs = Json::array();
    for (const auto& env : result.environments) envs.push_back(format_stp(chain, env));
    Json windows = Json::array();
    for (const auto& w : result.branching.branch_windows) windows.push_back(format_stp(chain, w));
    Json morphs = Json::array();
    for (const auto& m : result.morphs) morphs.push_back(branch_morph(chain, m));
    return Json{{"co_entities", co},
                {"environments", envs},
                {"branching", Json{{"blocks", partition(result.branching.partition)},
                                   {"branch_windows", windows},
                                   {"anchor_block", result.branching.anchor_block}}},
                {"morphs", morphs},
                {"perceptions", partition(result.perceptions)}};
}

Json exclusivity_witness(const EntityModel& model, const ExclusivityWitness& w) {
    return Json{{"first", model.id(w.first)},
                {"second", model.id(w.second)},
                {"environment", format_stp(model.chain(), w.environment)},
                {"trajectory", trajectory(model.support(), w.trajectory)}};
}

namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render(std::ostream& out, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (is_scalar(value)) {
                out << pad << key << ": " << scalar(value) << '\n';
            } else if (value.empty()) {
                out << pad << key << ": (none)\n";
            } else {
                out << pad << key << ":\n";
                render(out, value, indent + 1);
            }
        }
        return;
    }
    if (j.is_array()) {
        const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
        if (flat) {
            out << pad;
            for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << scalar(j[i]);
            out << '\n';
            return;
        }
        for (std::size_t i = 0; i < j.size(); ++i) {
            out << pad << "- [" << i << "]\n";
            render(out, j[i], indent + 1);
        }
        return;
    }
    out << pad << scalar(j) << '\n';
}

}  // namespace

std::string render_text(const Json& report) {
    std::ostringstream out;
    render(out, report, 0);
    return out.str();
}

}  // namespace agency::report
