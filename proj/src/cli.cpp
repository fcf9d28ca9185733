#include "agency/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "agency/actions.hpp"
#include "agency/chain_io.hpp"
#include "agency/entity_io.hpp"
#include "agency/fixtures.hpp"
#include "agency/paloop.hpp"
#include "agency/perceptions.hpp"
#include "agency/random_chain.hpp"
#include "agency/report.hpp"

namespace agency::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Session {
public:
    explicit Session(const RunConfig& config) : config_(config) {}

    /// Either a report (JSON) or a raw document (chain JSON text).
    struct Output {
        Json report;
        std::optional<std::string> document;
    };

    Output execute();
    const std::string& current_file() const { return file_; }
    const MarkovChain* chain() const { return chain_ ? &*chain_ : nullptr; }

private:
    const MarkovChain& load_chain_input();
    const Support& support();
    const EntitySet& load_entities();
    const EntityModel& model();
    int require_t() const;
    std::vector<int> steps(const PaLoop& pa) const;
    void forbid_seeds_with_input() const;

    Json validate();
    Json enumerate();
    Json actions();
    Json perceptions();
    Json entityset_check();
    Json paloop_extract();
    Output paloop_extend();
    Json paloop_verify();
    Json paloop_entropy();
    Json paloop_equiv();
    Json paloop_specialize();

    const RunConfig& config_;
    std::string file_;
    std::optional<MarkovChain> chain_;
    std::optional<Support> support_;
    std::optional<EntitySet> entities_;
    std::unique_ptr<EntityModel> model_;
};

const MarkovChain& Session::load_chain_input() {
    if (chain_) return *chain_;
    if (config_.inputs.empty()) throw UsageError("missing <chain.json> argument");
    if (config_.inputs.size() > 1) throw UsageError("expected exactly one chain file");
    file_ = config_.inputs.front();
    chain_ = load_chain(file_);
    file_.clear();
    return *chain_;
}

const Support& Session::support() {
    if (!support_) support_ = enumerate_support(load_chain_input(), config_.support_cap);
    return *support_;
}

const EntitySet& Session::load_entities() {
    if (entities_) return *entities_;
    if (!config_.entity_set) throw UsageError("missing --entity-set");
    const auto& chain = load_chain_input();
    file_ = *config_.entity_set;
    entities_ = load_entity_set(chain, file_);
    file_.clear();
    return *entities_;
}

const EntityModel& Session::model() {
    if (!model_) {
        const auto& s = support();
        model_ = std::make_unique<EntityModel>(s, load_entities());
    }
    return *model_;
}

int Session::require_t() const {
    if (!config_.t) throw UsageError("missing --t");
    return *config_.t;
}

std::vector<int> Session::steps(const PaLoop& pa) const {
    if (config_.t) return {*config_.t};
    std::vector<int> out;
    for (int t = 0; t < pa.t_max(); ++t) out.push_back(t);
    return out;
}

void Session::forbid_seeds_with_input() const {
    if (config_.seeds > 0 && !config_.inputs.empty())
        throw UsageError("--seeds runs on generated loops; drop the chain argument");
}

Json Session::validate() {
    const auto& chain = load_chain_input();
    return report::validation(validate_chain(chain), chain);
}

Json Session::enumerate() {
    const auto& s = support();
    Json list = Json::array();
    Rational total;
    for (std::size_t i = 0; i < s.size(); ++i) {
        list.push_back(report::trajectory(s, i));
        total += s[i].probability;
    }
    return Json{{"count", s.size()}, {"total_probability", report::rational(total)}, {"trajectories", list}};
}

Json Session::actions() {
    const auto& m = model();
    if (!config_.entity) throw UsageError("missing --entity");
    if (!config_.trajectory) throw UsageError("missing --trajectory");
    const auto entity = m.entities().require(*config_.entity);
    const auto tr = select_trajectory(m.support(), *config_.trajectory);
    Json out{{"entity", m.id(entity)}, {"trajectory", report::trajectory(m.support(), tr)}, {"history", config_.history}};
    if (!config_.t) {
        Json rows = Json::array();
        for (const auto& row : action_report(m, entity, tr, config_.history)) {
            Json kinds = Json::array();
            if (row.has_value) kinds.push_back("value");
            if (row.has_extent) kinds.push_back("extent");
            rows.push_back(Json{{"t", row.t},
                                {"acted", row.acted},
                                {"classes", row.classes},
                                {"kinds", kinds},
                                {"log2_classes", row.log2_classes}});
        }
        out["rows"] = rows;
        return out;
    }
    const ActionQuery q{entity, tr, *config_.t, config_.history};
    const auto found = find_co_actions(m, q);
    const auto classes = co_action_sets(m, q);
    Json co = Json::array();
    for (const auto& c : found) co.push_back(report::co_action(m, c, q.t));
    Json cls = Json::array();
    for (const auto& c : classes) cls.push_back(report::co_action_class(m, c));
    out["t"] = q.t;
    out["acted"] = !found.empty();
    out["co_actions"] = co;
    out["classes"] = cls;
    out["log2_classes"] = std::log2(static_cast<double>(classes.size()));
    return out;
}

Json Session::perceptions() {
    const auto& m = model();
    if (!config_.entity) throw UsageError("missing --entity");
    const int t = require_t();
    const auto anchor = m.entities().require(*config_.entity);
    const PerceptionEngine engine(m);
    const auto result = perception_partition(engine, anchor, t, config_.r);
    auto out = report::perception(m, result);
    const auto witness = mutual_exclusivity_check(m, anchor, t);
    Json head{{"anchor", m.id(anchor)}, {"t", t}, {"r", config_.r}};
    head.update(out);
    head["mutually_exclusive"] = !witness.has_value();
    return head;
}

Json Session::entityset_check() {
    const auto& m = model();
    const auto witness = check_non_interpenetration(m);
    return Json{{"entities", m.entities().size()},
                {"provenance", to_string(m.entities().provenance())},
                {"non_interpenetrating", !witness.has_value()},
                {"witness", witness ? to_json(m, *witness) : Json(nullptr)}};
}

Json Session::paloop_extract() {
    const auto pa = PaLoop::from_chain(load_chain_input());
    Json list = Json::array();
    for (const int t : steps(pa))
        list.push_back(Json{{"t", t},
                            {"sensor", report::partition(extract_sensor_partition(pa, t))},
                            {"action", report::partition(extract_action_partition(pa, t))}});
    return Json{{"steps", list}};
}

Session::Output Session::paloop_extend() {
    const auto pa = PaLoop::from_chain(load_chain_input());
    return {Json{}, dump_chain(extend_paloop(pa).chain)};
}

Json Session::paloop_verify() {
    forbid_seeds_with_input();
    if (config_.seeds > 0) {
        Json failed = Json::array();
        for (int i = 0; i < config_.seeds; ++i) {
            const auto seed = config_.seed + static_cast<std::uint64_t>(i);
            const auto pa = PaLoop::from_chain(random_paloop_chain(seed));
            if (!verify_invariant_extension(pa, extend_paloop(pa), config_.support_cap).equal) failed.push_back(seed);
        }
        return Json{{"invariant_extension", failed.empty()},
                    {"loops", config_.seeds},
                    {"first_seed", config_.seed},
                    {"failed_seeds", failed}};
    }
    const auto pa = PaLoop::from_chain(load_chain_input());
    const auto result = verify_invariant_extension(pa, extend_paloop(pa), config_.support_cap);
    return Json{{"invariant_extension", result.equal},
                {"max_discrepancy", report::rational(result.max_discrepancy)},
                {"mismatches", result.mismatches}};
}

Json Session::paloop_entropy() {
    const PaLoopAnalysis analysis(PaLoop::from_chain(load_chain_input()), config_.support_cap);
    Json list = Json::array();
    for (const int t : steps(analysis.loop())) {
        const auto h = conditional_entropy_next_memory(analysis, t);
        const auto n = max_co_action_classes(analysis, t);
        list.push_back(Json{{"t", t},
                            {"bits", h.bits},
                            {"positive", h.positive},
                            {"max_co_action_classes", n},
                            {"log2_bound", std::log2(static_cast<double>(n))}});
    }
    return Json{{"steps", list}};
}

Json Session::paloop_equiv() {
    forbid_seeds_with_input();
    if (config_.seeds > 0) {
        Json failed = Json::array();
        for (int i = 0; i < config_.seeds; ++i) {
            const auto seed = config_.seed + static_cast<std::uint64_t>(i);
            const PaLoopAnalysis analysis(PaLoop::from_chain(random_paloop_chain(seed)), config_.support_cap);
            for (int t = 0; t < analysis.loop().t_max(); ++t)
                if (!verify_action_entropy_equivalence(analysis, t).holds) {
                    failed.push_back(Json{{"seed", seed}, {"t", t}});
                }
        }
        return Json{{"holds", failed.empty()},
                    {"loops", config_.seeds},
                    {"first_seed", config_.seed},
                    {"failures", failed}};
    }
    const PaLoopAnalysis analysis(PaLoop::from_chain(load_chain_input()), config_.support_cap);
    Json list = Json::array();
    bool all = true;
    for (const int t : steps(analysis.loop())) {
        const auto eq = verify_action_entropy_equivalence(analysis, t);
        all = all && eq.holds;
        list.push_back(Json{{"t", t},
                            {"holds", eq.holds},
                            {"action_exists", eq.action_exists},
                            {"entropy_positive", eq.entropy_positive},
                            {"bits", eq.bits},
                            {"witness_trajectory", eq.witness_trajectory
                                                       ? report::trajectory(analysis.support(), *eq.witness_trajectory)
                                                       : Json(nullptr)}});
    }
    return Json{{"holds", all}, {"steps", list}};
}

Json specialization_json(const PaLoopAnalysis& analysis, std::size_t anchor, int t,
                         const PerceptionSpecialization& s) {
    const auto& model = analysis.model();
    return Json{{"t", t},
                {"anchor", model.id(anchor)},
                {"holds", s.holds},
                {"perception", report::perception(model, s.perception)},
                {"sensor", report::partition(s.sensor)},
                {"sensor_restricted", report::partition(s.sensor_restricted)},
                {"anchor_conditioned", report::partition(s.anchor_conditioned)},
                {"anchor_conditioned_holds", s.anchor_conditioned_holds},
                {"morph_matches_mechanism", s.morph_matches_mechanism}};
}

Json Session::paloop_specialize() {
    forbid_seeds_with_input();
    if (config_.seeds > 0) {
        Json failed = Json::array();
        std::size_t checked = 0;
        for (int i = 0; i < config_.seeds; ++i) {
            const auto seed = config_.seed + static_cast<std::uint64_t>(i);
            const PaLoopAnalysis analysis(PaLoop::from_chain(random_paloop_chain(seed)), config_.support_cap);
            const auto& model = analysis.model();
            for (int t = 0; t < analysis.loop().t_max(); ++t)
                for (std::size_t a = 0; a < model.entities().size(); ++a) {
                    if (stp_probability(analysis.support(), model.pattern(a).prefix(t)).is_zero()) continue;
                    ++checked;
                    if (!verify_perception_specialization(analysis, a, t).holds)
                        failed.push_back(Json{{"seed", seed}, {"t", t}, {"anchor", model.id(a)}});
                }
        }
        return Json{{"holds", failed.empty()},
                    {"loops", config_.seeds},
                    {"first_seed", config_.seed},
                    {"checked", checked},
                    {"failures", failed}};
    }
    const PaLoopAnalysis analysis(PaLoop::from_chain(load_chain_input()), config_.support_cap);
    const auto& model = analysis.model();
    std::vector<std::size_t> anchors;
    if (config_.anchor) {
        auto id = *config_.anchor;
        const auto label = model.chain().spatial().at(static_cast<std::size_t>(analysis.loop().memory(0).j)) + ":";
        if (id.rfind(label, 0) != 0) id = label + id;
        anchors.push_back(model.entities().require(id));
    }
    Json list = Json::array();
    bool all = true;
    for (const int t : steps(analysis.loop())) {
        if (config_.anchor) {
            const auto s = verify_perception_specialization(analysis, anchors.front(), t);
            all = all && s.holds;
            list.push_back(specialization_json(analysis, anchors.front(), t, s));
            continue;
        }
        for (std::size_t a = 0; a < model.entities().size(); ++a) {
            if (stp_probability(analysis.support(), model.pattern(a).prefix(t)).is_zero()) continue;
            const auto s = verify_perception_specialization(analysis, a, t);
            all = all && s.holds;
            list.push_back(specialization_json(analysis, a, t, s));
        }
    }
    return Json{{"holds", all}, {"checks", list}};
}

Session::Output Session::execute() {
    const auto& c = config_.command;
    if (c == "fixture") {
        if (!config_.fixture) throw UsageError("missing fixture name");
        return {Json{}, dump_chain(fixtures::by_name(*config_.fixture))};
    }
    if (c == "paloop extend") return paloop_extend();
    Json result;
    if (c == "validate") result = validate();
    else if (c == "enumerate") result = enumerate();
    else if (c == "actions") result = actions();
    else if (c == "perceptions") result = perceptions();
    else if (c == "entityset-check") result = entityset_check();
    else if (c == "paloop extract") result = paloop_extract();
    else if (c == "paloop verify") result = paloop_verify();
    else if (c == "paloop entropy") result = paloop_entropy();
    else if (c == "paloop equiv") result = paloop_equiv();
    else if (c == "paloop specialize") result = paloop_specialize();
    else throw UsageError("unknown command '" + c + "'");
    return {report::envelope(c, chain(), std::move(result)), std::nullopt};
}

std::string render(const Json& report, Format format) {
    return format == Format::Text ? report::render_text(report) : report.dump(2) + "\n";
}

/// Writes to a sibling temporary file, then renames over the target.
void write_atomically(const std::filesystem::path& path, const std::string& text) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw UsageError("cannot write " + tmp.string());
        f << text;
        if (!f.flush()) throw UsageError("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    Session session(config);
    std::string text;
    int code = kExitOk;
    try {
        if (config.support_cap == 0) throw UsageError("support cap must be positive");
        if (config.r < 1 && config.command == "perceptions") throw UsageError("--r must be at least 1");
        if (config.history < 0) throw UsageError("--history must be non-negative");
        auto output = session.execute();
        text = output.document ? *output.document : render(output.report, config.format);
    } catch (const DomainError& e) {
        code = kExitDomain;
        text = render(report::error_envelope(config.command, to_string(e.kind()), e.what(), e.detail()), config.format);
        err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    } catch (const ParseError& e) {
        code = kExitMalformed;
        Json detail{{"file", session.current_file()}, {"where", e.where()}};
        text = render(report::error_envelope(config.command, "MalformedInput", e.what(), detail), config.format);
        err << "error: " << (session.current_file().empty() ? "" : session.current_file() + ": ") << e.what()
            << '\n';
    } catch (const UsageError& e) {
        code = kExitMalformed;
        text = render(report::error_envelope(config.command, "Usage", e.what(), Json::object()), config.format);
        err << "error: " << e.what() << '\n';
    }
    if (code == kExitOk && config.output) {
        try {
            write_atomically(*config.output, text);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return kExitMalformed;
        }
        return code;
    }
    out << text << std::flush;
    return code;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig config;
    if (const char* cap = std::getenv("AGENCY_SUPPORT_CAP")) {
        try {
            std::size_t pos = 0;
            const auto value = std::stoull(cap, &pos);
            if (pos != std::string_view(cap).size() || value == 0) throw std::invalid_argument(cap);
            config.support_cap = static_cast<std::size_t>(value);
        } catch (const std::exception&) {
            err << "error: AGENCY_SUPPORT_CAP must be a positive integer\n";
            return kExitMalformed;
        }
    }

    CLI::App app{"Actions and perceptions of entities in finite multivariate Markov chains"};
    app.name("agency");
    app.require_subcommand(1);
    std::string format = "json";
    std::optional<std::size_t> cap;

    auto chain_arg = [&](CLI::App* sub) { sub->add_option("chain", config.inputs, "Chain definition file"); };
    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--support-cap", cap, "Support enumeration cap");
        sub->add_option("--output", config.output, "Write the report to this file");
    };
    auto with_t = [&](CLI::App* sub) { sub->add_option("--t", config.t, "Timestep"); };
    auto with_seeds = [&](CLI::App* sub) {
        sub->add_option("--seeds", config.seeds, "Run over this many generated PA-loops instead of a file");
        sub->add_option("--seed", config.seed, "First generator seed");
    };

    auto* validate = app.add_subcommand("validate", "Check a chain definition");
    auto* enumerate = app.add_subcommand("enumerate", "List the positive-probability trajectories");
    auto* actions = app.add_subcommand("actions", "Detect co-actions of an entity");
    auto* perceptions = app.add_subcommand("perceptions", "Perception partition of an entity");
    auto* check = app.add_subcommand("entityset-check", "Decide non-interpenetration of an entity-set");
    auto* paloop = app.add_subcommand("paloop", "PA-loop constructions and verifiers");
    auto* fixture = app.add_subcommand("fixture", "Emit a built-in chain definition");
    paloop->require_subcommand(1);

    for (auto* sub : {validate, enumerate, actions, perceptions, check}) {
        chain_arg(sub);
        common(sub);
    }
    for (auto* sub : {actions, perceptions, check})
        sub->add_option("--entity-set", config.entity_set, "Entity-set file")->required();
    for (auto* sub : {actions, perceptions}) {
        sub->add_option("--entity", config.entity, "Entity id")->required();
        with_t(sub);
    }
    actions->add_option("--trajectory", config.trajectory, "Support index or full assignment")->required();
    actions->add_option("--history", config.history, "Steps of matching history before t");
    perceptions->add_option("--r", config.r, "Branching horizon");

    std::vector<std::pair<std::string, CLI::App*>> paloop_subs;
    for (const auto* name : {"extract", "extend", "verify", "entropy", "equiv", "specialize"}) {
        auto* sub = paloop->add_subcommand(name);
        chain_arg(sub);
        common(sub);
        paloop_subs.emplace_back(std::string("paloop ") + name, sub);
    }
    for (const auto& [name, sub] : paloop_subs) {
        if (name == "paloop extend" || name == "paloop verify") continue;
        with_t(sub);
    }
    for (const auto& [name, sub] : paloop_subs)
        if (name == "paloop verify" || name == "paloop equiv" || name == "paloop specialize") with_seeds(sub);
    paloop_subs.back().second->add_option("--anchor", config.anchor, "Memory path m0,m1,...");

    fixture->add_option("name", config.fixture, "copy, pa, ca2, copy-paloop or blind-paloop")->required();
    fixture->add_option("--output", config.output, "Write the chain to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitMalformed;
    }

    for (auto* sub : app.get_subcommands()) {
        config.command = sub->get_name();
        for (auto* inner : sub->get_subcommands()) config.command += " " + inner->get_name();
    }
    config.format = format == "text" ? Format::Text : Format::Json;
    if (cap) config.support_cap = *cap;
    return run(config, out, err);
}

}  // namespace agency::cli
