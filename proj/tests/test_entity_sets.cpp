#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "agency/chain_io.hpp"
#include "agency/entity_io.hpp"
#include "agency/entity_set.hpp"
#include "agency/fixtures.hpp"
#include "agency/paloop.hpp"
#include "agency/random_chain.hpp"

using namespace agency;

namespace {

Stp pat(const MarkovChain& chain, std::string_view text) { return parse_stp(chain, text); }

/// Literal reading: any pair and t with equal prefixes and different suffixes
/// whose suffixes jointly have positive probability given the prefix.
bool literal_non_interpenetrating(const Support& support, const EntitySet& es) {
    const int t_max = support.chain().t_max();
    for (std::size_t y = 0; y < es.size(); ++y)
        for (std::size_t z = y + 1; z < es.size(); ++z)
            for (int t = 0; t < t_max; ++t) {
                const auto& py = es[y].pattern;
                const auto& pz = es[z].pattern;
                if (py.prefix(t) != pz.prefix(t) || py.suffix(t) == pz.suffix(t)) continue;
                const auto joint = py.suffix(t).merge(pz.suffix(t));
                if (!joint) continue;
                try {
                    if (conditional_probability(support, *joint, py.prefix(t)).is_positive()) return false;
                } catch (const DomainError& e) {
                    REQUIRE(e.kind() == ErrorKind::ConditionHasZeroProbability);
                }
            }
    return true;
}

}  // namespace

TEST_CASE("build_all_stps counts") {
    CHECK(build_all_stps(fixtures::copy_chain(), 3).size() == 26);
    CHECK(count_stps(fixtures::copy_chain(), 3) == 26.0);
    CHECK(build_all_stps(fixtures::copy_chain(), 0).empty());
    CHECK(build_all_stps(fixtures::pa_chain(), 0).empty());
    CHECK(build_all_stps(fixtures::ca2_chain(), 1).size() == 8);
    CHECK(build_all_stps(fixtures::ca2_chain(), 4).size() == 80);
    CHECK(build_all_stps(fixtures::ca2_chain(), 99).size() == 80);
}

TEST_CASE("build_all_stps order and ids") {
    const auto chain = fixtures::ca2_chain();
    const auto es = build_all_stps(chain, 4);
    CHECK(es.provenance() == Provenance::AllStps);
    for (std::size_t i = 0; i < es.size(); ++i) {
        CHECK(es[i].id == "e" + std::to_string(i));
        if (i > 0) CHECK(es[i - 1].pattern < es[i].pattern);
    }
    CHECK(format_stp(chain, es[0].pattern) == "a@0=0");
    CHECK(format_stp(chain, es[7].pattern) == "b@1=1");
    CHECK(format_stp(chain, es[79].pattern) == "a@0=1,b@0=1,a@1=1,b@1=1");
}

TEST_CASE("build_all_stps respects the cap") {
    try {
        build_all_stps(fixtures::pa_chain(), 6, 100);
        FAIL("expected EntityCapExceeded");
    } catch (const DomainError& e) {
        CHECK(e.kind() == ErrorKind::EntityCapExceeded);
    }
}

TEST_CASE("paloop entity-set is the memory product set") {
    const auto pa = PaLoop::from_chain(fixtures::pa_chain());
    const auto es = build_paloop_entity_set(pa);
    CHECK(es.size() == 8);
    CHECK(es.provenance() == Provenance::PaLoop);
    CHECK(es[0].id == "M:0,0,0");
    CHECK(es[7].id == "M:1,1,1");
    const auto& chain = pa.chain();
    const auto i = es.index_of(pat(chain, "M@0=0,M@1=0,M@2=1"));
    REQUIRE(i);
    CHECK(es[*i].id == "M:0,0,1");

    MarkovChain single({"M", "E"}, 2, {"0"});
    for (int t = 0; t <= 2; ++t) single.set_alphabet({1, t}, {"0", "1"});
    single.set_mechanism({0, 0}, {}, deterministic_row(1, 0));
    single.set_mechanism({1, 0}, {}, uniform_row(2));
    for (int t = 1; t <= 2; ++t) {
        single.set_mechanism({0, t}, {{0, t - 1}, {1, t - 1}}, [](std::span<const Symbol>) { return deterministic_row(1, 0); });
        single.set_mechanism({1, t}, {{0, t - 1}, {1, t - 1}}, [](std::span<const Symbol>) { return uniform_row(2); });
    }
    CHECK(build_paloop_entity_set(PaLoop::from_chain(single)).size() == 1);
}

TEST_CASE("entity-set rejects duplicates and unknown ids") {
    const auto chain = fixtures::copy_chain();
    CHECK_THROWS_AS(EntitySet({{"x", pat(chain, "a@0=0")}, {"x", pat(chain, "a@0=1")}}, Provenance::Explicit),
                    std::invalid_argument);
    CHECK_THROWS_AS(EntitySet({{"x", pat(chain, "a@0=0")}, {"y", pat(chain, "a@0=0")}}, Provenance::Explicit),
                    std::invalid_argument);
    const EntitySet es({{"x", pat(chain, "a@0=0")}}, Provenance::Explicit);
    try {
        es.require("nope");
        FAIL("expected UnknownEntity");
    } catch (const DomainError& e) {
        CHECK(e.kind() == ErrorKind::UnknownEntity);
    }
}

TEST_CASE("non-interpenetration: PA-loop entity-set passes") {
    const auto support = enumerate_support(fixtures::pa_chain());
    const auto es = build_paloop_entity_set(PaLoop::from_chain(fixtures::pa_chain()));
    const EntityModel model(support, es);
    CHECK_FALSE(check_non_interpenetration(model));
}

TEST_CASE("non-interpenetration: CA2 all-stps fails with the documented pair") {
    const auto support = enumerate_support(fixtures::ca2_chain());
    const auto& chain = support.chain();
    const auto es = build_all_stps(chain, 4);
    const EntityModel model(support, es);
    const auto first = check_non_interpenetration(model);
    REQUIRE(first);
    CHECK(first->t == 0);

    const auto y = *es.index_of(pat(chain, "a@0=1,a@1=1"));
    const auto z = *es.index_of(pat(chain, "a@0=1,b@1=1"));
    const auto w = interpenetration_witness(model, y, z);
    REQUIRE(w);
    CHECK(w->t == 0);
    CHECK(format_stp(chain, support[w->trajectory].stp(chain)) == "a@0=1,b@0=0,a@1=1,b@1=1");
    CHECK(support[w->trajectory].probability == Rational(1, 8));

    const auto j = to_json(model, *w);
    CHECK(j["first_pattern"] == "a@0=1,a@1=1");
    CHECK(j["second_pattern"] == "a@0=1,b@1=1");
}

TEST_CASE("non-interpenetration: trivial sets pass") {
    const auto support = enumerate_support(fixtures::ca2_chain());
    const auto& chain = support.chain();
    const EntitySet single({{"only", pat(chain, "a@0=1,a@1=1")}}, Provenance::Explicit);
    CHECK_FALSE(check_non_interpenetration(EntityModel(support, single)));

    // Shared prefix of probability zero: vacuous.
    const auto copy = enumerate_support(fixtures::copy_chain());
    const EntitySet never({{"p", pat(copy.chain(), "a@0=1,a@1=1")}, {"q", pat(copy.chain(), "a@0=1,a@1=0")}},
                          Provenance::Explicit);
    CHECK_FALSE(check_non_interpenetration(EntityModel(copy, never)));
}

TEST_CASE("non-interpenetration is symmetric per pair") {
    const auto support = enumerate_support(fixtures::ca2_chain());
    const auto es = build_all_stps(support.chain(), 4);
    const EntityModel model(support, es);
    for (std::size_t y = 0; y < es.size(); ++y)
        for (std::size_t z = 0; z < es.size(); ++z) {
            const auto a = interpenetration_witness(model, y, z);
            const auto b = interpenetration_witness(model, z, y);
            REQUIRE(a.has_value() == b.has_value());
            if (a) {
                CHECK(a->first == b->first);
                CHECK(a->second == b->second);
                CHECK(a->trajectory == b->trajectory);
            }
        }
}

TEST_CASE("non-interpenetration agrees with the literal conditional reading") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto support = enumerate_support(random_chain(seed));
        const auto es = build_all_stps(support.chain(), 2);
        const EntityModel model(support, es);
        CAPTURE(seed);
        CHECK(check_non_interpenetration(model).has_value() == !literal_non_interpenetrating(support, es));
    }
    const auto ca2 = enumerate_support(fixtures::ca2_chain());
    CHECK_FALSE(literal_non_interpenetrating(ca2, build_all_stps(ca2.chain(), 4)));
}

TEST_CASE("random PA-loops: memory entity-set is non-interpenetrating") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const PaLoopAnalysis analysis(PaLoop::from_chain(random_paloop_chain(seed)));
        CHECK_FALSE(analysis.perception().interpenetration());
    }
}

TEST_CASE("entity model occurrence index") {
    const auto support = enumerate_support(fixtures::ca2_chain());
    const auto es = build_all_stps(support.chain(), 4);
    const EntityModel model(support, es);
    for (std::size_t e = 0; e < es.size(); ++e) {
        CHECK(model.probability(e) == stp_probability(support, es[e].pattern));
        for (const auto tr : model.occurrences(e)) CHECK(es[e].pattern.occurs_in(support.chain(), support[tr].values));
    }
}

TEST_CASE("entity model rejects patterns outside the chain") {
    const auto support = enumerate_support(fixtures::copy_chain());
    const EntitySet es({{"far", Stp({{VarIndex{0, 9}, 0}})}}, Provenance::Explicit);
    try {
        EntityModel model(support, es);
        FAIL("expected QueryInvariantViolated");
    } catch (const DomainError& e) {
        CHECK(e.kind() == ErrorKind::QueryInvariantViolated);
    }
}

TEST_CASE("entity-set documents") {
    const auto chain = fixtures::ca2_chain();
    const auto explicit_doc = parse_json_text(R"([
      {"id": "y", "assignment": {"a@0": "1", "a@1": "1"}},
      {"id": "z", "assignment": {"b@1": "1", "a@0": "1"}}
    ])");
    const auto es = entity_set_from_json(chain, explicit_doc);
    REQUIRE(es.size() == 2);
    CHECK(es[1].id == "z");
    CHECK(format_stp(chain, es[1].pattern) == "a@0=1,b@1=1");
    CHECK(entity_set_from_json(chain, entity_set_to_json(chain, es)).entities().size() == 2);

    CHECK(entity_set_from_json(chain, parse_json_text(R"({"builtin": "all-stps", "max_domain_size": 1})")).size() == 8);
    const auto pa_es = entity_set_from_json(fixtures::pa_chain(), parse_json_text(R"({"builtin": "pa-loop"})"));
    CHECK(pa_es.size() == 8);
    CHECK(pa_es.provenance() == Provenance::PaLoop);
    try {
        entity_set_from_json(chain, parse_json_text(R"({"builtin": "pa-loop"})"));
        FAIL("expected NotAPaLoop");
    } catch (const DomainError& e) {
        CHECK(e.kind() == ErrorKind::NotAPaLoop);
    }

    auto where = [&](std::string_view text) {
        try {
            entity_set_from_json(chain, parse_json_text(text));
        } catch (const ParseError& e) {
            return e.where();
        }
        return std::string("no error");
    };
    CHECK(where(R"([{"id": "y", "assignment": {"q@0": "1"}}])") == "[0].assignment.q@0");
    CHECK(where(R"([{"id": "y", "assignment": {"a@0": "7"}}])") == "[0].assignment.a@0");
    CHECK(where(R"([{"assignment": {}}])") == "[0].id");
    CHECK(where(R"({"builtin": "everything"})") == "builtin");
    CHECK(where(R"({"builtin": "all-stps"})") == "max_domain_size");
    CHECK(where(R"([{"id": "y", "assignment": {"a@0": "1"}}, {"id": "y", "assignment": {"a@0": "0"}}])") == "");
}

TEST_CASE("trajectory selectors") {
    const auto support = enumerate_support(fixtures::ca2_chain());
    CHECK(select_trajectory(support, "3") == 3);
    const auto i = select_trajectory(support, "a@0=1,b@0=0,a@1=1,b@1=1");
    CHECK(format_stp(support.chain(), support[i].stp(support.chain())) == "a@0=1,b@0=0,a@1=1,b@1=1");
    CHECK_THROWS_AS(select_trajectory(support, "8"), DomainError);
    CHECK_THROWS_AS(select_trajectory(support, "a@0=1"), DomainError);
    CHECK_THROWS_AS(select_trajectory(support, "a@0=1,b@0=0,a@1=0,b@1=1"), DomainError);  // probability 0
    CHECK_THROWS_AS(select_trajectory(support, "bogus"), ParseError);
}
