#include "agency/fixtures.hpp"

#include <string>

#include "agency/errors.hpp"

namespace agency::fixtures {

namespace {

const std::vector<std::string> kBinary{"0", "1"};

}  // namespace

MarkovChain copy_chain() {
    MarkovChain chain({"a"}, 2, kBinary);
    chain.set_mechanism({0, 0}, {}, deterministic_row(2, 0));
    for (int t = 1; t <= 2; ++t)
        chain.set_mechanism({0, t}, {{0, t - 1}}, [](std::span<const Symbol> pa) { return deterministic_row(2, pa[0]); });
    return chain;
}

MarkovChain pa_chain() {
    constexpr int M = 0, E = 1;
    MarkovChain chain({"M", "E"}, 2, kBinary);
    chain.set_mechanism({M, 0}, {}, uniform_row(2));
    chain.set_mechanism({E, 0}, {}, uniform_row(2));
    for (int t = 1; t <= 2; ++t) {
        const std::vector<VarIndex> parents{{M, t - 1}, {E, t - 1}};
        chain.set_mechanism({M, t}, parents, [](std::span<const Symbol> pa) {
            return deterministic_row(2, static_cast<Symbol>(pa[0] ^ pa[1]));
        });
        chain.set_mechanism({E, t}, parents, [](std::span<const Symbol>) { return uniform_row(2); });
    }
    return chain;
}

MarkovChain ca2_chain() {
    constexpr int A = 0, B = 1;
    MarkovChain chain({"a", "b"}, 1, kBinary);
    chain.set_mechanism({A, 0}, {}, uniform_row(2));
    chain.set_mechanism({B, 0}, {}, uniform_row(2));
    chain.set_mechanism({A, 1}, {{A, 0}, {B, 0}}, [](std::span<const Symbol> pa) {
        return deterministic_row(2, static_cast<Symbol>(pa[0] | pa[1]));
    });
    chain.set_mechanism({B, 1}, {}, uniform_row(2));
    return chain;
}

MarkovChain copy_paloop_chain() {
    constexpr int M = 0, E = 1;
    MarkovChain chain({"M", "E"}, 2, kBinary);
    for (int t = 0; t <= 2; ++t) chain.set_alphabet({E, t}, {"0"});
    chain.set_mechanism({M, 0}, {}, deterministic_row(2, 0));
    chain.set_mechanism({E, 0}, {}, deterministic_row(1, 0));
    for (int t = 1; t <= 2; ++t) {
        const std::vector<VarIndex> parents{{M, t - 1}, {E, t - 1}};
        chain.set_mechanism({M, t}, parents, [](std::span<const Symbol> pa) { return deterministic_row(2, pa[0]); });
        chain.set_mechanism({E, t}, parents, [](std::span<const Symbol>) { return deterministic_row(1, 0); });
    }
    return chain;
}

MarkovChain blind_paloop_chain() {
    constexpr int M = 0, E = 1;
    MarkovChain chain({"M", "E"}, 2, kBinary);
    chain.set_mechanism({M, 0}, {}, uniform_row(2));
    chain.set_mechanism({E, 0}, {}, uniform_row(2));
    for (int t = 1; t <= 2; ++t) {
        const std::vector<VarIndex> parents{{M, t - 1}, {E, t - 1}};
        chain.set_mechanism({M, t}, parents, [](std::span<const Symbol>) { return uniform_row(2); });
        chain.set_mechanism({E, t}, parents, [](std::span<const Symbol> pa) {
            return deterministic_row(2, static_cast<Symbol>(pa[0] ^ pa[1]));
        });
    }
    return chain;
}

const std::vector<std::string_view>& names() {
    static const std::vector<std::string_view> kNames{"copy", "pa", "ca2", "copy-paloop", "blind-paloop"};
    return kNames;
}

MarkovChain by_name(std::string_view name) {
    if (name == "copy") return copy_chain();
    if (name == "pa") return pa_chain();
    if (name == "ca2") return ca2_chain();
    if (name == "copy-paloop") return copy_paloop_chain();
    if (name == "blind-paloop") return blind_paloop_chain();
    throw DomainError(ErrorKind::UnknownFixture, "unknown fixture '" + std::string{name} + "'",
                      Json{{"known", names()}});
}

}  // namespace agency::fixtures
