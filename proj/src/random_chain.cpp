#include "agency/random_chain.hpp"

#include <algorithm>
#include <string>

namespace agency {

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<std::string> symbols(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
}

void random_alphabets(std::mt19937_64& rng, MarkovChain& chain, int max_alphabet) {
    for (const auto v : chain.variables())
        chain.set_alphabet(v, symbols(static_cast<std::size_t>(uniform_int(rng, 1, max_alphabet))));
}

}  // namespace

std::vector<Rational> random_row(std::mt19937_64& rng, std::size_t size, int max_denominator,
                                 double deterministic_fraction) {
    if (size == 1 || std::bernoulli_distribution(deterministic_fraction)(rng))
        return deterministic_row(size, static_cast<Symbol>(uniform_int(rng, 0, static_cast<int>(size) - 1)));
    // Split d into `size` parts with uniformly placed cut points.
    const int d = uniform_int(rng, 1, max_denominator);
    std::vector<int> cuts{0, d};
    for (std::size_t i = 1; i < size; ++i) cuts.push_back(uniform_int(rng, 0, d));
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rational> row;
    for (std::size_t i = 0; i < size; ++i) row.push_back(Rational(cuts[i + 1] - cuts[i], d));
    return row;
}

MarkovChain random_chain(std::uint64_t seed, const RandomChainOptions& options) {
    std::mt19937_64 rng(seed);
    const int n = uniform_int(rng, 1, options.max_spatial);
    std::vector<std::string> labels;
    for (int j = 0; j < n; ++j) labels.push_back("x" + std::to_string(j));
    MarkovChain chain(labels, uniform_int(rng, 0, options.max_t), {"0"});
    random_alphabets(rng, chain, options.max_alphabet);
    for (const auto v : chain.variables()) {
        std::vector<VarIndex> parents;
        if (v.t > 0)
            for (int j = 0; j < n; ++j)
                if (std::bernoulli_distribution(0.5)(rng)) parents.push_back({j, v.t - 1});
        const auto size = chain.alphabet_size(v);
        chain.set_mechanism(v, parents, [&](std::span<const Symbol>) {
            return random_row(rng, size, options.max_denominator, options.deterministic_fraction);
        });
    }
    return chain;
}

MarkovChain random_paloop_chain(std::uint64_t seed, const RandomPaLoopOptions& options) {
    std::mt19937_64 rng(seed);
    MarkovChain chain({"M", "E"}, uniform_int(rng, 1, options.max_t), {"0"});
    random_alphabets(rng, chain, options.max_alphabet);
    for (const auto v : chain.variables()) {
        std::vector<VarIndex> parents;
        if (v.t > 0) parents = {{0, v.t - 1}, {1, v.t - 1}};
        const auto size = chain.alphabet_size(v);
        chain.set_mechanism(v, parents, [&](std::span<const Symbol>) {
            return random_row(rng, size, options.max_denominator, options.deterministic_fraction);
        });
    }
    return chain;
}

}  // namespace agency
