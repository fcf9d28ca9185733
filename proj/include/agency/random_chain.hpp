#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "agency/chain.hpp"

namespace agency {

struct RandomChainOptions {
    int max_spatial = 3;
    int max_t = 2;
    int max_alphabet = 3;
    int max_denominator = 16;
    double deterministic_fraction = 0.3;
};

struct RandomPaLoopOptions {
    int max_t = 3;
    int max_alphabet = 3;
    int max_denominator = 16;
    double deterministic_fraction = 0.3;
};

/// A probability row of length `size` with entries k/d, d <= max_denominator;
/// with probability `deterministic_fraction` a single entry is 1.
std::vector<Rational> random_row(std::mt19937_64& rng, std::size_t size, int max_denominator,
                                 double deterministic_fraction);

/// Random valid chain: labels "x0".., T_max in 0..max_t, per-variable alphabet
/// sizes in 1..max_alphabet, parents a random subset of the previous slice.
MarkovChain random_chain(std::uint64_t seed, const RandomChainOptions& options = {});

/// Random PA-loop over {M, E} with T_max in 1..max_t and per-variable alphabet
/// sizes in 1..max_alphabet.
MarkovChain random_paloop_chain(std::uint64_t seed, const RandomPaLoopOptions& options = {});

}  // namespace agency
