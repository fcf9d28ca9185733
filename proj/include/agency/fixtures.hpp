#pragma once

#include <string_view>
#include <vector>

#include "agency/chain.hpp"

namespace agency::fixtures {

/// J={a}, T={0,1,2}, binary; a@0 = 0 surely, then each node copies its parent.
MarkovChain copy_chain();

/// PA-loop over J={M,E}, T={0,1,2}, binary. M@0, E@0 independent uniform;
/// M@t+1 = M@t xor E@t; E@t+1 a fresh fair coin wired to both parents.
MarkovChain pa_chain();

/// J={a,b}, T={0,1}, binary. (a@0, b@0) independent uniform;
/// a@1 = a@0 or b@0; b@1 a fair coin.
MarkovChain ca2_chain();

/// copy_chain recast as a PA-loop: M copies itself from M@0 = 0 and E has a
/// single-symbol alphabet.
MarkovChain copy_paloop_chain();

/// PA-loop whose memory mechanism ignores the environment (M@t+1 a fair coin)
/// while E@t+1 = E@t xor M@t.
MarkovChain blind_paloop_chain();

/// Names accepted by by_name: "copy", "pa", "ca2", "copy-paloop", "blind-paloop".
const std::vector<std::string_view>& names();
/// Throws DomainError(UnknownFixture).
MarkovChain by_name(std::string_view name);

}  // namespace agency::fixtures
