#pragma once

#include <cstdint>

namespace ltlmod {

// Indices of accepting sets not yet visited in the current round, as a
// bitmask over {0..f-1}.
using Frontier = uint32_t;

inline Frontier full_frontier(int f) {
    return f >= 32 ? ~Frontier(0) : ((Frontier(1) << f) - 1);
}

struct FrontierUpdate {
    Frontier next;
    bool round_completed; // raised exactly when a visiting round finishes
};

// One visit of an automaton state whose accepting-set membership is
// `member_mask`.  Sets containing the state are cleared from the frontier;
// clearing the last pending set completes the round, which resets the
// frontier to the full family so every set has to be re-visited, and raises
// the flag.  A visit against an already-empty frontier (possible only for
// hand-built values, the closed-loop dynamics never rest at empty) starts a
// fresh round with the visited sets pre-cleared.
FrontierUpdate frontier_update(uint32_t member_mask, Frontier t, int f);

} // namespace ltlmod
