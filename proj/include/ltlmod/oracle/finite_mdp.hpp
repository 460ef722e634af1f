#pragma once

#include <string>
#include <vector>

#include "ltlmod/automaton/ldgba.hpp"

namespace ltlmod {

// Explicit finite labeled MDP for the verification oracle.  `actions` is
// the global action count; an action with no distribution at a state is
// unavailable there.
struct FiniteMdp {
    int num_states = 0;
    int num_actions = 0;
    // dist[s][a]: list of (successor, probability); empty = unavailable
    std::vector<std::vector<std::vector<std::pair<int, double>>>> dist;
    std::vector<std::vector<std::string>> labels;
    int initial = 0;

    void validate() const; // throws on bad rows (sum != 1 within 1e-12) etc.
};

FiniteMdp load_finite_mdp(const std::string& path);
FiniteMdp finite_mdp_from_json_text(const std::string& text);
std::string finite_mdp_to_json_text(const FiniteMdp& m);

} // namespace ltlmod
