#pragma once

#include <cstdint>
#include <vector>

#include "ltlmod/oracle/finite_mdp.hpp"
#include "ltlmod/product/frontier.hpp"
#include "ltlmod/reward/shaping.hpp"

namespace ltlmod {

// Explicit product node.  `t` is the arrival frontier (the value the
// tracking set held when the node was entered, before the node's own
// update), which makes both the node's acceptance and its departure
// frontier intrinsic.  `t_phi` joins the key only in the shaping-extended
// build.
struct ProductNode {
    int s = 0;
    int q = 0;
    Frontier t = 0;
    uint64_t t_phi = 0;
};

// One action available at a product node: either an environment action or
// an eps-move.  The shaped reward of a transition depends only on
// (node, successor automaton state), hence one value per choice.
struct ProductChoice {
    int env_action = -1; // >= 0 for environment actions
    int eps_target = -1; // >= 0 for eps-moves
    std::vector<std::pair<int, double>> succ;
    double shaped_reward = 0.0;
};

struct BuildOptions {
    bool frontier_enabled = true;  // false reproduces the plain product (no tracking)
    bool extend_shaping = false;   // key nodes by the shaping frontier too
    RewardParams params;           // used for shaped edge rewards
    size_t max_nodes = 100000;
};

struct FiniteEpmdp {
    std::vector<ProductNode> nodes;
    std::vector<std::vector<ProductChoice>> choices;
    std::vector<uint32_t> acc_mask; // arrival acceptance indices per node
    std::vector<char> sink;         // automaton component is a non-accepting sink
    std::vector<char> reject;       // absorbing dead-end node
    int f = 0;
    int initial = 0;
    uint32_t full_mask = 0;

    int num_nodes() const { return static_cast<int>(nodes.size()); }
    bool accepting(int node) const { return acc_mask[node] != 0; }
};

// Breadth-first closure of the reachable product.  Requires the automaton's
// initial state to be non-accepting (the run construction never applies the
// frontier update to it, so this keeps explicit and on-the-fly semantics
// identical).  A reachable automaton dead end materializes as one absorbing
// reject node.
FiniteEpmdp build_product(const FiniteMdp& mdp, const Ldgba& a, const BuildOptions& opts = {});

} // namespace ltlmod
