#include "ltlmod/oracle/epmdp.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace ltlmod {

namespace {

struct NodeKeyHash {
    size_t operator()(const ProductNode& n) const {
        uint64_t h = 0xCBF29CE484222325ull;
        auto mix = [&](uint64_t v) {
            h ^= v;
            h *= 0x100000001B3ull;
        };
        mix(static_cast<uint64_t>(n.s));
        mix(static_cast<uint64_t>(n.q) << 20);
        mix(static_cast<uint64_t>(n.t) << 40);
        mix(n.t_phi * 0x9E3779B97F4A7C15ull);
        return static_cast<size_t>(h);
    }
};

struct NodeKeyEq {
    bool operator()(const ProductNode& a, const ProductNode& b) const {
        return a.s == b.s && a.q == b.q && a.t == b.t && a.t_phi == b.t_phi;
    }
};

} // namespace

FiniteEpmdp build_product(const FiniteMdp& mdp, const Ldgba& a, const BuildOptions& opts) {
    mdp.validate();
    const int f = a.num_accepting_sets();
    if (a.accept_mask[a.initial] != 0)
        throw std::invalid_argument(
            "explicit product requires a non-accepting automaton initial state");

    FiniteEpmdp p;
    p.f = f;
    p.full_mask = full_frontier(f);
    const auto sinks = detect_sinks(a);
    const ShapingState shaping0 = make_shaping_state(a, sinks);

    // label masks per environment state
    std::vector<Label> state_label(mdp.num_states);
    for (int s = 0; s < mdp.num_states; ++s) {
        Label l = 0;
        for (const auto& prop : mdp.labels[s]) {
            const int idx = a.alphabet.index_of(prop);
            if (idx >= 0) l |= (Label(1) << idx);
        }
        state_label[s] = l;
    }

    std::unordered_map<ProductNode, int, NodeKeyHash, NodeKeyEq> index;
    std::deque<int> work; // work queue of node indices
    int reject_node = -1;

    auto intern = [&](const ProductNode& n) {
        auto it = index.find(n);
        if (it != index.end()) return it->second;
        if (p.nodes.size() >= opts.max_nodes)
            throw std::runtime_error("product exceeds the node cap (" +
                                     std::to_string(opts.max_nodes) + ")");
        const int id = static_cast<int>(p.nodes.size());
        index.emplace(n, id);
        p.nodes.push_back(n);
        p.acc_mask.push_back(a.accept_mask[n.q] & n.t);
        p.sink.push_back(sinks.count(n.q) ? 1 : 0);
        p.reject.push_back(0);
        p.choices.emplace_back();
        work.push_back(id);
        return id;
    };

    auto get_reject = [&]() {
        if (reject_node >= 0) return reject_node;
        const int id = static_cast<int>(p.nodes.size());
        p.nodes.push_back(ProductNode{-1, -1, 0, 0});
        p.acc_mask.push_back(0);
        p.sink.push_back(1);
        p.reject.push_back(1);
        p.choices.emplace_back();
        ProductChoice self;
        self.env_action = 0;
        self.succ = {{id, 1.0}};
        self.shaped_reward = 0.0;
        p.choices[id].push_back(std::move(self));
        reject_node = id;
        return id;
    };

    ProductNode init{mdp.initial, a.initial, p.full_mask,
                     opts.extend_shaping ? shaping0.t_phi : 0};
    p.initial = intern(init);

    const RewardParams& rp = opts.params;
    while (!work.empty()) {
        const int id = work.front();
        work.pop_front();
        const ProductNode node = p.nodes[id]; // copy: p.nodes may reallocate
        if (p.reject[id]) continue;

        const bool node_acc = (p.acc_mask[id] != 0);
        const ShapingState node_shaping{node.t_phi, shaping0.t_phi0};

        // departure frontier after this node's own visit
        Frontier t_dep = node.t;
        if (opts.frontier_enabled)
            t_dep = frontier_update(a.accept_mask[node.q], node.t, f).next;

        auto successor = [&](int s_next, int q_next) {
            ProductNode n;
            n.s = s_next;
            n.q = q_next;
            if (opts.frontier_enabled) {
                n.t = t_dep;
            } else {
                n.t = node.t;
            }
            if (opts.extend_shaping) {
                const bool flag =
                    opts.frontier_enabled
                        ? frontier_update(a.accept_mask[q_next], t_dep, f).round_completed
                        : false;
                n.t_phi = fphi_update(q_next, node_shaping, flag).t_phi;
            }
            return intern(n);
        };

        auto shaped = [&](int q_next) {
            if (!opts.extend_shaping) return 0.0;
            return shaped_reward_value(node_acc, node.q, q_next, node_shaping, rp);
        };

        const Label l = state_label[node.s];
        std::optional<int> q_next;
        try {
            q_next = automaton_step(a, node.q, l);
        } catch (const AmbiguousStepError&) {
            throw std::invalid_argument(
                "explicit product requires label-deterministic guard steps; state " +
                a.states[node.q] + " is ambiguous");
        }

        for (int act = 0; act < mdp.num_actions; ++act) {
            if (mdp.dist[node.s][act].empty()) continue;
            ProductChoice c;
            c.env_action = act;
            if (q_next) {
                for (const auto& [s_next, prob] : mdp.dist[node.s][act])
                    c.succ.emplace_back(successor(s_next, *q_next), prob);
                c.shaped_reward = shaped(*q_next);
            } else {
                c.succ = {{get_reject(), 1.0}};
                c.shaped_reward =
                    opts.extend_shaping
                        ? base_reward_value(node_acc, rp) - potential(node.q, node_shaping, rp)
                        : 0.0;
            }
            p.choices[id].push_back(std::move(c));
        }
        for (int target : a.eps_out[node.q]) {
            ProductChoice c;
            c.eps_target = target;
            c.succ = {{successor(node.s, target), 1.0}};
            c.shaped_reward = shaped(target);
            p.choices[id].push_back(std::move(c));
        }
        if (p.choices[id].empty()) {
            // no environment action and no eps: absorbing dead end
            ProductChoice c;
            c.env_action = 0;
            c.succ = {{get_reject(), 1.0}};
            p.choices[id].push_back(std::move(c));
        }
    }
    return p;
}

} // namespace ltlmod
