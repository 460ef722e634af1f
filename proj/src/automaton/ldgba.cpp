#include "ltlmod/automaton/ldgba.hpp"

#include <algorithm>
#include <functional>

namespace ltlmod {

void Ldgba::finalize() {
    const int n = num_states();
    out_edges.assign(n, {});
    eps_out.assign(n, {});
    accept_mask.assign(n, 0);
    for (size_t i = 0; i < edges.size(); ++i)
        out_edges[edges[i].src].push_back(static_cast<int>(i));
    for (const auto& e : eps_edges)
        eps_out[e.src].push_back(e.dst);
    for (size_t j = 0; j < accepting_sets.size(); ++j)
        for (int q : accepting_sets[j])
            accept_mask[q] |= (1u << j);
}

int Ldgba::state_index(const std::string& id) const {
    for (size_t i = 0; i < states.size(); ++i)
        if (states[i] == id) return static_cast<int>(i);
    return -1;
}

bool Ldgba::structurally_equal(const Ldgba& o) const {
    return states == o.states && initial == o.initial && alphabet == o.alphabet &&
           deterministic == o.deterministic && edges == o.edges &&
           eps_edges == o.eps_edges && accepting_sets == o.accepting_sets;
}

bool ValidationReport::structurally_sound() const {
    for (const auto& v : violations)
        if (v.clause != "deterministic-totality") return false;
    return true;
}

ValidationReport validate(const Ldgba& a) {
    ValidationReport rep;
    auto add = [&](std::string clause, std::string detail) {
        rep.violations.push_back({std::move(clause), std::move(detail)});
    };

    const int n = a.num_states();
    if (a.initial < 0 || a.initial >= n) add("initial-state", "initial state index out of range");
    if (a.accepting_sets.empty()) add("accepting-family-nonempty", "no accepting sets declared");

    for (const auto& e : a.eps_edges)
        if (e.src >= 0 && e.src < n && a.deterministic[e.src])
            add("no-eps-from-deterministic",
                "eps edge " + a.states[e.src] + " -> " + a.states[e.dst]);

    for (size_t j = 0; j < a.accepting_sets.size(); ++j)
        for (int q : a.accepting_sets[j])
            if (q < 0 || q >= n || !a.deterministic[q])
                add("accepting-in-deterministic",
                    "accepting set " + std::to_string(j + 1) + " contains " +
                        (q >= 0 && q < n ? a.states[q] : std::string("<bad index>")));

    for (const auto& e : a.edges) {
        if (e.src >= 0 && e.src < n && e.dst >= 0 && e.dst < n &&
            a.deterministic[e.src] && !a.deterministic[e.dst])
            add("deterministic-closed",
                "edge " + a.states[e.src] + " -> " + a.states[e.dst] +
                    " leaves the deterministic part");
    }

    const int nprops = a.alphabet.size();
    if (nprops > 16)
        throw std::runtime_error("totality check infeasible: alphabet has " +
                                 std::to_string(nprops) + " propositions (limit 16)");

    const Label top = Label(1) << nprops;
    for (int q = 0; q < n; ++q) {
        if (!a.deterministic[q]) continue;
        for (Label l = 0; l < top; ++l) {
            int fired = 0;
            for (int ei : a.out_edges[q])
                if (eval_guard(a.edges[ei].guard, l)) ++fired;
            if (fired == 0)
                add("deterministic-totality",
                    "state " + a.states[q] + " has no transition under {" +
                        [&] {
                            std::string s;
                            for (const auto& p : a.alphabet.props_of(l)) {
                                if (!s.empty()) s += ",";
                                s += p;
                            }
                            return s;
                        }() +
                        "}");
            else if (fired > 1)
                add("deterministic-unique",
                    "state " + a.states[q] + " has " + std::to_string(fired) +
                        " satisfied guards under some label");
        }
    }
    return rep;
}

namespace {

struct SccResult {
    std::vector<int> comp;   // state -> component id
    int count = 0;
};

// iterative Tarjan over an adjacency list
SccResult tarjan(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    SccResult res;
    res.comp.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0), stack, call_state(n, 0);
    std::vector<char> on_stack(n, 0);
    int next_index = 0;

    std::vector<std::pair<int, size_t>> frames;
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        frames.push_back({root, 0});
        while (!frames.empty()) {
            auto& [v, ei] = frames.back();
            if (ei == 0) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            bool descended = false;
            while (ei < adj[v].size()) {
                const int w = adj[v][ei++];
                if (index[w] == -1) {
                    frames.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                while (true) {
                    const int w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    res.comp[w] = res.count;
                    if (w == v) break;
                }
                ++res.count;
            }
            frames.pop_back();
            if (!frames.empty()) {
                const int parent = frames.back().first;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    return res;
}

} // namespace

std::set<int> detect_sinks(const Ldgba& a) {
    const int n = a.num_states();
    const int nprops = a.alphabet.size();
    const uint32_t full = a.accepting_sets.empty()
                              ? 0
                              : (a.accepting_sets.size() >= 32
                                     ? ~0u
                                     : ((1u << a.accepting_sets.size()) - 1));

    // edge present iff its guard can fire at all
    std::vector<std::vector<int>> adj(n);
    std::vector<char> self_loop(n, 0);
    for (const auto& e : a.edges) {
        if (!guard_satisfiable(e.guard, nprops)) continue;
        adj[e.src].push_back(e.dst);
        if (e.src == e.dst) self_loop[e.src] = 1;
    }
    for (const auto& e : a.eps_edges) {
        adj[e.src].push_back(e.dst);
        if (e.src == e.dst) self_loop[e.src] = 1;
    }

    const SccResult scc = tarjan(adj);

    std::vector<int> comp_size(scc.count, 0);
    std::vector<char> comp_self(scc.count, 0);
    std::vector<uint32_t> comp_accept(scc.count, 0);
    for (int q = 0; q < n; ++q) {
        const int c = scc.comp[q];
        comp_size[c]++;
        if (self_loop[q]) comp_self[c] = 1;
        comp_accept[c] |= a.accept_mask[q];
    }

    std::vector<char> good(n, 0);
    for (int q = 0; q < n; ++q) {
        const int c = scc.comp[q];
        const bool has_internal_edge = comp_size[c] > 1 || comp_self[c];
        if (has_internal_edge && comp_accept[c] == full && full != 0) good[q] = 1;
    }

    // propagate goodness backwards: a state reaching a good SCC is not a sink
    std::vector<std::vector<int>> radj(n);
    for (int q = 0; q < n; ++q)
        for (int w : adj[q]) radj[w].push_back(q);
    std::vector<int> queue;
    for (int q = 0; q < n; ++q)
        if (good[q]) queue.push_back(q);
    while (!queue.empty()) {
        const int v = queue.back();
        queue.pop_back();
        for (int w : radj[v])
            if (!good[w]) {
                good[w] = 1;
                queue.push_back(w);
            }
    }

    std::set<int> sinks;
    for (int q = 0; q < n; ++q)
        if (!good[q]) sinks.insert(q);
    return sinks;
}

std::optional<int> automaton_step(const Ldgba& a, int q, Label label) {
    int found = -1;
    for (int ei : a.out_edges[q]) {
        if (!eval_guard(a.edges[ei].guard, label)) continue;
        if (found >= 0)
            throw AmbiguousStepError("state " + a.states[q] +
                                     ": multiple guards satisfied under one label");
        found = a.edges[ei].dst;
    }
    if (found < 0) return std::nullopt;
    return found;
}

} // namespace ltlmod
