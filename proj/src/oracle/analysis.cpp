#include "ltlmod/oracle/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ltlmod {

namespace {

double choice_backup(const FiniteEpmdp& p, const RewardParams& params,
                     const std::vector<double>& u, int node, const ProductChoice& c,
                     bool use_shaped) {
    const bool acc = p.accepting(node);
    const double r = use_shaped ? c.shaped_reward : base_reward_value(acc, params);
    const double g = discount_value(acc, params);
    double exp_next = 0.0;
    for (const auto& [succ, prob] : c.succ) exp_next += prob * u[succ];
    return r + g * exp_next;
}

// Tarjan SCC over an explicit adjacency list
struct Scc {
    std::vector<int> comp;
    int count = 0;
};

Scc scc_of(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    Scc res;
    res.comp.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0), stack;
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

ValueTable value_iteration(const FiniteEpmdp& p, const RewardParams& params,
                           const ValueIterationOptions& opts) {
    const int n = p.num_nodes();
    ValueTable vt;
    vt.u.assign(n, 0.0);
    std::vector<double> next(n, 0.0);
    for (long long it = 0; it < opts.max_iters; ++it) {
        double delta = 0.0;
        for (int v = 0; v < n; ++v) {
            double best = 0.0;
            bool first = true;
            for (const auto& c : p.choices[v]) {
                const double val = choice_backup(p, params, vt.u, v, c,
                                                 opts.use_shaped_rewards);
                if (first || val > best) {
                    best = val;
                    first = false;
                }
            }
            next[v] = first ? 0.0 : best;
            delta = std::max(delta, std::abs(next[v] - vt.u[v]));
        }
        vt.u.swap(next);
        vt.residuals.push_back(delta);
        ++vt.iterations;
        if (delta < opts.tol) {
            vt.converged = true;
            break;
        }
    }
    if (!vt.converged && opts.throw_on_nonconvergence)
        throw std::runtime_error("value iteration did not converge; residual " +
                                 std::to_string(vt.residuals.back()));

    vt.greedy.assign(n, 0);
    for (int v = 0; v < n; ++v) {
        double best = -1.0;
        for (size_t ci = 0; ci < p.choices[v].size(); ++ci) {
            const double val =
                choice_backup(p, params, vt.u, v, p.choices[v][ci], opts.use_shaped_rewards);
            if (val > best) {
                best = val;
                vt.greedy[v] = static_cast<int>(ci);
            }
        }
    }
    return vt;
}

std::vector<std::vector<int>> greedy_sets(const FiniteEpmdp& p, const RewardParams& params,
                                          const std::vector<double>& u, double tol,
                                          bool use_shaped_rewards) {
    std::vector<std::vector<int>> sets(p.num_nodes());
    for (int v = 0; v < p.num_nodes(); ++v) {
        double best = -1e300;
        std::vector<double> vals(p.choices[v].size());
        for (size_t ci = 0; ci < p.choices[v].size(); ++ci) {
            vals[ci] = choice_backup(p, params, u, v, p.choices[v][ci], use_shaped_rewards);
            best = std::max(best, vals[ci]);
        }
        for (size_t ci = 0; ci < vals.size(); ++ci)
            if (vals[ci] >= best - tol) sets[v].push_back(static_cast<int>(ci));
    }
    return sets;
}

std::vector<Mec> mec_decomposition(const FiniteEpmdp& p) {
    const int n = p.num_nodes();
    std::vector<char> alive(n, 1);
    std::vector<std::vector<char>> choice_alive(n);
    for (int v = 0; v < n; ++v) choice_alive[v].assign(p.choices[v].size(), 1);

    bool changed = true;
    std::vector<int> comp(n, -1);
    while (changed) {
        changed = false;
        std::vector<std::vector<int>> adj(n);
        for (int v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            for (size_t ci = 0; ci < p.choices[v].size(); ++ci) {
                if (!choice_alive[v][ci]) continue;
                for (const auto& [succ, prob] : p.choices[v][ci].succ)
                    if (prob > 0.0) adj[v].push_back(succ);
            }
        }
        const Scc scc = scc_of(adj);
        comp = scc.comp;
        for (int v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            bool any = false;
            for (size_t ci = 0; ci < p.choices[v].size(); ++ci) {
                if (!choice_alive[v][ci]) continue;
                bool stays = true;
                for (const auto& [succ, prob] : p.choices[v][ci].succ)
                    if (prob > 0.0 && (!alive[succ] || comp[succ] != comp[v])) {
                        stays = false;
                        break;
                    }
                if (!stays) {
                    choice_alive[v][ci] = 0;
                    changed = true;
                } else {
                    any = true;
                }
            }
            if (!any) {
                alive[v] = 0;
                changed = true;
            }
        }
    }

    std::vector<Mec> mecs;
    std::vector<int> comp_to_mec;
    for (int v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        const int c = comp[v];
        if (static_cast<int>(comp_to_mec.size()) <= c) comp_to_mec.resize(c + 1, -1);
        if (comp_to_mec[c] < 0) {
            comp_to_mec[c] = static_cast<int>(mecs.size());
            mecs.emplace_back();
        }
        Mec& m = mecs[comp_to_mec[c]];
        m.states.push_back(v);
        std::vector<int> allowed;
        for (size_t ci = 0; ci < p.choices[v].size(); ++ci)
            if (choice_alive[v][ci]) allowed.push_back(static_cast<int>(ci));
        m.allowed.push_back(std::move(allowed));
    }
    return mecs;
}

MecClass classify_mec(const FiniteEpmdp& p, const Mec& m) {
    uint32_t acc = 0;
    for (int v : m.states) acc |= p.acc_mask[v];
    if (acc == p.full_mask && p.full_mask != 0) return MecClass::AMEC;
    if (acc == 0) return MecClass::RMEC;
    return MecClass::NMEC;
}

std::vector<double> max_reach_probability(const FiniteEpmdp& p,
                                          const std::vector<char>& target, double tol) {
    const int n = p.num_nodes();
    // prob-0: states with no path into the target
    std::vector<std::vector<int>> radj(n);
    for (int v = 0; v < n; ++v)
        for (const auto& c : p.choices[v])
            for (const auto& [succ, prob] : c.succ)
                if (prob > 0.0) radj[succ].push_back(v);
    std::vector<char> can_reach(n, 0);
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (target[v]) {
            can_reach[v] = 1;
            queue.push_back(v);
        }
    while (!queue.empty()) {
        const int v = queue.back();
        queue.pop_back();
        for (int w : radj[v])
            if (!can_reach[w]) {
                can_reach[w] = 1;
                queue.push_back(w);
            }
    }

    std::vector<double> prob(n, 0.0), next(n, 0.0);
    for (int v = 0; v < n; ++v)
        if (target[v]) prob[v] = 1.0;
    for (long long it = 0; it < 10000000; ++it) {
        double delta = 0.0;
        for (int v = 0; v < n; ++v) {
            if (target[v]) {
                next[v] = 1.0;
                continue;
            }
            if (!can_reach[v]) {
                next[v] = 0.0;
                continue;
            }
            double best = 0.0;
            for (const auto& c : p.choices[v]) {
                double val = 0.0;
                for (const auto& [succ, pr] : c.succ) val += pr * prob[succ];
                best = std::max(best, val);
            }
            next[v] = best;
            delta = std::max(delta, std::abs(next[v] - prob[v]));
        }
        prob.swap(next);
        if (delta < tol) break;
    }
    return prob;
}

McAnalysis chain_classes(const FiniteEpmdp& p, const std::vector<int>& policy) {
    const int n = p.num_nodes();
    std::vector<char> reach(n, 0);
    std::vector<int> queue{p.initial};
    reach[p.initial] = 1;
    std::vector<std::vector<int>> adj(n);
    while (!queue.empty()) {
        const int v = queue.back();
        queue.pop_back();
        const auto& c = p.choices[v][policy[v]];
        for (const auto& [succ, prob] : c.succ) {
            if (prob <= 0.0) continue;
            adj[v].push_back(succ);
            if (!reach[succ]) {
                reach[succ] = 1;
                queue.push_back(succ);
            }
        }
    }

    const Scc scc = scc_of(adj);
    // a component is recurrent iff no reachable member has an edge out of it
    std::vector<char> closed(scc.count, 1);
    std::vector<char> comp_reachable(scc.count, 0);
    for (int v = 0; v < n; ++v) {
        if (!reach[v]) continue;
        comp_reachable[scc.comp[v]] = 1;
        for (int w : adj[v])
            if (scc.comp[w] != scc.comp[v]) closed[scc.comp[v]] = 0;
    }

    McAnalysis mc;
    std::vector<int> comp_to_class(scc.count, -1);
    for (int v = 0; v < n; ++v) {
        if (!reach[v]) continue;
        const int c = scc.comp[v];
        if (closed[c] && comp_reachable[c]) {
            if (comp_to_class[c] < 0) {
                comp_to_class[c] = static_cast<int>(mc.recurrent_classes.size());
                mc.recurrent_classes.emplace_back();
            }
            mc.recurrent_classes[comp_to_class[c]].push_back(v);
        } else {
            mc.transient.push_back(v);
        }
    }
    return mc;
}

Lemma1Result check_lemma1(const FiniteEpmdp& p, const std::vector<int>& policy) {
    Lemma1Result res;
    const McAnalysis mc = chain_classes(p, policy);
    for (const auto& cls : mc.recurrent_classes) {
        uint32_t acc = 0;
        for (int v : cls) acc |= p.acc_mask[v];
        if (acc != 0 && acc != p.full_mask) {
            res.pass = false;
            res.violations.push_back({cls, acc});
        }
    }
    return res;
}

std::vector<double> policy_reach_probability(const FiniteEpmdp& p,
                                             const std::vector<int>& policy,
                                             const std::vector<char>& target) {
    const int n = p.num_nodes();
    // states that can reach the target under the fixed policy
    std::vector<std::vector<int>> radj(n);
    for (int v = 0; v < n; ++v)
        for (const auto& [succ, prob] : p.choices[v][policy[v]].succ)
            if (prob > 0.0) radj[succ].push_back(v);
    std::vector<char> can(n, 0);
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (target[v]) {
            can[v] = 1;
            queue.push_back(v);
        }
    while (!queue.empty()) {
        const int v = queue.back();
        queue.pop_back();
        for (int w : radj[v])
            if (!can[w]) {
                can[w] = 1;
                queue.push_back(w);
            }
    }

    // unknowns: states with can && !target
    std::vector<int> var_of(n, -1);
    std::vector<int> vars;
    for (int v = 0; v < n; ++v)
        if (can[v] && !target[v]) {
            var_of[v] = static_cast<int>(vars.size());
            vars.push_back(v);
        }
    const int m = static_cast<int>(vars.size());
    std::vector<std::vector<double>> aug(m, std::vector<double>(m + 1, 0.0));
    for (int i = 0; i < m; ++i) {
        const int v = vars[i];
        aug[i][i] = 1.0;
        for (const auto& [succ, prob] : p.choices[v][policy[v]].succ) {
            if (prob <= 0.0) continue;
            if (target[succ])
                aug[i][m] += prob;
            else if (var_of[succ] >= 0)
                aug[i][var_of[succ]] -= prob;
        }
    }
    // Gaussian elimination with partial pivoting
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
        std::swap(aug[piv], aug[col]);
        if (std::abs(aug[col][col]) < 1e-14)
            throw std::runtime_error("singular policy-reachability system");
        const double d = aug[col][col];
        for (int c = col; c <= m; ++c) aug[col][c] /= d;
        for (int r = 0; r < m; ++r) {
            if (r == col || aug[r][col] == 0.0) continue;
            const double factor = aug[r][col];
            for (int c = col; c <= m; ++c) aug[r][c] -= factor * aug[col][c];
        }
    }

    std::vector<double> prob(n, 0.0);
    for (int v = 0; v < n; ++v)
        if (target[v]) prob[v] = 1.0;
    for (int i = 0; i < m; ++i) prob[vars[i]] = aug[i][m];
    return prob;
}

std::vector<int> random_policy(const FiniteEpmdp& p, Rng& rng) {
    std::vector<int> policy(p.num_nodes());
    for (int v = 0; v < p.num_nodes(); ++v)
        policy[v] = static_cast<int>(rng.uniform_index(p.choices[v].size()));
    return policy;
}

double sample_return(const FiniteEpmdp& p, const std::vector<int>& policy, int horizon,
                     const RewardParams& params, Rng& rng) {
    std::vector<char> acc_flags;
    acc_flags.reserve(horizon);
    int v = p.initial;
    for (int t = 0; t < horizon; ++t) {
        acc_flags.push_back(p.accepting(v) ? 1 : 0);
        const auto& c = p.choices[v][policy[v]];
        const double u = rng.uniform();
        double cum = 0.0;
        int chosen = c.succ.back().first;
        for (const auto& [succ, prob] : c.succ) {
            cum += prob;
            if (u < cum) {
                chosen = succ;
                break;
            }
        }
        v = chosen;
    }
    double d = 0.0;
    for (size_t i = acc_flags.size(); i-- > 0;) {
        const bool acc = acc_flags[i];
        d = base_reward_value(acc, params) + discount_value(acc, params) * d;
    }
    return d;
}

} // namespace ltlmod
