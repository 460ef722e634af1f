#include "ltlmod/oracle/checks.hpp"

#include <cmath>

namespace ltlmod {

Theorem1Result check_theorem1(const FiniteMdp& mdp, const Ldgba& a,
                              const std::vector<double>& gamma_sweep) {
    Theorem1Result res;
    for (double gamma : gamma_sweep) {
        RewardParams params;
        params.gamma_f = gamma;
        params.r_f = 1.0 - 10.0 * (1.0 - gamma); // keeps (1-gamma_F)/(1-r_F) = 0.1
        params.validate();

        const FiniteEpmdp p = build_product(mdp, a, {});
        const ValueTable vt = value_iteration(p, params, {1e-12, 20000000, false, true});

        Theorem1Row row;
        row.gamma_f = gamma;
        row.r_f = params.r_f;
        row.u0 = vt.u[p.initial];
        double lo = 1.0, hi = 0.0;
        row.gap = 1e300;
        for (int j = 0; j < p.f; ++j) {
            std::vector<char> target(p.num_nodes(), 0);
            for (int v = 0; v < p.num_nodes(); ++v)
                if (p.acc_mask[v] & (1u << j)) target[v] = 1;
            const auto reach = max_reach_probability(p, target);
            const double rj = reach[p.initial];
            row.reach.push_back(rj);
            lo = std::min(lo, rj);
            hi = std::max(hi, rj);
            row.gap = std::min(row.gap, std::abs(row.u0 - rj));
        }
        row.in_hull = row.u0 >= lo - row.gap && row.u0 <= hi + row.gap;
        res.rows.push_back(row);
    }
    res.gap_monotone = true;
    for (size_t i = 1; i < res.rows.size(); ++i)
        if (res.rows[i].gap > res.rows[i - 1].gap) res.gap_monotone = false;
    return res;
}

ShapingInvarianceResult check_shaping_invariance(const FiniteMdp& mdp, const Ldgba& a,
                                                 const RewardParams& params,
                                                 double set_tol) {
    BuildOptions opts;
    opts.extend_shaping = true;
    opts.params = params;
    const FiniteEpmdp p = build_product(mdp, a, opts);

    const ValueTable base = value_iteration(p, params, {1e-12, 20000000, false, true});
    const ValueTable shaped = value_iteration(p, params, {1e-12, 20000000, true, true});

    const auto base_sets = greedy_sets(p, params, base.u, set_tol, false);
    const auto shaped_sets = greedy_sets(p, params, shaped.u, set_tol, true);

    ShapingInvarianceResult res;
    res.states = p.num_nodes();
    for (int v = 0; v < p.num_nodes(); ++v) {
        if (base_sets[v] != shaped_sets[v]) {
            ++res.mismatches;
            res.mismatch_nodes.push_back(v);
        }
    }
    res.pass = res.mismatches == 0;
    return res;
}

Theorem3Result check_theorem3(const FiniteMdp& mdp, const Ldgba& a,
                              const RewardParams& params, double tol) {
    const FiniteEpmdp p = build_product(mdp, a, {});
    const ValueTable vt = value_iteration(p, params, {1e-12, 20000000, false, true});

    Theorem3Result res;
    const auto mecs = mec_decomposition(p);
    std::vector<char> amec_states(p.num_nodes(), 0);
    for (const auto& m : mecs) {
        switch (classify_mec(p, m)) {
        case MecClass::AMEC:
            ++res.amec_count;
            for (int v : m.states) amec_states[v] = 1;
            break;
        case MecClass::NMEC: ++res.nmec_count; break;
        case MecClass::RMEC: ++res.rmec_count; break;
        }
    }

    const auto max_reach = max_reach_probability(p, amec_states);
    const auto greedy_reach = policy_reach_probability(p, vt.greedy, amec_states);
    res.max_reach = max_reach[p.initial];
    res.greedy_reach = greedy_reach[p.initial];
    res.pass = std::abs(res.max_reach - res.greedy_reach) <= tol;
    return res;
}

Lemma1SweepResult check_lemma1_random(const FiniteEpmdp& p, int num_policies,
                                      uint64_t seed) {
    Lemma1SweepResult res;
    res.policies = num_policies;
    Rng rng(seed);
    for (int i = 0; i < num_policies; ++i) {
        const auto policy = random_policy(p, rng);
        if (!check_lemma1(p, policy).pass) ++res.violations;
    }
    res.pass = res.violations == 0;
    return res;
}

MonteCarloResult check_monte_carlo(const FiniteEpmdp& p, const RewardParams& params,
                                   int rollouts, int horizon, uint64_t seed,
                                   double z_limit) {
    const ValueTable vt = value_iteration(p, params, {1e-12, 20000000, false, true});
    MonteCarloResult res;
    res.vi_value = vt.u[p.initial];

    Rng rng(seed);
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < rollouts; ++i) {
        const double d = sample_return(p, vt.greedy, horizon, params, rng);
        sum += d;
        sumsq += d * d;
    }
    res.mc_mean = sum / rollouts;
    const double var = std::max(0.0, sumsq / rollouts - res.mc_mean * res.mc_mean);
    res.mc_stderr = std::sqrt(var / rollouts);
    const double denom = res.mc_stderr > 0.0 ? res.mc_stderr : 1e-300;
    res.z = std::abs(res.mc_mean - res.vi_value) / denom;
    res.pass = res.mc_stderr > 0.0 ? (res.z <= z_limit)
                                   : std::abs(res.mc_mean - res.vi_value) < 1e-9;
    return res;
}

} // namespace ltlmod
