#pragma once

#include <string>

#include "ltlmod/oracle/analysis.hpp"

namespace ltlmod {

struct Theorem1Row {
    double gamma_f = 0.0;
    double r_f = 0.0;
    double u0 = 0.0;
    std::vector<double> reach; // max reachability of each accepting family
    double gap = 0.0;          // min_i |u0 - reach_i|
    bool in_hull = false;      // u0 within [min_i reach_i - gap_tol, max_i + gap_tol]
};

struct Theorem1Result {
    std::vector<Theorem1Row> rows;
    bool gap_monotone = false; // non-increasing along the sweep
};

// Sweep gamma_F with r_F = 1 - 10*(1-gamma_F), value-iterate, and compare
// U(x0) against the maximal reachability of each accepting family.
Theorem1Result check_theorem1(const FiniteMdp& mdp, const Ldgba& a,
                              const std::vector<double>& gamma_sweep);

struct ShapingInvarianceResult {
    bool pass = false;
    int states = 0;
    int mismatches = 0;
    std::vector<int> mismatch_nodes;
};

// Base-vs-shaped value iteration on the shaping-extended product; passes
// when the greedy argmax sets coincide at every node (value tolerance
// `set_tol` before set extraction).
ShapingInvarianceResult check_shaping_invariance(const FiniteMdp& mdp, const Ldgba& a,
                                                 const RewardParams& params,
                                                 double set_tol = 1e-9);

struct Theorem3Result {
    bool pass = false;
    double greedy_reach = 0.0; // exact AMEC reachability of the greedy policy
    double max_reach = 0.0;    // maximal AMEC reachability
    int amec_count = 0;
    int nmec_count = 0;
    int rmec_count = 0;
};

// Greedy policy at (gamma_F, r_F) must reach the union of AMEC states with
// probability within `tol` of the maximum.
Theorem3Result check_theorem3(const FiniteMdp& mdp, const Ldgba& a,
                              const RewardParams& params, double tol = 0.05);

struct Lemma1SweepResult {
    bool pass = false;
    int policies = 0;
    int violations = 0;
};

// Random deterministic policies on the product: every recurrent class must
// intersect all accepting families or none.
Lemma1SweepResult check_lemma1_random(const FiniteEpmdp& p, int num_policies, uint64_t seed);

struct MonteCarloResult {
    bool pass = false;
    double vi_value = 0.0;
    double mc_mean = 0.0;
    double mc_stderr = 0.0;
    double z = 0.0; // |mc - vi| in standard errors
};

// Greedy-policy rollouts vs the value-iteration fixed point at x0.
MonteCarloResult check_monte_carlo(const FiniteEpmdp& p, const RewardParams& params,
                                   int rollouts, int horizon, uint64_t seed,
                                   double z_limit = 3.0);

} // namespace ltlmod
