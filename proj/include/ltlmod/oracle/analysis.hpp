#pragma once

#include <vector>

#include "ltlmod/oracle/epmdp.hpp"
#include "ltlmod/util/rng.hpp"

namespace ltlmod {

struct ValueTable {
    std::vector<double> u;        // expected return per node, in [0,1]
    std::vector<int> greedy;      // argmax choice per node (lowest index on ties)
    std::vector<double> residuals; // sup-norm change per sweep
    int iterations = 0;
    bool converged = false;
};

struct ValueIterationOptions {
    double tol = 1e-10;
    long long max_iters = 2000000;
    bool use_shaped_rewards = false; // edge rewards instead of the base state reward
    bool throw_on_nonconvergence = true;
};

// Jacobi sweeps of U(x) <- max_c sum p [r + gamma(x) U(x')], with the
// reward/discount read off the node's arrival acceptance.
ValueTable value_iteration(const FiniteEpmdp& p, const RewardParams& params,
                           const ValueIterationOptions& opts = {});

// all choices whose backed-up value is within `tol` of the best
std::vector<std::vector<int>> greedy_sets(const FiniteEpmdp& p, const RewardParams& params,
                                          const std::vector<double>& u, double tol,
                                          bool use_shaped_rewards);

struct Mec {
    std::vector<int> states;
    std::vector<std::vector<int>> allowed; // per state: surviving choice indices
};

enum class MecClass { AMEC, RMEC, NMEC };

std::vector<Mec> mec_decomposition(const FiniteEpmdp& p);
MecClass classify_mec(const FiniteEpmdp& p, const Mec& m);

// maximal probability of eventually reaching `target`, prob-0 states fixed
// by graph analysis first
std::vector<double> max_reach_probability(const FiniteEpmdp& p,
                                          const std::vector<char>& target,
                                          double tol = 1e-10);

struct McAnalysis {
    std::vector<std::vector<int>> recurrent_classes; // BSCCs of the induced chain
    std::vector<int> transient;                      // reachable but not recurrent
};

// Deterministic policy = one choice index per node.  Classes are computed on
// the part reachable from the initial node.
McAnalysis chain_classes(const FiniteEpmdp& p, const std::vector<int>& policy);

struct Lemma1Result {
    bool pass = true;
    struct Witness {
        std::vector<int> states;
        uint32_t acc_union;
    };
    std::vector<Witness> violations; // recurrent classes hitting only part of the family
};

Lemma1Result check_lemma1(const FiniteEpmdp& p, const std::vector<int>& policy);

// exact reachability of `target` under a fixed policy (Gaussian elimination
// on the transient part)
std::vector<double> policy_reach_probability(const FiniteEpmdp& p,
                                             const std::vector<int>& policy,
                                             const std::vector<char>& target);

// uniformly random deterministic policy
std::vector<int> random_policy(const FiniteEpmdp& p, Rng& rng);

// One sampled finite run under a policy; returns the discounted return of
// the visited prefix (computed backward, exactly as the return definition).
double sample_return(const FiniteEpmdp& p, const std::vector<int>& policy, int horizon,
                     const RewardParams& params, Rng& rng);

} // namespace ltlmod
