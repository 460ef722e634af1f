#pragma once

#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "ltlmod/automaton/ldgba.hpp"
#include "ltlmod/env/env.hpp"
#include "ltlmod/product/frontier.hpp"

namespace ltlmod {

// (environment state, automaton state, tracking frontier).  The frontier a
// state carries has absorbed its own visit, matching the on-the-fly run
// construction; acceptance of an arrival is therefore surfaced through
// StepOutcome::was_accepting, which is evaluated against the pre-visit
// frontier.  is_accepting() below is the raw predicate on a state value and
// expects the pre-visit (arrival) frontier; the explicit finite product in
// the oracle stores states under that convention.
struct ProductState {
    std::vector<double> s;
    int q = 0;
    Frontier t = 0;
};

// Either a continuous environment action or an eps-move to a chosen
// automaton successor (environment state unchanged).
struct EpsAction {
    int target_q;
};
using ProductAction = std::variant<std::vector<double>, EpsAction>;

struct StepOutcome {
    ProductState next;
    Label label = 0;          // label read from the source environment state
    bool was_accepting = false;
    bool round_flag = false;
    bool entered_sink = false;
};

// Product synchronization context: automaton plus its precomputed sink set
// and the environment-to-alphabet label translation.
class ProductSynchronizer {
public:
    ProductSynchronizer(const Ldgba& a, const Env& env);

    const Ldgba& automaton() const { return *a_; }
    const std::set<int>& sinks() const { return sinks_; }

    ProductState initial_state(std::vector<double> s0) const;

    // Alphabet-label of an environment state.
    Label label_of(const std::vector<double>& s, const Env& env) const;

    // One synchronous step.  nullopt = automaton dead end (no satisfied
    // guard and no eps chosen), reported as a value so callers can end the
    // episode.  Eps steps leave the environment state untouched and do not
    // draw from the environment's noise stream.
    std::optional<StepOutcome> step(const Env& env, const ProductState& x,
                                    const ProductAction& action, Rng& rng) const;

    bool is_accepting(int q, Frontier arrival_t) const {
        return (a_->accept_mask[q] & arrival_t) != 0;
    }

private:
    const Ldgba* a_;
    std::set<int> sinks_;
    std::vector<int> prop_map_; // env prop index -> alphabet bit (or -1)
};

struct RandomRun {
    std::vector<ProductState> states;   // includes the initial state
    std::vector<StepOutcome> outcomes;  // one per executed step
    bool failed = false;                // dead end before reaching the length
};

// Uniformly random actions; at nondeterministic automaton states the guard
// successor and the eps successors are drawn uniformly.  Deterministic
// given the seed.
RandomRun random_run(const Env& env, const ProductSynchronizer& sync, int length,
                     uint64_t seed);

// Finite-horizon acceptance surrogate: at least k completed rounds when the
// frontier updates are replayed over the run's automaton states.
bool label_sequence_check(const Ldgba& a, const std::vector<ProductState>& run, int k);

// Normalized environment features (each dimension scaled to [-1,1] by the
// declared bounds) followed by one bit per accepting set, 1 = still pending.
void encode_observation(const ProductState& x, int num_accepting_sets,
                        const EnvBounds& feature_bounds, std::vector<double>& out);

} // namespace ltlmod
