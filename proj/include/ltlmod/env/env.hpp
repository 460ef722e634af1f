#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ltlmod/util/rng.hpp"

namespace ltlmod {

struct EnvBounds {
    std::vector<double> lo, hi;
};

// Continuous labeled MDP behind one contract: bounded continuous actions,
// a transition sampler, and a labeling function that is a pure function of
// the state.  Implementations are immutable parameter holders; all
// randomness flows through the caller's Rng, so rollouts are reproducible
// and independent instances can run concurrently.
class Env {
public:
    virtual ~Env() = default;

    virtual int state_dim() const = 0;
    virtual int action_dim() const = 0;
    virtual EnvBounds action_bounds() const = 0;
    virtual EnvBounds feature_bounds() const = 0;

    virtual std::vector<double> reset(Rng& rng) const = 0;
    virtual std::vector<double> step(const std::vector<double>& s,
                                     const std::vector<double>& action, Rng& rng) const = 0;

    // proposition table of this environment; label() returns indices into it
    virtual const std::vector<std::string>& prop_names() const = 0;
    virtual void label(const std::vector<double>& s, std::vector<int>& props_out) const = 0;

    // true when the state is no longer episode-valid (e.g. the pole fell);
    // environments without a failure notion return false
    virtual bool failed(const std::vector<double>& s) const { (void)s; return false; }
};

std::vector<double> clamp_action(const std::vector<double>& a, const EnvBounds& b);

} // namespace ltlmod
