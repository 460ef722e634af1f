#pragma once

#include <vector>

#include "ltlmod/util/rng.hpp"

namespace ltlmod {

// One stored product transition.  `act` is the module's action
// representation (continuous dims followed by any eps-preference dims),
// `disc` is the state-dependent discount of the source state, and `q_next`
// routes the bootstrap to the successor state's module.
struct Transition {
    std::vector<double> obs;
    std::vector<double> act;
    double r_shaped = 0.0;
    double disc = 0.0;
    std::vector<double> obs_next;
    int q_next = 0;
    bool terminal = false;
};

// Fixed-capacity ring buffer.
class ReplayBuffer {
public:
    explicit ReplayBuffer(size_t capacity = 0) : capacity_(capacity) {}

    void push(Transition t);
    size_t size() const { return data_.size(); }
    size_t capacity() const { return capacity_; }
    const Transition& sample(Rng& rng) const {
        return data_[rng.uniform_index(data_.size())];
    }
    const Transition& operator[](size_t i) const { return data_[i]; }

private:
    size_t capacity_;
    size_t next_ = 0;
    std::vector<Transition> data_;
};

} // namespace ltlmod
