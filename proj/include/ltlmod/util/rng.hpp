#pragma once

#include <cstdint>
#include <cstddef>
#include <cmath>

namespace ltlmod {

// splitmix64; used to derive independent substreams from one master seed.
uint64_t splitmix64(uint64_t& state);
uint64_t derive_seed(uint64_t seed, uint64_t tag);

// xoshiro256** with hand-rolled distribution transforms.  The std::
// distributions are implementation-defined, which would break the
// byte-identical log contract, so everything downstream goes through
// this type.
class Rng {
public:
    explicit Rng(uint64_t seed = 0);

    uint64_t next_u64();

    // uniform in [0, 1)
    double uniform();
    // uniform in [lo, hi)
    double uniform(double lo, double hi);
    // uniform integer in [0, n)
    uint64_t uniform_index(uint64_t n);
    // standard normal via Box-Muller (stateless pair draw, second value kept)
    double gaussian();

    Rng split(uint64_t tag);

private:
    uint64_t s_[4];
    double cached_gauss_ = 0.0;
    bool has_cached_ = false;
};

} // namespace ltlmod
