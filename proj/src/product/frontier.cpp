#include "ltlmod/product/frontier.hpp"

namespace ltlmod {

FrontierUpdate frontier_update(uint32_t member_mask, Frontier t, int f) {
    const Frontier full = full_frontier(f);
    if (member_mask & t) {
        const Frontier next = t & ~member_mask;
        if (next == 0) return {full, true};
        return {next, false};
    }
    if (member_mask != 0 && t == 0) return {Frontier(full & ~member_mask), true};
    return {t, false};
}

} // namespace ltlmod
