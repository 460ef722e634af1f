#include "ltlmod/nn/kernels.hpp"

#include <cstdlib>

namespace ltlmod::kern {

namespace {

struct Selection {
    const Ops* ops;
    std::string name;
};

Selection select() {
    const char* want = std::getenv("LTLMODRL_KERNELS");
    const std::string req = want ? want : "auto";
    if (req == "scalar") return {&scalar_ops(), "scalar"};
#if defined(LTLMOD_BUILD_AVX2)
    const bool have_avx2 =
        __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    if (req == "avx2") {
        if (have_avx2) return {&avx2_ops(), "avx2"};
        return {&scalar_ops(), "scalar"};
    }
    if (req == "auto" && have_avx2) return {&avx2_ops(), "avx2"};
#endif
#if defined(LTLMOD_BUILD_NEON)
    if (req == "neon" || req == "auto") return {&neon_ops(), "neon"};
#endif
    return {&scalar_ops(), "scalar"};
}

const Selection& selection() {
    static const Selection s = select();
    return s;
}

} // namespace

const Ops& ops() { return *selection().ops; }

const std::string& active_kernel_name() { return selection().name; }

} // namespace ltlmod::kern
