#pragma once

#include <cstddef>
#include <string>

namespace ltlmod::kern {

// Dense double-precision inner loops behind the network code.  A scalar
// reference implementation always exists; AVX2 (x86) and NEON (aarch64)
// variants are selected once at startup from CPU features, overridable via
// LTLMODRL_KERNELS=scalar|avx2|neon|auto.  Variants may differ from the
// reference only by floating-point reassociation; the equivalence tests pin
// that down to tight tolerances.
struct Ops {
    // y = W x + b; W is row-major [rows x cols]
    void (*matvec)(const double* w, const double* x, const double* b, double* y,
                   int rows, int cols);
    // dx += W^T dy
    void (*matvec_t_acc)(const double* w, const double* dy, double* dx, int rows, int cols);
    // dW += dy x^T
    void (*ger_acc)(double* dw, const double* dy, const double* x, int rows, int cols);
    // y_i = tanh(z_i)
    void (*tanh_vec)(const double* z, double* y, int n);
    // dz_i = dy_i * (1 - y_i^2), y = tanh(z)
    void (*tanh_backward)(const double* y, const double* dy, double* dz, int n);
    // y = a*x + b*y
    void (*axpby)(double a, const double* x, double b, double* y, int n);
    // bias-corrected adam step over one tensor
    void (*adam_step)(double* p, const double* g, double* m, double* v, int n,
                      double lr, double beta1, double beta2, double eps,
                      double bias1, double bias2);
};

const Ops& ops();          // the dispatched implementation
const Ops& scalar_ops();   // reference, always available
const std::string& active_kernel_name();

#if defined(LTLMOD_BUILD_AVX2)
const Ops& avx2_ops();
#endif
#if defined(LTLMOD_BUILD_NEON)
const Ops& neon_ops();
#endif

} // namespace ltlmod::kern
