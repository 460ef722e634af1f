#include "ltlmod/nn/kernels.hpp"

#if defined(LTLMOD_BUILD_NEON)

#include <arm_neon.h>
#include <cmath>

namespace ltlmod::kern {

namespace {

void matvec_neon(const double* w, const double* x, const double* b, double* y,
                 int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        const double* wr = w + static_cast<size_t>(r) * cols;
        float64x2_t acc0 = vdupq_n_f64(0.0);
        float64x2_t acc1 = vdupq_n_f64(0.0);
        int c = 0;
        for (; c + 4 <= cols; c += 4) {
            acc0 = vfmaq_f64(acc0, vld1q_f64(wr + c), vld1q_f64(x + c));
            acc1 = vfmaq_f64(acc1, vld1q_f64(wr + c + 2), vld1q_f64(x + c + 2));
        }
        double acc = vaddvq_f64(acc0) + vaddvq_f64(acc1);
        for (; c < cols; ++c) acc += wr[c] * x[c];
        y[r] = acc + (b ? b[r] : 0.0);
    }
}

void matvec_t_acc_neon(const double* w, const double* dy, double* dx, int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        const double* wr = w + static_cast<size_t>(r) * cols;
        const float64x2_t d = vdupq_n_f64(dy[r]);
        int c = 0;
        for (; c + 2 <= cols; c += 2)
            vst1q_f64(dx + c, vfmaq_f64(vld1q_f64(dx + c), vld1q_f64(wr + c), d));
        for (; c < cols; ++c) dx[c] += wr[c] * dy[r];
    }
}

void ger_acc_neon(double* dw, const double* dy, const double* x, int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        double* dwr = dw + static_cast<size_t>(r) * cols;
        const float64x2_t d = vdupq_n_f64(dy[r]);
        int c = 0;
        for (; c + 2 <= cols; c += 2)
            vst1q_f64(dwr + c, vfmaq_f64(vld1q_f64(dwr + c), d, vld1q_f64(x + c)));
        for (; c < cols; ++c) dwr[c] += dy[r] * x[c];
    }
}

void tanh_vec_neon(const double* z, double* y, int n) {
    for (int i = 0; i < n; ++i) y[i] = std::tanh(z[i]);
}

void tanh_backward_neon(const double* y, const double* dy, double* dz, int n) {
    const float64x2_t one = vdupq_n_f64(1.0);
    int i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t yv = vld1q_f64(y + i);
        const float64x2_t g = vfmsq_f64(one, yv, yv);
        vst1q_f64(dz + i, vmulq_f64(vld1q_f64(dy + i), g));
    }
    for (; i < n; ++i) dz[i] = dy[i] * (1.0 - y[i] * y[i]);
}

void axpby_neon(double a, const double* x, double b, double* y, int n) {
    const float64x2_t av = vdupq_n_f64(a), bv = vdupq_n_f64(b);
    int i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t yy = vmulq_f64(bv, vld1q_f64(y + i));
        vst1q_f64(y + i, vfmaq_f64(yy, av, vld1q_f64(x + i)));
    }
    for (; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

void adam_step_neon(double* p, const double* g, double* m, double* v, int n,
                    double lr, double beta1, double beta2, double eps,
                    double bias1, double bias2) {
    for (int i = 0; i < n; ++i) {
        m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
        p[i] -= lr * (m[i] / bias1) / (std::sqrt(v[i] / bias2) + eps);
    }
}

} // namespace

const Ops& neon_ops() {
    static const Ops ops{matvec_neon, matvec_t_acc_neon, ger_acc_neon, tanh_vec_neon,
                         tanh_backward_neon, axpby_neon, adam_step_neon};
    return ops;
}

} // namespace ltlmod::kern

#endif // LTLMOD_BUILD_NEON
