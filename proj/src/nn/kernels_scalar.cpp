#include "ltlmod/nn/kernels.hpp"

#include <cmath>

namespace ltlmod::kern {

namespace {

void matvec_scalar(const double* w, const double* x, const double* b, double* y,
                   int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        const double* wr = w + static_cast<size_t>(r) * cols;
        double acc = b ? b[r] : 0.0;
        for (int c = 0; c < cols; ++c) acc += wr[c] * x[c];
        y[r] = acc;
    }
}

void matvec_t_acc_scalar(const double* w, const double* dy, double* dx, int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        const double* wr = w + static_cast<size_t>(r) * cols;
        const double d = dy[r];
        for (int c = 0; c < cols; ++c) dx[c] += wr[c] * d;
    }
}

void ger_acc_scalar(double* dw, const double* dy, const double* x, int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        double* dwr = dw + static_cast<size_t>(r) * cols;
        const double d = dy[r];
        for (int c = 0; c < cols; ++c) dwr[c] += d * x[c];
    }
}

void tanh_vec_scalar(const double* z, double* y, int n) {
    for (int i = 0; i < n; ++i) y[i] = std::tanh(z[i]);
}

void tanh_backward_scalar(const double* y, const double* dy, double* dz, int n) {
    for (int i = 0; i < n; ++i) dz[i] = dy[i] * (1.0 - y[i] * y[i]);
}

void axpby_scalar(double a, const double* x, double b, double* y, int n) {
    for (int i = 0; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

void adam_step_scalar(double* p, const double* g, double* m, double* v, int n,
                      double lr, double beta1, double beta2, double eps,
                      double bias1, double bias2) {
    for (int i = 0; i < n; ++i) {
        m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
        const double mhat = m[i] / bias1;
        const double vhat = v[i] / bias2;
        p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops{matvec_scalar, matvec_t_acc_scalar, ger_acc_scalar,
                         tanh_vec_scalar, tanh_backward_scalar, axpby_scalar,
                         adam_step_scalar};
    return ops;
}

} // namespace ltlmod::kern
