#include "ltlmod/nn/kernels.hpp"

#if defined(LTLMOD_BUILD_AVX2)

#include <immintrin.h>
#include <cmath>

namespace ltlmod::kern {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

void matvec_avx2(const double* w, const double* x, const double* b, double* y,
                 int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        const double* wr = w + static_cast<size_t>(r) * cols;
        __m256d acc0 = _mm256_setzero_pd();
        __m256d acc1 = _mm256_setzero_pd();
        int c = 0;
        for (; c + 8 <= cols; c += 8) {
            acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(wr + c), _mm256_loadu_pd(x + c), acc0);
            acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(wr + c + 4), _mm256_loadu_pd(x + c + 4), acc1);
        }
        for (; c + 4 <= cols; c += 4)
            acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(wr + c), _mm256_loadu_pd(x + c), acc0);
        double acc = hsum(_mm256_add_pd(acc0, acc1));
        for (; c < cols; ++c) acc += wr[c] * x[c];
        y[r] = acc + (b ? b[r] : 0.0);
    }
}

void matvec_t_acc_avx2(const double* w, const double* dy, double* dx, int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        const double* wr = w + static_cast<size_t>(r) * cols;
        const __m256d d = _mm256_set1_pd(dy[r]);
        int c = 0;
        for (; c + 4 <= cols; c += 4) {
            __m256d v = _mm256_loadu_pd(dx + c);
            v = _mm256_fmadd_pd(_mm256_loadu_pd(wr + c), d, v);
            _mm256_storeu_pd(dx + c, v);
        }
        for (; c < cols; ++c) dx[c] += wr[c] * dy[r];
    }
}

void ger_acc_avx2(double* dw, const double* dy, const double* x, int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        double* dwr = dw + static_cast<size_t>(r) * cols;
        const __m256d d = _mm256_set1_pd(dy[r]);
        int c = 0;
        for (; c + 4 <= cols; c += 4) {
            __m256d v = _mm256_loadu_pd(dwr + c);
            v = _mm256_fmadd_pd(d, _mm256_loadu_pd(x + c), v);
            _mm256_storeu_pd(dwr + c, v);
        }
        for (; c < cols; ++c) dwr[c] += dy[r] * x[c];
    }
}

// exp(r)-1 rational kernel on the reduced range, classic minimax
// coefficients; accurate to a couple of ulp, which the kernel-equivalence
// tests bound explicitly.
constexpr double kLog2E = 1.4426950408889634073599;
constexpr double kC1 = 6.93145751953125e-1;
constexpr double kC2 = 1.42860682030941723212e-6;
constexpr double kP0 = 1.26177193074810590878e-4;
constexpr double kP1 = 3.02994407707441961300e-2;
constexpr double kP2 = 9.99999999999999999910e-1;
constexpr double kQ0 = 3.00198505138664455042e-6;
constexpr double kQ1 = 2.52448340349684104192e-3;
constexpr double kQ2 = 2.27265548208155028766e-1;
constexpr double kQ3 = 2.00000000000000000005e0;

inline double tanh_poly_scalar(double x) {
    double y = 2.0 * x;
    y = y < -40.0 ? -40.0 : (y > 40.0 ? 40.0 : y);
    const double n = std::nearbyint(y * kLog2E);
    const double r = (y - n * kC1) - n * kC2;
    const double rr = r * r;
    const double px = r * ((kP0 * rr + kP1) * rr + kP2);
    const double qx = ((kQ0 * rr + kQ1) * rr + kQ2) * rr + kQ3;
    const double u = 2.0 * px / (qx - px);
    double em1;
    if (n == 0.0) {
        em1 = u;
    } else {
        em1 = std::ldexp(1.0 + u, static_cast<int>(n)) - 1.0;
    }
    return em1 / (em1 + 2.0);
}

void tanh_vec_avx2(const double* z, double* y, int n) {
    const __m256d log2e = _mm256_set1_pd(kLog2E);
    const __m256d c1 = _mm256_set1_pd(kC1);
    const __m256d c2 = _mm256_set1_pd(kC2);
    const __m256d p0 = _mm256_set1_pd(kP0), p1 = _mm256_set1_pd(kP1), p2 = _mm256_set1_pd(kP2);
    const __m256d q0 = _mm256_set1_pd(kQ0), q1 = _mm256_set1_pd(kQ1);
    const __m256d q2 = _mm256_set1_pd(kQ2), q3 = _mm256_set1_pd(kQ3);
    const __m256d one = _mm256_set1_pd(1.0), two = _mm256_set1_pd(2.0);
    const __m256d hi = _mm256_set1_pd(40.0), lo = _mm256_set1_pd(-40.0);

    int i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_mul_pd(_mm256_loadu_pd(z + i), two);
        v = _mm256_max_pd(_mm256_min_pd(v, hi), lo);
        const __m256d nr = _mm256_round_pd(_mm256_mul_pd(v, log2e),
                                           _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
        __m256d r = _mm256_fnmadd_pd(nr, c1, v);
        r = _mm256_fnmadd_pd(nr, c2, r);
        const __m256d rr = _mm256_mul_pd(r, r);
        __m256d px = _mm256_fmadd_pd(p0, rr, p1);
        px = _mm256_fmadd_pd(px, rr, p2);
        px = _mm256_mul_pd(px, r);
        __m256d qx = _mm256_fmadd_pd(q0, rr, q1);
        qx = _mm256_fmadd_pd(qx, rr, q2);
        qx = _mm256_fmadd_pd(qx, rr, q3);
        const __m256d u = _mm256_div_pd(_mm256_mul_pd(two, px), _mm256_sub_pd(qx, px));

        // 2^n via the exponent field; |n| <= 59 here so this never overflows
        const __m128i n32 = _mm256_cvtpd_epi32(nr);
        const __m256i n64 = _mm256_cvtepi32_epi64(n32);
        const __m256i expo = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
        const __m256d pow2n = _mm256_castsi256_pd(expo);

        const __m256d scaled = _mm256_fmsub_pd(_mm256_add_pd(one, u), pow2n, one);
        const __m256d is_zero = _mm256_cmp_pd(nr, _mm256_setzero_pd(), _CMP_EQ_OQ);
        const __m256d em1 = _mm256_blendv_pd(scaled, u, is_zero);
        _mm256_storeu_pd(y + i, _mm256_div_pd(em1, _mm256_add_pd(em1, two)));
    }
    for (; i < n; ++i) y[i] = tanh_poly_scalar(z[i]);
}

void tanh_backward_avx2(const double* y, const double* dy, double* dz, int n) {
    const __m256d one = _mm256_set1_pd(1.0);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d yv = _mm256_loadu_pd(y + i);
        const __m256d g = _mm256_fnmadd_pd(yv, yv, one);
        _mm256_storeu_pd(dz + i, _mm256_mul_pd(_mm256_loadu_pd(dy + i), g));
    }
    for (; i < n; ++i) dz[i] = dy[i] * (1.0 - y[i] * y[i]);
}

void axpby_avx2(double a, const double* x, double b, double* y, int n) {
    const __m256d av = _mm256_set1_pd(a), bv = _mm256_set1_pd(b);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d yy = _mm256_mul_pd(bv, _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yy));
    }
    for (; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

void adam_step_avx2(double* p, const double* g, double* m, double* v, int n,
                    double lr, double beta1, double beta2, double eps,
                    double bias1, double bias2) {
    const __m256d b1 = _mm256_set1_pd(beta1), ob1 = _mm256_set1_pd(1.0 - beta1);
    const __m256d b2 = _mm256_set1_pd(beta2), ob2 = _mm256_set1_pd(1.0 - beta2);
    const __m256d inv_bias1 = _mm256_set1_pd(1.0 / bias1);
    const __m256d inv_bias2 = _mm256_set1_pd(1.0 / bias2);
    const __m256d lrv = _mm256_set1_pd(lr), epsv = _mm256_set1_pd(eps);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d gv = _mm256_loadu_pd(g + i);
        __m256d mv = _mm256_fmadd_pd(ob1, gv, _mm256_mul_pd(b1, _mm256_loadu_pd(m + i)));
        __m256d vv = _mm256_fmadd_pd(ob2, _mm256_mul_pd(gv, gv),
                                     _mm256_mul_pd(b2, _mm256_loadu_pd(v + i)));
        _mm256_storeu_pd(m + i, mv);
        _mm256_storeu_pd(v + i, vv);
        const __m256d mhat = _mm256_mul_pd(mv, inv_bias1);
        const __m256d vhat = _mm256_mul_pd(vv, inv_bias2);
        const __m256d denom = _mm256_add_pd(_mm256_sqrt_pd(vhat), epsv);
        const __m256d upd = _mm256_div_pd(_mm256_mul_pd(lrv, mhat), denom);
        _mm256_storeu_pd(p + i, _mm256_sub_pd(_mm256_loadu_pd(p + i), upd));
    }
    for (; i < n; ++i) {
        m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
        p[i] -= lr * (m[i] / bias1) / (std::sqrt(v[i] / bias2) + eps);
    }
}

} // namespace

const Ops& avx2_ops() {
    static const Ops ops{matvec_avx2, matvec_t_acc_avx2, ger_acc_avx2, tanh_vec_avx2,
                         tanh_backward_avx2, axpby_avx2, adam_step_avx2};
    return ops;
}

} // namespace ltlmod::kern

#endif // LTLMOD_BUILD_AVX2
