#include <arm_neon.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypdyn/kernels.hpp"

namespace hypdyn::kernels {

namespace {

bool within_all(const double* a, const double* b, std::size_t n, double eps) {
    const float64x2_t e = vdupq_n_f64(eps);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d = vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        const uint64x2_t ok = vcltq_f64(d, e);
        if ((vgetq_lane_u64(ok, 0) & vgetq_lane_u64(ok, 1)) == 0) return false;
    }
    for (; i < n; ++i)
        if (!(std::fabs(a[i] - b[i]) < eps)) return false;
    return true;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
    float64x2_t m = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    double r = std::max(vgetq_lane_f64(m, 0), vgetq_lane_f64(m, 1));
    for (; i < n; ++i) r = std::max(r, std::fabs(a[i] - b[i]));
    return r;
}

inline float64x2_t directed2(const double* const* A, int qa, const double* const* B, int qb, std::size_t i) {
    float64x2_t worst = vdupq_n_f64(0.0);
    for (int p = 0; p < qa; ++p) {
        const float64x2_t x = vld1q_f64(A[p] + i);
        float64x2_t best = vdupq_n_f64(std::numeric_limits<double>::infinity());
        for (int q = 0; q < qb; ++q) best = vminq_f64(best, vabdq_f64(x, vld1q_f64(B[q] + i)));
        worst = vmaxq_f64(worst, best);
    }
    return worst;
}

double directed1(const double* const* A, int qa, const double* const* B, int qb, std::size_t i) {
    double worst = 0.0;
    for (int p = 0; p < qa; ++p) {
        double best = std::numeric_limits<double>::infinity();
        for (int q = 0; q < qb; ++q) best = std::min(best, std::fabs(A[p][i] - B[q][i]));
        worst = std::max(worst, best);
    }
    return worst;
}

bool point_sets_within(const double* const* A, int qa, const double* const* B, int qb, std::size_t n, double eps) {
    const float64x2_t e = vdupq_n_f64(eps);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d = vmaxq_f64(directed2(A, qa, B, qb, i), directed2(B, qb, A, qa, i));
        const uint64x2_t ok = vcltq_f64(d, e);
        if ((vgetq_lane_u64(ok, 0) & vgetq_lane_u64(ok, 1)) == 0) return false;
    }
    for (; i < n; ++i)
        if (!(std::max(directed1(A, qa, B, qb, i), directed1(B, qb, A, qa, i)) < eps)) return false;
    return true;
}

}  // namespace

const KernelTable& neon_table() {
    static const KernelTable table{"neon", within_all, max_abs_diff, point_sets_within};
    return table;
}

}  // namespace hypdyn::kernels
