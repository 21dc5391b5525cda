#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypdyn/kernels.hpp"

namespace hypdyn::kernels {

namespace {

inline __m256d vabs(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

bool within_all(const double* a, const double* b, std::size_t n, double eps) {
    const __m256d e = _mm256_set1_pd(eps);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = vabs(_mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
        if (_mm256_movemask_pd(_mm256_cmp_pd(d, e, _CMP_NLT_UQ))) return false;
    }
    for (; i < n; ++i)
        if (!(std::fabs(a[i] - b[i]) < eps)) return false;
    return true;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        m = _mm256_max_pd(m, vabs(_mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i))));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, m);
    double r = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) r = std::max(r, std::fabs(a[i] - b[i]));
    return r;
}

inline __m256d directed4(const double* const* A, int qa, const double* const* B, int qb, std::size_t i) {
    __m256d worst = _mm256_setzero_pd();
    const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    for (int p = 0; p < qa; ++p) {
        const __m256d x = _mm256_loadu_pd(A[p] + i);
        __m256d best = inf;
        for (int q = 0; q < qb; ++q) best = _mm256_min_pd(best, vabs(_mm256_sub_pd(x, _mm256_loadu_pd(B[q] + i))));
        worst = _mm256_max_pd(worst, best);
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
    const __m256d e = _mm256_set1_pd(eps);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_max_pd(directed4(A, qa, B, qb, i), directed4(B, qb, A, qa, i));
        if (_mm256_movemask_pd(_mm256_cmp_pd(d, e, _CMP_NLT_UQ))) return false;
    }
    for (; i < n; ++i)
        if (!(std::max(directed1(A, qa, B, qb, i), directed1(B, qb, A, qa, i)) < eps)) return false;
    return true;
}

}  // namespace

const KernelTable& avx2_table() {
    static const KernelTable table{"avx2", within_all, max_abs_diff, point_sets_within};
    return table;
}

}  // namespace hypdyn::kernels
