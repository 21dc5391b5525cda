#include <algorithm>
#include <cmath>
#include <limits>

#include "hypdyn/kernels.hpp"

namespace hypdyn::kernels {

namespace {

bool within_all(const double* a, const double* b, std::size_t n, double eps) {
    for (std::size_t i = 0; i < n; ++i)
        if (!(std::fabs(a[i] - b[i]) < eps)) return false;
    return true;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

double directed_at(const double* const* A, int qa, const double* const* B, int qb, std::size_t i) {
    double worst = 0.0;
    for (int p = 0; p < qa; ++p) {
        double best = std::numeric_limits<double>::infinity();
        for (int q = 0; q < qb; ++q) best = std::min(best, std::fabs(A[p][i] - B[q][i]));
        worst = std::max(worst, best);
    }
    return worst;
}

bool point_sets_within(const double* const* A, int qa, const double* const* B, int qb, std::size_t n, double eps) {
    for (std::size_t i = 0; i < n; ++i) {
        if (!(directed_at(A, qa, B, qb, i) < eps)) return false;
        if (!(directed_at(B, qb, A, qa, i) < eps)) return false;
    }
    return true;
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{"scalar", within_all, max_abs_diff, point_sets_within};
    return table;
}

}  // namespace hypdyn::kernels
