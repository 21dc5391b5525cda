#pragma once

// Inner loops of the separated-set counters. Each kernel has a scalar
// reference version; vector versions are picked at runtime when the CPU
// supports them. HYPDYN_KERNELS=scalar|avx2|neon forces a choice.

#include <cstddef>
#include <vector>

namespace hypdyn::kernels {

struct KernelTable {
    const char* name;
    /// |a[i] - b[i]| < eps for every i < n.
    bool (*within_all)(const double* a, const double* b, std::size_t n, double eps);
    double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
    /// For every step i < n, the Hausdorff distance between the point sets
    /// {A[p][i]} and {B[q][i]} on the line is < eps.
    bool (*point_sets_within)(const double* const* A, int qa, const double* const* B, int qb, std::size_t n,
                              double eps);
};

const KernelTable& scalar_table();
/// Tables compiled in and supported by this CPU, scalar first.
std::vector<const KernelTable*> available_tables();
/// The table in use (best available unless overridden by the environment).
const KernelTable& active();

}  // namespace hypdyn::kernels
