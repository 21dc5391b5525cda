#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "hypdyn/kernels.hpp"

namespace hypdyn::kernels {

#if defined(HYPDYN_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(HYPDYN_HAVE_NEON)
const KernelTable& neon_table();
#endif

std::vector<const KernelTable*> available_tables() {
    std::vector<const KernelTable*> out{&scalar_table()};
#if defined(HYPDYN_HAVE_AVX2)
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2")) out.push_back(&avx2_table());
#endif
#if defined(HYPDYN_HAVE_NEON)
    out.push_back(&neon_table());
#endif
    return out;
}

namespace {

const KernelTable& select() {
    const auto tables = available_tables();
    if (const char* forced = std::getenv("HYPDYN_KERNELS"); forced && *forced) {
        for (const auto* t : tables)
            if (std::strcmp(t->name, forced) == 0) return *t;
        throw std::runtime_error(std::string("HYPDYN_KERNELS=") + forced + " is not available on this machine");
    }
    return *tables.back();
}

}  // namespace

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

}  // namespace hypdyn::kernels
