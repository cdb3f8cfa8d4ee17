#include <atomic>
#include <cstdlib>
#include <string>

#include "inkrep/simd/kernels.hpp"

namespace inkrep::simd {

namespace {

constexpr KernelTable kScalarTable{Backend::Scalar, scalar::bounds, scalar::normalize, scalar::round_half_away};

#if defined(INKREP_HAVE_AVX2)
constexpr KernelTable kAvx2Table{Backend::Avx2, avx2::bounds, avx2::normalize, avx2::round_half_away};
#endif

const KernelTable* detect() {
    const char* forced = std::getenv("INKREP_SIMD");
    if (forced != nullptr && std::string(forced) == "scalar") return &kScalarTable;
    if (backend_available(Backend::Avx2)) return &table_for(Backend::Avx2);
    return &kScalarTable;
}

std::atomic<const KernelTable*>& active() {
    static std::atomic<const KernelTable*> table{detect()};
    return table;
}

}  // namespace

bool backend_available(Backend backend) {
    switch (backend) {
        case Backend::Scalar: return true;
        case Backend::Avx2:
#if defined(INKREP_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& table_for(Backend backend) {
#if defined(INKREP_HAVE_AVX2)
    if (backend == Backend::Avx2 && backend_available(Backend::Avx2)) return kAvx2Table;
#endif
    (void)backend;
    return kScalarTable;
}

const KernelTable& kernels() { return *active().load(std::memory_order_acquire); }

Backend active_backend() { return kernels().backend; }

void set_backend(Backend backend) { active().store(&table_for(backend), std::memory_order_release); }

std::string_view backend_name(Backend backend) {
    switch (backend) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
    }
    return "unknown";
}

}  // namespace inkrep::simd
