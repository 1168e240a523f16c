#include <cstdlib>
#include <string_view>

#include "wep/kernels.hpp"

namespace wep::kernels {

#if defined(WEP_HAVE_AVX2)
const KernelTable* avx2_table_unchecked() noexcept;
#endif

const KernelTable* avx2_table() noexcept {
#if defined(WEP_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? avx2_table_unchecked() : nullptr;
#else
    return nullptr;
#endif
}

namespace {

const KernelTable& select() noexcept {
    std::string_view want = "auto";
    if (const char* env = std::getenv("WEP_KERNELS")) want = env;
    if (want == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
}

}  // namespace

const KernelTable& active() noexcept {
    static const KernelTable& table = select();
    return table;
}

}  // namespace wep::kernels
