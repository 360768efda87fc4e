#include "imgql/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace imgql::kern {

#if !(defined(__x86_64__) || defined(_M_X64))
const Ops* avx2_ops() { return nullptr; }
#endif

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && avx2_ops() != nullptr;
#else
    return false;
#endif
}

namespace {

const Ops& select() {
    if (const char* env = std::getenv("IMGQL_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return scalar_ops();
        if (std::strcmp(env, "avx2") == 0 && avx2_available()) return *avx2_ops();
    }
    if (avx2_available()) return *avx2_ops();
    return scalar_ops();
}

} // namespace

const Ops& active_ops() {
    static const Ops& ops = select();
    return ops;
}

} // namespace imgql::kern
