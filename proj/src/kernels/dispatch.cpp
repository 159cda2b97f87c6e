#include <atomic>
#include <cstdlib>
#include <string>

#include "qpm/error.hpp"
#include "qpm/kernels.hpp"

namespace qpm::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Backend* select_default() {
    if (const char* env = std::getenv("QPM_KERNELS")) {
        std::string want(env);
        if (want == "scalar") return &scalar_backend();
        if (want == "avx2" && avx2_backend() && cpu_has_avx2()) return avx2_backend();
        // Unknown or unsupported request: fall through to auto selection.
    }
    if (avx2_backend() && cpu_has_avx2()) return avx2_backend();
    return &scalar_backend();
}

std::atomic<const Backend*> g_active{nullptr};

}  // namespace

const Backend& active() {
    const Backend* b = g_active.load(std::memory_order_acquire);
    if (!b) {
        b = select_default();
        g_active.store(b, std::memory_order_release);
    }
    return *b;
}

void force(const std::string& name) {
    if (name == "scalar") {
        g_active.store(&scalar_backend(), std::memory_order_release);
        return;
    }
    if (name == "avx2") {
        if (avx2_backend() && cpu_has_avx2()) {
            g_active.store(avx2_backend(), std::memory_order_release);
            return;
        }
        throw ConfigError("kernel backend 'avx2' is not available on this CPU/build");
    }
    if (name == "auto") {
        g_active.store(nullptr, std::memory_order_release);
        return;
    }
    throw ConfigError("unknown kernel backend '" + name + "' (scalar, avx2, auto)");
}

}  // namespace qpm::kernels
