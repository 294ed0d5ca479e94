#include <cstdlib>
#include <string>

#include "willmore/kernels.hpp"

namespace willmore::kernels {

#if defined(WILLMORE_HAVE_AVX2)
const Table& avx2_table();
#endif

const Table* avx2() {
#if defined(WILLMORE_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

namespace {

const Table* initial_choice() {
    if (const char* env = std::getenv("WILLMORE_KERNELS")) {
        if (std::string(env) == "scalar") return &scalar();
    }
    if (const Table* t = avx2()) return t;
    return &scalar();
}

const Table*& current() {
    static const Table* t = initial_choice();
    return t;
}

} // namespace

const Table& active() { return *current(); }

bool select(std::string_view name) {
    if (name == "scalar") {
        current() = &scalar();
        return true;
    }
    if (name == "avx2" && avx2() != nullptr) {
        current() = avx2();
        return true;
    }
    return false;
}

} // namespace willmore::kernels
