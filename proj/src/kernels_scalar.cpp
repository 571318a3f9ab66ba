#include "gsp/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace gsp::kernels {

namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_scalar(std::size_t n, double a, const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_scalar(std::size_t n, double a, double* x) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void plane_rot_scalar(std::size_t n, double* x, double* y, double c, double s) {
    for (std::size_t i = 0; i < n; ++i) {
        const double t = y[i];
        y[i] = s * x[i] + c * t;
        x[i] = c * x[i] - s * t;
    }
}

}  // namespace

const Kernels& scalar() {
    static const Kernels k{"scalar", dot_scalar, axpy_scalar, scal_scalar,
                           plane_rot_scalar};
    return k;
}

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Kernels& active() {
    static const Kernels* chosen = [] {
        if (const char* env = std::getenv("GRAPHSPREAD_KERNELS")) {
            if (std::strcmp(env, "scalar") == 0) return &scalar();
            if (std::strcmp(env, "avx2") == 0) {
                if (!avx2_available())
                    throw std::runtime_error(
                        "GRAPHSPREAD_KERNELS=avx2 requested but AVX2 is unavailable");
                return &avx2();
            }
        }
        return avx2_available() ? &avx2() : &scalar();
    }();
    return *chosen;
}

}  // namespace gsp::kernels
