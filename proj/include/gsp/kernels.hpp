#pragma once

#include <cstddef>
#include <string>

// Dense inner-loop kernels used by the eigensolver and the SPD solver.
// Scalar reference implementations always exist; an AVX2+FMA variant is
// selected at runtime when the CPU supports it. Both variants are exposed
// so tests can check them against each other.

namespace gsp::kernels {

struct Kernels {
    const char* name;
    // sum_i x[i]*y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
    // y[i] += a*x[i]
    void (*axpy)(std::size_t n, double a, const double* x, double* y);
    // x[i] *= a
    void (*scal)(std::size_t n, double a, double* x);
    // Plane rotation of two vectors:
    //   t = y[i]; y[i] = s*x[i] + c*t; x[i] = c*x[i] - s*t
    void (*plane_rot)(std::size_t n, double* x, double* y, double c, double s);
};

const Kernels& scalar();
bool avx2_available();
const Kernels& avx2();  // valid only if avx2_available()

// Best variant for this machine; overridable with GRAPHSPREAD_KERNELS=scalar|avx2.
const Kernels& active();

}  // namespace gsp::kernels
