#include "gsp/matrix.hpp"

#include "gsp/kernels.hpp"

namespace gsp {

Vector matvec(const Matrix& m, const Vector& x) {
    if (x.size() != m.cols()) throw std::invalid_argument("matvec: dimension mismatch");
    const auto& k = kernels::active();
    Vector y(m.rows(), 0.0);
    for (std::size_t j = 0; j < m.cols(); ++j)
        k.axpy(m.rows(), x[j], m.col(j), y.data());
    return y;
}

double quadratic_form(const Matrix& m, const Vector& x) {
    const auto& k = kernels::active();
    double acc = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j)
        acc += x[j] * k.dot(m.col(j), x.data(), m.rows());
    return acc;
}

double norm2(const Vector& x) {
    return std::sqrt(kernels::active().dot(x.data(), x.data(), x.size()));
}

}  // namespace gsp
