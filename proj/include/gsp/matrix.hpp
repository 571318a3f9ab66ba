#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gsp {

using Vector = std::vector<double>;

// Dense column-major matrix. Column-major so that the eigensolver and the
// Cholesky solver run their inner loops over contiguous columns.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

    double* col(std::size_t j) { return data_.data() + j * rows_; }
    const double* col(std::size_t j) const { return data_.data() + j * rows_; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    bool is_symmetric(double tol) const {
        if (rows_ != cols_) return false;
        for (std::size_t j = 0; j < cols_; ++j)
            for (std::size_t i = j + 1; i < rows_; ++i)
                if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
        return true;
    }

    // (M + M^T)/2, for inputs that passed the symmetry check.
    void symmetrize() {
        if (rows_ != cols_) throw std::invalid_argument("symmetrize: matrix not square");
        for (std::size_t j = 0; j < cols_; ++j)
            for (std::size_t i = j + 1; i < rows_; ++i) {
                const double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
                (*this)(i, j) = v;
                (*this)(j, i) = v;
            }
    }

    double max_abs_diff(const Matrix& other) const {
        double m = 0.0;
        for (std::size_t k = 0; k < data_.size(); ++k)
            m = std::max(m, std::abs(data_[k] - other.data_[k]));
        return m;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

// y = M x
Vector matvec(const Matrix& m, const Vector& x);
// x^T M x
double quadratic_form(const Matrix& m, const Vector& x);

double norm2(const Vector& x);

}  // namespace gsp
