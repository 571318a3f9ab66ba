#pragma once

#include "gsp/matrix.hpp"

namespace gsp {

// Eigendecomposition of a real symmetric matrix.
// Eigenvalues are sorted ascending; eigenvectors() column k pairs with
// eigenvalues()[k]. Each eigenvector's first component of magnitude
// above 1e-12 is made nonnegative so decompositions are reproducible.
struct SpectralDecomposition {
    Vector eigenvalues;
    Matrix eigenvectors;
};

// Householder reduction to tridiagonal form followed by implicit-shift QL.
// Throws std::invalid_argument if the input is not symmetric within `sym_tol`;
// the matrix is symmetrized as (M+M^T)/2 after passing the check.
SpectralDecomposition eigendecompose(Matrix m, double sym_tol = 1e-12);

// Cholesky factorization/solve for symmetric positive definite systems.
// Throws std::domain_error if the matrix is not positive definite.
class CholeskyFactor {
  public:
    explicit CholeskyFactor(Matrix spd);
    Vector solve(Vector rhs) const;
    std::size_t dim() const { return l_.rows(); }

  private:
    Matrix l_;  // lower triangle
};

}  // namespace gsp
