#include "gsp/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gsp/kernels.hpp"

namespace gsp {

namespace {

// Householder reduction of a symmetric matrix to tridiagonal form, with
// accumulation of the orthogonal transform (EISPACK tred2 lineage). On exit
// `a` holds the accumulated transform, `d` the diagonal, `e` the
// subdiagonal (e[0] unused). Column-major layout keeps the O(n^3) loops on
// contiguous column segments.
void tridiagonalize(Matrix& a, Vector& d, Vector& e) {
    const auto& ker = kernels::active();
    const std::size_t n = a.rows();
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    Vector u(n), p(n);

    for (std::size_t i = n - 1; i >= 1; --i) {
        const std::size_t l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (std::size_t k = 0; k <= l; ++k) scale += std::abs(a(i, k));
            if (scale == 0.0) {
                e[i] = a(i, l);
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    a(i, k) /= scale;
                    h += a(i, k) * a(i, k);
                }
                double f = a(i, l);
                double g = (f >= 0.0 ? -std::sqrt(h) : std::sqrt(h));
                e[i] = scale * g;
                h -= f * g;
                a(i, l) = f - g;
                for (std::size_t k = 0; k <= l; ++k) u[k] = a(i, k);

                // p = A u over the valid lower triangle of the leading block
                std::fill(p.begin(), p.begin() + l + 1, 0.0);
                for (std::size_t c = 0; c <= l; ++c) {
                    p[c] += a(c, c) * u[c];
                    const std::size_t len = l - c;
                    if (len > 0) {
                        p[c] += ker.dot(&a(c + 1, c), &u[c + 1], len);
                        ker.axpy(len, u[c], &a(c + 1, c), &p[c + 1]);
                    }
                }
                double fsum = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    a(j, i) = u[j] / h;
                    e[j] = p[j] / h;
                    fsum += e[j] * u[j];
                }
                const double hh = fsum / (h + h);
                for (std::size_t j = 0; j <= l; ++j) e[j] -= hh * u[j];

                // rank-2 update A -= u e^T + e u^T (lower triangle, by column)
                for (std::size_t c = 0; c <= l; ++c) {
                    ker.axpy(l - c + 1, -e[c], &u[c], &a(c, c));
                    ker.axpy(l - c + 1, -u[c], &e[c], &a(c, c));
                }
            }
        } else {
            e[i] = a(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;

    // accumulate the orthogonal transform
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i] != 0.0) {
            for (std::size_t j = 0; j < i; ++j) {
                // column i holds u/h, row i holds u, so the row-times-column
                // product reduces to a contiguous column dot scaled by h
                const double g = d[i] * ker.dot(a.col(i), a.col(j), i);
                ker.axpy(i, -g, a.col(i), a.col(j));
            }
        }
        d[i] = a(i, i);
        a(i, i) = 1.0;
        for (std::size_t j = 0; j < i; ++j) a(j, i) = a(i, j) = 0.0;
    }
}

// Implicit-shift QL on the tridiagonal (d, e), rotations accumulated into
// the columns of z (EISPACK tql2 lineage).
void tridiagonal_ql(Vector& d, Vector& e, Matrix& z) {
    const auto& ker = kernels::active();
    const std::size_t n = d.size();
    if (n == 1) return;
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw std::runtime_error("eigendecompose: QL failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                std::ptrdiff_t i;
                for (i = static_cast<std::ptrdiff_t>(m) - 1;
                     i >= static_cast<std::ptrdiff_t>(l); --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    ker.plane_rot(n, z.col(i), z.col(i + 1), c, s);
                }
                if (r == 0.0 && i >= static_cast<std::ptrdiff_t>(l)) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

void fix_sign(double* v, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(v[k]) > 1e-12) {
            if (v[k] < 0.0)
                for (std::size_t j = 0; j < n; ++j) v[j] = -v[j];
            return;
        }
    }
}

}  // namespace

SpectralDecomposition eigendecompose(Matrix m, double sym_tol) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw std::invalid_argument("eigendecompose: matrix must be square and nonempty");
    if (!m.is_symmetric(sym_tol))
        throw std::invalid_argument("eigendecompose: matrix not symmetric within tolerance");
    m.symmetrize();

    const std::size_t n = m.rows();
    Vector d, e;
    tridiagonalize(m, d, e);
    tridiagonal_ql(d, e, m);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = d[order[k]];
        std::copy(m.col(order[k]), m.col(order[k]) + n, out.eigenvectors.col(k));
        fix_sign(out.eigenvectors.col(k), n);
    }
    return out;
}

CholeskyFactor::CholeskyFactor(Matrix spd) : l_(std::move(spd)) {
    const auto& ker = kernels::active();
    const std::size_t n = l_.rows();
    if (n != l_.cols()) throw std::invalid_argument("CholeskyFactor: matrix not square");
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k)
            ker.axpy(n - j, -l_(j, k), &l_(j, k), &l_(j, j));
        if (l_(j, j) <= 0.0)
            throw std::domain_error("CholeskyFactor: matrix not positive definite");
        l_(j, j) = std::sqrt(l_(j, j));
        if (j + 1 < n) ker.scal(n - j - 1, 1.0 / l_(j, j), &l_(j + 1, j));
    }
}

Vector CholeskyFactor::solve(Vector rhs) const {
    const auto& ker = kernels::active();
    const std::size_t n = dim();
    if (rhs.size() != n) throw std::invalid_argument("CholeskyFactor::solve: size mismatch");
    // L y = b
    for (std::size_t j = 0; j < n; ++j) {
        rhs[j] /= l_(j, j);
        if (j + 1 < n) ker.axpy(n - j - 1, -rhs[j], l_.col(j) + j + 1, &rhs[j + 1]);
    }
    // L^T x = y
    for (std::size_t jj = n; jj-- > 0;) {
        const double tail =
            (jj + 1 < n) ? ker.dot(l_.col(jj) + jj + 1, &rhs[jj + 1], n - jj - 1) : 0.0;
        rhs[jj] = (rhs[jj] - tail) / l_(jj, jj);
    }
    return rhs;
}

}  // namespace gsp
