#include "gsp/spreads.hpp"

#include <cmath>

#include "gsp/kernels.hpp"

namespace gsp {

namespace {

void require_unit_norm(const GraphSignal& x, const char* where) {
    if (!x.is_unit_norm())
        throw std::invalid_argument(std::string(where) + ": signal must be unit-norm");
}

}  // namespace

double graph_spread(const Vector& dist_from_u0, const GraphSignal& x) {
    if (dist_from_u0.size() != x.size())
        throw std::invalid_argument("graph_spread: dimension mismatch");
    require_unit_norm(x, "graph_spread");
    double acc = 0.0;
    for (std::size_t u = 0; u < x.size(); ++u) {
        const double d = dist_from_u0[u];
        if (!std::isfinite(d))
            throw std::domain_error("graph_spread: non-finite distance");
        acc += d * d * x.values[u] * x.values[u];
    }
    return acc;
}

Vector gft(const SpectralDecomposition& decomp, const GraphSignal& x) {
    const std::size_t n = decomp.eigenvectors.rows();
    if (x.size() != n) throw std::invalid_argument("gft: dimension mismatch");
    const auto& k = kernels::active();
    Vector xhat(n);
    for (std::size_t j = 0; j < n; ++j)
        xhat[j] = k.dot(decomp.eigenvectors.col(j), x.values.data(), n);
    return xhat;
}

double spectral_spread(const SpectralDecomposition& decomp, const GraphSignal& x) {
    require_unit_norm(x, "spectral_spread");
    const Vector xhat = gft(decomp, x);
    double acc = 0.0;
    for (std::size_t k = 0; k < xhat.size(); ++k)
        acc += decomp.eigenvalues[k] * xhat[k] * xhat[k];
    return acc;
}

SpreadPair spread_pair(const WeightedGraph& g, const DistanceKind& kind, std::size_t u0,
                       const GraphSignal& x) {
    const Vector dist = distances(g, kind, u0);
    const SpectralDecomposition decomp = eigendecompose(normalized_laplacian(g));
    return SpreadPair{spectral_spread(decomp, x), graph_spread(dist, x), u0};
}

double dirichlet_form(const WeightedGraph& g, const GraphSignal& x, int p) {
    if (p < 1) throw std::invalid_argument("dirichlet_form: p must be >= 1");
    const std::size_t n = g.size();
    if (x.size() != n) throw std::invalid_argument("dirichlet_form: dimension mismatch");
    double acc = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
        double inner = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            const double w = g.weight(u, v);
            if (w > 0.0)
                inner += w * std::pow(x.values[v] - x.values[u], static_cast<double>(p));
        }
        if (inner < 0.0 && (p % 2 == 1) && p != 1)
            throw std::domain_error("dirichlet_form: negative inner sum has no real 1/p power");
        acc += (p == 1) ? inner
                        : std::copysign(std::pow(std::abs(inner), 1.0 / p), inner);
    }
    return acc / p;
}

}  // namespace gsp
