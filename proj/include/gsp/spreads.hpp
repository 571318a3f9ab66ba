#pragma once

#include "gsp/distances.hpp"
#include "gsp/graph.hpp"

namespace gsp {

struct SpreadPair {
    double spectral = 0.0;  // signal energy weighted by Laplacian eigenvalues
    double graph = 0.0;     // signal energy weighted by squared distances to u0
    std::size_t u0 = 0;
};

// sum_u d(u0,u)^2 x(u)^2 for a unit-norm signal. The caller normalizes
// explicitly; non-unit input is an error, not an implicit rescale.
double graph_spread(const Vector& dist_from_u0, const GraphSignal& x);

// Graph Fourier transform: coefficients of x in the eigenvector basis.
Vector gft(const SpectralDecomposition& decomp, const GraphSignal& x);

// sum_k lambda_k xhat_k^2 for a unit-norm signal.
double spectral_spread(const SpectralDecomposition& decomp, const GraphSignal& x);

SpreadPair spread_pair(const WeightedGraph& g, const DistanceKind& kind, std::size_t u0,
                       const GraphSignal& x);

// Discrete p-Dirichlet smoothness measure,
//   (1/p) sum_u ( sum_{v: W_uv>0} W_uv (x(v)-x(u))^p )^{1/p},
// with the 1/p power inside the outer sum. For odd p a negative inner sum
// has no real 1/p power and raises std::domain_error.
double dirichlet_form(const WeightedGraph& g, const GraphSignal& x, int p);

}  // namespace gsp
