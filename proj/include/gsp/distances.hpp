#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gsp/graph.hpp"

namespace gsp {

// Edge lengths; +inf encodes "no edge", diagonal is exactly 0.
class LengthMatrix {
  public:
    explicit LengthMatrix(Matrix lengths);
    static LengthMatrix no_edges(std::size_t n);

    std::size_t size() const { return m_.rows(); }
    double operator()(std::size_t u, std::size_t v) const { return m_(u, v); }
    void set(std::size_t u, std::size_t v, double len);
    bool has_edge(std::size_t u, std::size_t v) const {
        return u != v && std::isfinite(m_(u, v));
    }
    const Matrix& raw() const { return m_; }

  private:
    Matrix m_;
};

// All-pairs node distances; construction fails on non-finite entries so
// spread computations never silently mix infinities.
class DistanceMatrix {
  public:
    explicit DistanceMatrix(Matrix d);

    std::size_t size() const { return m_.rows(); }
    double operator()(std::size_t u, std::size_t v) const { return m_(u, v); }
    Vector row(std::size_t u) const;
    const Matrix& raw() const { return m_; }

  private:
    Matrix m_;
};

struct DistanceKind {
    enum class Type { NaiveGeodesic, InverseSimilarityGeodesic, Diffusion, ExplicitLengths };

    Type type = Type::InverseSimilarityGeodesic;
    double alpha = 1.0;                            // Diffusion only
    std::optional<LengthMatrix> explicit_lengths;  // ExplicitLengths only

    static DistanceKind naive() { return {Type::NaiveGeodesic}; }
    static DistanceKind invsim() { return {Type::InverseSimilarityGeodesic}; }
    static DistanceKind diffusion(double alpha);
    static DistanceKind explicit_lengths_kind(LengthMatrix lengths);

    // CLI strings: `naive`, `invsim`, `diffusion:<alpha>`, `explicit:<file>`
    // (`explicit` without a file defers to a pipeline-provided length matrix).
    static DistanceKind parse(const std::string& text);
    std::string label() const;
};

// Entry-wise inversion of the similarity matrix: 0 -> +inf,
// +inf -> 0, w -> 1/w; diagonal forced to 0.
LengthMatrix inverse_similarity(const WeightedGraph& g);

// Edge lengths taken verbatim from the weights (zero entries = no edge).
LengthMatrix naive_lengths(const WeightedGraph& g);

// Single-source shortest paths (Dijkstra, dense O(n^2) scan); unreachable
// nodes get +inf.
Vector geodesic_from(const LengthMatrix& lengths, std::size_t u0);

struct ReachabilityReport {
    bool all_reachable = true;
    std::size_t unreachable_pairs = 0;
};

// Symmetric all-pairs geodesic matrix; throws on disconnected inputs unless
// `report` is supplied, in which case infinities are flagged there and the
// raw matrix (with +inf) is returned.
Matrix all_pairs_geodesic_raw(const LengthMatrix& lengths, ReachabilityReport* report);
DistanceMatrix all_pairs_geodesic(const LengthMatrix& lengths);

// d(u,v) = ||(I + alpha L)^{-1}(x_u - x_v)||_2 with L the combinatorial
// Laplacian; solved by Cholesky of the SPD system. Finite even for
// disconnected graphs.
DistanceMatrix diffusion_distance(const WeightedGraph& g, double alpha);

// Single-source distances under the requested kind.
Vector distances(const WeightedGraph& g, const DistanceKind& kind, std::size_t u0);
// All-pairs distances under the requested kind (property harness).
DistanceMatrix distance_matrix(const WeightedGraph& g, const DistanceKind& kind);

struct DistancePropertyReport {
    bool nonnegative = true;              // P1
    bool zero_distance_equivalence = true;  // P2, forward direction
    bool monotone_nonincreasing = true;   // P3
    double observed_modulus = 0.0;        // max |distance change| over probes
};

// Empirical check of the three required distance properties on `g`,
// perturbing `trials` random existing edges upward by `perturbation`.
// `monotone_tol` is the allowed entry-wise increase for P3. Geodesic kinds
// satisfy it exactly; diffusion admits increases of order 1e-2 per unit of
// perturbation, so callers probing diffusion should scale the tolerance.
DistancePropertyReport check_distance_properties(const DistanceKind& kind,
                                                 const WeightedGraph& g,
                                                 std::size_t trials,
                                                 double perturbation,
                                                 std::uint64_t seed = 0,
                                                 double monotone_tol = 1e-12);

}  // namespace gsp
