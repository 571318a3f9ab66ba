#include "gsp/distances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <vector>

#include "gsp/kernels.hpp"

namespace gsp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

LengthMatrix::LengthMatrix(Matrix lengths) : m_(std::move(lengths)) {
    const std::size_t n = m_.rows();
    if (n == 0 || m_.cols() != n)
        throw std::invalid_argument("LengthMatrix: matrix must be square and nonempty");
    for (std::size_t j = 0; j < n; ++j) {
        if (m_(j, j) != 0.0)
            throw std::invalid_argument("LengthMatrix: diagonal must be exactly 0");
        for (std::size_t i = 0; i < n; ++i) {
            const double v = m_(i, j);
            if (std::isnan(v) || v < 0.0)
                throw std::invalid_argument("LengthMatrix: lengths must be >= 0");
            if (std::abs(v - m_(j, i)) > 0.0 && !(v == kInf && m_(j, i) == kInf))
                throw std::invalid_argument("LengthMatrix: not symmetric");
        }
    }
}

LengthMatrix LengthMatrix::no_edges(std::size_t n) {
    Matrix m(n, n, kInf);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 0.0;
    return LengthMatrix(std::move(m));
}

void LengthMatrix::set(std::size_t u, std::size_t v, double len) {
    if (u == v) throw std::invalid_argument("LengthMatrix::set: diagonal is fixed at 0");
    if (std::isnan(len) || len < 0.0)
        throw std::invalid_argument("LengthMatrix::set: length must be >= 0");
    m_(u, v) = len;
    m_(v, u) = len;
}

DistanceMatrix::DistanceMatrix(Matrix d) : m_(std::move(d)) {
    const std::size_t n = m_.rows();
    if (n == 0 || m_.cols() != n)
        throw std::invalid_argument("DistanceMatrix: matrix must be square and nonempty");
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(m_(j, j)) > 0.0)
            throw std::invalid_argument("DistanceMatrix: nonzero diagonal");
        for (std::size_t i = 0; i < n; ++i) {
            const double v = m_(i, j);
            if (!std::isfinite(v) || v < 0.0)
                throw std::domain_error("DistanceMatrix: entries must be finite and >= 0");
            if (std::abs(v - m_(j, i)) > 1e-12)
                throw std::invalid_argument("DistanceMatrix: not symmetric");
        }
    }
    m_.symmetrize();
}

Vector DistanceMatrix::row(std::size_t u) const {
    Vector r(size());
    for (std::size_t v = 0; v < size(); ++v) r[v] = m_(u, v);
    return r;
}

DistanceKind DistanceKind::diffusion(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("DistanceKind: diffusion alpha must be > 0");
    DistanceKind k{Type::Diffusion};
    k.alpha = alpha;
    return k;
}

DistanceKind DistanceKind::explicit_lengths_kind(LengthMatrix lengths) {
    DistanceKind k{Type::ExplicitLengths};
    k.explicit_lengths = std::move(lengths);
    return k;
}

DistanceKind DistanceKind::parse(const std::string& text) {
    if (text == "naive") return naive();
    if (text == "invsim") return invsim();
    if (text.rfind("diffusion", 0) == 0) {
        double alpha = 1.0;
        if (text.size() > 9) {
            if (text[9] != ':')
                throw std::invalid_argument("bad distance kind: " + text);
            alpha = std::stod(text.substr(10));
        }
        return diffusion(alpha);
    }
    if (text == "explicit") return DistanceKind{Type::ExplicitLengths};
    if (text.rfind("explicit:", 0) == 0) {
        const std::string path = text.substr(9);
        // length-matrix file reuses the graph text format with lengths as values
        const WeightedGraph g = read_graph_file(path);
        LengthMatrix lm = LengthMatrix::no_edges(g.size());
        for (std::size_t u = 0; u < g.size(); ++u)
            for (std::size_t v = u + 1; v < g.size(); ++v)
                if (g.weight(u, v) != 0.0) lm.set(u, v, g.weight(u, v));
        return explicit_lengths_kind(std::move(lm));
    }
    throw std::invalid_argument("bad distance kind: " + text);
}

std::string DistanceKind::label() const {
    switch (type) {
        case Type::NaiveGeodesic: return "naive";
        case Type::InverseSimilarityGeodesic: return "invsim";
        case Type::Diffusion: {
            char buf[48];
            std::snprintf(buf, sizeof(buf), "diffusion:%g", alpha);
            return buf;
        }
        case Type::ExplicitLengths: return "explicit";
    }
    return "?";
}

LengthMatrix inverse_similarity(const WeightedGraph& g) {
    const std::size_t n = g.size();
    Matrix m(n, n);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t u = 0; u < n; ++u) {
            if (u == v) continue;
            const double w = g.weight(u, v);
            if (w == 0.0)
                m(u, v) = kInf;
            else if (w == kInf)
                m(u, v) = 0.0;  // unreachable for valid graphs; contract kept anyway
            else
                m(u, v) = 1.0 / w;
        }
    return LengthMatrix(std::move(m));
}

LengthMatrix naive_lengths(const WeightedGraph& g) {
    const std::size_t n = g.size();
    Matrix m(n, n);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t u = 0; u < n; ++u) {
            if (u == v) continue;
            const double w = g.weight(u, v);
            m(u, v) = (w == 0.0) ? kInf : w;
        }
    return LengthMatrix(std::move(m));
}

Vector geodesic_from(const LengthMatrix& lengths, std::size_t u0) {
    const std::size_t n = lengths.size();
    if (u0 >= n) throw std::invalid_argument("geodesic_from: source out of range");
    Vector dist(n, kInf);
    std::vector<bool> done(n, false);
    dist[u0] = 0.0;
    for (std::size_t iter = 0; iter < n; ++iter) {
        std::size_t best = n;
        double bestd = kInf;
        for (std::size_t v = 0; v < n; ++v)
            if (!done[v] && dist[v] < bestd) {
                bestd = dist[v];
                best = v;
            }
        if (best == n) break;  // remaining nodes unreachable
        done[best] = true;
        for (std::size_t v = 0; v < n; ++v) {
            if (done[v]) continue;
            const double len = lengths(best, v);
            if (!std::isfinite(len) || best == v) continue;
            if (bestd + len < dist[v]) dist[v] = bestd + len;
        }
    }
    return dist;
}

Matrix all_pairs_geodesic_raw(const LengthMatrix& lengths, ReachabilityReport* report) {
    const std::size_t n = lengths.size();
    Matrix d(n, n);
    std::size_t unreachable = 0;
    for (std::size_t u = 0; u < n; ++u) {
        const Vector row = geodesic_from(lengths, u);
        for (std::size_t v = 0; v < n; ++v) {
            d(u, v) = row[v];
            if (!std::isfinite(row[v])) ++unreachable;
        }
    }
    if (report) {
        report->all_reachable = (unreachable == 0);
        report->unreachable_pairs = unreachable;
    } else if (unreachable > 0) {
        throw std::domain_error("all_pairs_geodesic: graph is disconnected");
    }
    d.symmetrize();
    return d;
}

DistanceMatrix all_pairs_geodesic(const LengthMatrix& lengths) {
    return DistanceMatrix(all_pairs_geodesic_raw(lengths, nullptr));
}

DistanceMatrix diffusion_distance(const WeightedGraph& g, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("diffusion_distance: alpha must be > 0");
    const std::size_t n = g.size();
    Matrix system = combinatorial_laplacian(g);
    const auto& k = kernels::active();
    k.scal(n * n, alpha, system.data());
    for (std::size_t i = 0; i < n; ++i) system(i, i) += 1.0;

    const CholeskyFactor chol(std::move(system));
    // Z = (I + alpha L)^{-1}; column u is the smoothed indicator of node u.
    Matrix z(n, n);
    for (std::size_t u = 0; u < n; ++u) {
        Vector e(n, 0.0);
        e[u] = 1.0;
        const Vector col = chol.solve(std::move(e));
        std::copy(col.begin(), col.end(), z.col(u));
    }
    Matrix d(n, n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            double acc = 0.0;
            const double* zu = z.col(u);
            const double* zv = z.col(v);
            for (std::size_t i = 0; i < n; ++i) {
                const double diff = zu[i] - zv[i];
                acc += diff * diff;
            }
            d(u, v) = d(v, u) = std::sqrt(acc);
        }
    return DistanceMatrix(std::move(d));
}

namespace {

Vector finite_or_throw(Vector dist) {
    for (double v : dist)
        if (!std::isfinite(v))
            throw std::domain_error("distances: node unreachable (graph disconnected)");
    return dist;
}

}  // namespace

Vector distances(const WeightedGraph& g, const DistanceKind& kind, std::size_t u0) {
    if (u0 >= g.size()) throw std::invalid_argument("distances: u0 out of range");
    switch (kind.type) {
        case DistanceKind::Type::NaiveGeodesic:
            return finite_or_throw(geodesic_from(naive_lengths(g), u0));
        case DistanceKind::Type::InverseSimilarityGeodesic:
            return finite_or_throw(geodesic_from(inverse_similarity(g), u0));
        case DistanceKind::Type::Diffusion:
            return diffusion_distance(g, kind.alpha).row(u0);
        case DistanceKind::Type::ExplicitLengths: {
            if (!kind.explicit_lengths)
                throw std::invalid_argument("distances: explicit kind without a length matrix");
            if (kind.explicit_lengths->size() != g.size())
                throw std::invalid_argument("distances: explicit length matrix size mismatch");
            return finite_or_throw(geodesic_from(*kind.explicit_lengths, u0));
        }
    }
    throw std::logic_error("distances: unknown kind");
}

DistanceMatrix distance_matrix(const WeightedGraph& g, const DistanceKind& kind) {
    switch (kind.type) {
        case DistanceKind::Type::NaiveGeodesic:
            return all_pairs_geodesic(naive_lengths(g));
        case DistanceKind::Type::InverseSimilarityGeodesic:
            return all_pairs_geodesic(inverse_similarity(g));
        case DistanceKind::Type::Diffusion:
            return diffusion_distance(g, kind.alpha);
        case DistanceKind::Type::ExplicitLengths:
            if (!kind.explicit_lengths)
                throw std::invalid_argument("distance_matrix: explicit kind without lengths");
            return all_pairs_geodesic(*kind.explicit_lengths);
    }
    throw std::logic_error("distance_matrix: unknown kind");
}

DistancePropertyReport check_distance_properties(const DistanceKind& kind,
                                                 const WeightedGraph& g,
                                                 std::size_t trials,
                                                 double perturbation,
                                                 std::uint64_t seed,
                                                 double monotone_tol) {
    if (kind.type == DistanceKind::Type::ExplicitLengths)
        throw std::invalid_argument(
            "check_distance_properties: explicit lengths are not a function of W");
    if (!(perturbation > 0.0))
        throw std::invalid_argument("check_distance_properties: perturbation must be > 0");

    const std::size_t n = g.size();
    DistancePropertyReport report;
    const DistanceMatrix base = distance_matrix(g, kind);

    // P1: nonnegativity (DistanceMatrix construction also enforces this)
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (base(u, v) < 0.0) report.nonnegative = false;

    // P2 (forward): zero-distance pairs have identical distance profiles
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            if (base(u, v) > 1e-12) continue;
            for (std::size_t w = 0; w < n; ++w)
                if (std::abs(base(u, w) - base(v, w)) > 1e-9)
                    report.zero_distance_equivalence = false;
        }

    // P3: raising a single weight never increases any distance
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (g.weight(u, v) > 0.0) edges.emplace_back(u, v);
    if (!edges.empty()) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
        for (std::size_t t = 0; t < trials; ++t) {
            const auto [u, v] = edges[pick(rng)];
            const WeightedGraph g2 = g.with_weight(u, v, g.weight(u, v) + perturbation);
            const DistanceMatrix after = distance_matrix(g2, kind);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    const double change = after(a, b) - base(a, b);
                    if (change > monotone_tol) report.monotone_nonincreasing = false;
                    report.observed_modulus =
                        std::max(report.observed_modulus, std::abs(change));
                }
        }
    }
    return report;
}

}  // namespace gsp
