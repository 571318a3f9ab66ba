#include <doctest.h>

#include <cmath>
#include <random>

#include "gsp/distances.hpp"
#include "gsp/generators.hpp"
#include "test_support.hpp"

using namespace gsp;
using test_support::brute_force_geodesic;
using test_support::collapsed_edge_path;
using test_support::weak_edge_triangle;
using test_support::random_connected_graph;

TEST_CASE("inverse_similarity entries") {
    const WeightedGraph g = weak_edge_triangle(0.25);
    const LengthMatrix s = inverse_similarity(g);
    CHECK(s(0, 1) == doctest::Approx(4.0));
    CHECK(s(0, 2) == doctest::Approx(1.0));
    CHECK(s(1, 2) == doctest::Approx(0.5));
    CHECK(s(0, 0) == 0.0);

    const LengthMatrix lim = inverse_similarity(collapsed_edge_path());
    CHECK(std::isinf(lim(0, 1)));
    CHECK(lim(1, 2) == doctest::Approx(0.5));
}

TEST_CASE("geodesic_from on the triangle family") {
    const WeightedGraph g = weak_edge_triangle(0.1);

    // naive lengths: distances behind the (eps^2+1)/3 spread
    const Vector naive = geodesic_from(naive_lengths(g), 0);
    CHECK(naive[0] == 0.0);
    CHECK(naive[1] == doctest::Approx(0.1));
    CHECK(naive[2] == doctest::Approx(1.0));

    // limit graph: u is reached through v at length 3
    const Vector lim = geodesic_from(naive_lengths(collapsed_edge_path()), 0);
    CHECK(lim[1] == doctest::Approx(3.0));
    CHECK(lim[2] == doctest::Approx(1.0));

    // inverse-similarity lengths (10, 1, 0.5): shortest to u goes via v
    const Vector inv = geodesic_from(inverse_similarity(g), 0);
    CHECK(inv[1] == doctest::Approx(1.5));
    CHECK(inv[2] == doctest::Approx(1.0));
}

TEST_CASE("all_pairs_geodesic basics") {
    const Vector unit{1.0};
    LengthMatrix path = LengthMatrix::no_edges(3);
    path.set(0, 1, 1.0);
    path.set(1, 2, 1.0);
    const DistanceMatrix d = all_pairs_geodesic(path);
    CHECK(d(0, 2) == doctest::Approx(2.0));
    CHECK(d(2, 0) == doctest::Approx(2.0));

    LengthMatrix k3 = LengthMatrix::no_edges(3);
    k3.set(0, 1, 1.0);
    k3.set(0, 2, 1.0);
    k3.set(1, 2, 1.0);
    const DistanceMatrix dk = all_pairs_geodesic(k3);
    for (std::size_t u = 0; u < 3; ++u)
        for (std::size_t v = 0; v < 3; ++v)
            CHECK(dk(u, v) == doctest::Approx(u == v ? 0.0 : 1.0));

    const DistanceMatrix df = all_pairs_geodesic(inverse_similarity(weak_edge_triangle(0.1)));
    CHECK(df(1, 2) == doctest::Approx(0.5));
    CHECK(df(0, 1) == doctest::Approx(1.5));
    CHECK(df(0, 2) == doctest::Approx(1.0));

    // disconnected input is flagged, not silently returned
    LengthMatrix disc = LengthMatrix::no_edges(3);
    disc.set(0, 1, 1.0);
    CHECK_THROWS_AS(all_pairs_geodesic(disc), std::domain_error);
    ReachabilityReport report;
    all_pairs_geodesic_raw(disc, &report);
    CHECK_FALSE(report.all_reachable);
    CHECK(report.unreachable_pairs > 0);
}

TEST_CASE("geodesic agrees with brute-force path enumeration") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 12; ++t) {
        const std::size_t n = 4 + static_cast<std::size_t>(t % 4);
        const WeightedGraph g = random_connected_graph(n, rng);
        const LengthMatrix lengths = inverse_similarity(g);
        for (std::size_t u = 0; u < n; ++u) {
            const Vector d = geodesic_from(lengths, u);
            for (std::size_t v = 0; v < n; ++v)
                CHECK(d[v] == doctest::Approx(brute_force_geodesic(lengths, u, v))
                                  .epsilon(1e-12));
        }
    }
}

TEST_CASE("diffusion closed forms") {
    // single edge weight w: (1,-1)/sqrt(2) is an eigenvector of I+L
    for (double w : {0.1, 1.0, 10.0}) {
        Matrix m(2, 2);
        m(0, 1) = m(1, 0) = w;
        const DistanceMatrix d = diffusion_distance(WeightedGraph{m}, 1.0);
        CHECK(std::abs(d(0, 1) - std::sqrt(2.0) / (1.0 + 2.0 * w)) < 1e-12);
        CHECK(d(0, 0) == 0.0);
    }
    // two isolated nodes: L = 0
    Matrix iso(2, 2);
    const DistanceMatrix d0 = diffusion_distance(WeightedGraph{iso}, 1.0);
    CHECK(d0(0, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(diffusion_distance(complete_graph(3), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(diffusion_distance(complete_graph(3), -1.0), std::invalid_argument);
}

TEST_CASE("diffusion satisfies symmetry and triangle inequality") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 8; ++t) {
        const std::size_t n = 4 + static_cast<std::size_t>(t % 5);
        const WeightedGraph g = random_connected_graph(n, rng);
        const DistanceMatrix d = diffusion_distance(g, 1.0);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                CHECK(d(a, b) == doctest::Approx(d(b, a)).epsilon(1e-12));
                for (std::size_t c = 0; c < n; ++c)
                    CHECK(d(a, c) <= d(a, b) + d(b, c) + 1e-9);
            }
    }
}

TEST_CASE("diffusion is near-monotone: entry-wise increases stay O(delta)") {
    // Raising a weight can raise a distance elsewhere, but only slightly:
    // the worst observed increase is about 1e-2 per unit of perturbation.
    std::mt19937_64 rng(77);
    for (int t = 0; t < 6; ++t) {
        const std::size_t n = 5;
        const WeightedGraph g = random_connected_graph(n, rng);
        const DistanceMatrix base = diffusion_distance(g, 1.0);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (double delta : {0.01, 0.1, 1.0}) {
            std::size_t u = pick(rng), v = pick(rng);
            if (u == v) v = (v + 1) % n;
            const DistanceMatrix after =
                diffusion_distance(g.with_weight(u, v, g.weight(u, v) + delta), 1.0);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    CHECK(after(a, b) <= base(a, b) + 2e-2 * delta);
                    CHECK(after(u, v) <= base(u, v) + 1e-12);
                }
        }
    }
}

TEST_CASE("continuity probe: perturbation effect shrinks with delta") {
    std::mt19937_64 rng(13);
    const WeightedGraph g = random_connected_graph(6, rng);
    for (const DistanceKind& kind : {DistanceKind::invsim(), DistanceKind::diffusion(1.0)}) {
        const DistanceMatrix base = distance_matrix(g, kind);
        double prev = std::numeric_limits<double>::infinity();
        for (double delta : {1e-2, 1e-4, 1e-6}) {
            const DistanceMatrix after =
                distance_matrix(g.with_weight(0, 1, g.weight(0, 1) + delta), kind);
            double change = 0.0;
            for (std::size_t a = 0; a < 6; ++a)
                for (std::size_t b = 0; b < 6; ++b)
                    change = std::max(change, std::abs(after(a, b) - base(a, b)));
            CHECK(change < prev);
            prev = change;
        }
        CHECK(prev < 1e-5);
    }
}

TEST_CASE("unweighted graphs: inverse-similarity geodesic equals naive geodesic") {
    std::mt19937_64 rng(55);
    for (int t = 0; t < 10; ++t) {
        const WeightedGraph g =
            random_connected_graph(6, rng, 0.4, /*unit_weights=*/true);
        const DistanceMatrix a = distance_matrix(g, DistanceKind::naive());
        const DistanceMatrix b = distance_matrix(g, DistanceKind::invsim());
        for (std::size_t u = 0; u < 6; ++u)
            for (std::size_t v = 0; v < 6; ++v) CHECK(a(u, v) == b(u, v));
    }
}

TEST_CASE("distances dispatcher") {
    const WeightedGraph g = weak_edge_triangle(0.1);
    const Vector naive = distances(g, DistanceKind::naive(), 0);
    CHECK(naive[1] == doctest::Approx(0.1));
    const Vector inv = distances(g, DistanceKind::invsim(), 0);
    CHECK(inv[1] == doctest::Approx(1.5));

    Matrix edge(2, 2);
    edge(0, 1) = edge(1, 0) = 1.0;
    const Vector diff = distances(WeightedGraph{edge}, DistanceKind::diffusion(1.0), 0);
    CHECK(diff[0] == 0.0);
    CHECK(diff[1] == doctest::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-12));

    // geodesic kinds demand reachability
    Matrix disc(3, 3);
    disc(0, 1) = disc(1, 0) = 1.0;
    CHECK_THROWS_AS(distances(WeightedGraph{disc}, DistanceKind::invsim(), 0),
                    std::domain_error);

    LengthMatrix ex = LengthMatrix::no_edges(3);
    ex.set(0, 1, 2.0);
    ex.set(1, 2, 3.0);
    const Vector exp_d =
        distances(complete_graph(3), DistanceKind::explicit_lengths_kind(ex), 0);
    CHECK(exp_d[2] == doctest::Approx(5.0));
}

TEST_CASE("DistanceKind parsing") {
    CHECK(DistanceKind::parse("naive").type == DistanceKind::Type::NaiveGeodesic);
    CHECK(DistanceKind::parse("invsim").type ==
          DistanceKind::Type::InverseSimilarityGeodesic);
    const DistanceKind d = DistanceKind::parse("diffusion:2.5");
    CHECK(d.type == DistanceKind::Type::Diffusion);
    CHECK(d.alpha == doctest::Approx(2.5));
    CHECK(DistanceKind::parse("explicit").type == DistanceKind::Type::ExplicitLengths);
    CHECK_THROWS_AS(DistanceKind::parse("bogus"), std::invalid_argument);
    CHECK_THROWS_AS(DistanceKind::parse("diffusion:-1"), std::invalid_argument);
}

TEST_CASE("property harness: compliant kinds pass, naive fails P3") {
    const WeightedGraph g = weak_edge_triangle(0.1);

    const auto inv = check_distance_properties(DistanceKind::invsim(), g, 32, 0.1, 1);
    CHECK(inv.nonnegative);
    CHECK(inv.zero_distance_equivalence);
    CHECK(inv.monotone_nonincreasing);

    // diffusion needs the scaled tolerance: tiny entry-wise increases occur
    const auto diff = check_distance_properties(DistanceKind::diffusion(1.0), g, 32,
                                                0.1, 1, 2e-2 * 0.1);
    CHECK(diff.nonnegative);
    CHECK(diff.zero_distance_equivalence);
    CHECK(diff.monotone_nonincreasing);

    // raising a weight raises the naive geodesic
    const auto naive = check_distance_properties(DistanceKind::naive(), g, 32, 0.1, 1);
    CHECK(naive.nonnegative);
    CHECK_FALSE(naive.monotone_nonincreasing);
}

TEST_CASE("property harness is seeded and reproducible") {
    std::mt19937_64 rng(3);
    const WeightedGraph g = random_connected_graph(6, rng);
    const auto a = check_distance_properties(DistanceKind::invsim(), g, 8, 0.1, 42);
    const auto b = check_distance_properties(DistanceKind::invsim(), g, 8, 0.1, 42);
    CHECK(a.observed_modulus == b.observed_modulus);
}
