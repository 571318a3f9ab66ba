#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "gsp/distances.hpp"
#include "gsp/graph.hpp"

namespace gsp {

struct GrayImage {
    std::size_t width = 0, height = 0;
    Vector intensities;  // row-major, values in [0,1]

    double at(std::size_t row, std::size_t col) const {
        return intensities[row * width + col];
    }
};

struct PointCloud {
    std::vector<std::pair<double, double>> points;  // coordinates in [0,1]^2
};

struct GeometricGraph {
    LengthMatrix lengths;  // normalized Euclidean lengths; +inf beyond radius
    PointCloud cloud;
};

// Deterministic per-trial random streams: the same (seed, trial) pair always
// produces the same engine, and distinct trials use disjoint streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);
std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t trial);

WeightedGraph complete_graph(std::size_t n);
WeightedGraph star_graph(std::size_t n);  // center is node 0
WeightedGraph ring_graph(std::size_t n);
WeightedGraph path_graph(std::size_t n);

// Replaces every existing edge weight by an independent uniform(0,1) draw
// (exact zeros are redrawn); topology is preserved.
WeightedGraph randomize_weights(const WeightedGraph& g, std::mt19937_64& rng);
WeightedGraph randomize_weights(const WeightedGraph& g, std::uint64_t seed);

// n points uniform in the unit square; pairs strictly closer than r get a
// length equal to their Euclidean distance divided by the max distance over
// ALL pairs. Resamples until the edge set is connected (up to 1000 tries).
GeometricGraph random_geometric(std::size_t n, double r, std::uint64_t seed);

// W_uv = alpha * exp(-beta * x^2) over each edge length x; absent edges stay
// absent.
WeightedGraph gaussian_kernel(const LengthMatrix& lengths, double alpha, double beta);

// Pixels as nodes (row-major), 8-neighborhood edges, weights from the
// Gaussian kernel over intensity differences.
WeightedGraph image_grid_graph(const GrayImage& img, double alpha, double beta);

// 8-bit PGM, ASCII (P2) or binary (P5); intensities divided by maxval.
GrayImage read_pgm(std::istream& in);
GrayImage read_pgm_file(const std::string& path);

}  // namespace gsp
