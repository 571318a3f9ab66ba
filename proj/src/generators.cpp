#include "gsp/generators.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>

namespace gsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

void require_n(std::size_t n) {
    if (n < 2) throw std::invalid_argument("graph family: n must be >= 2");
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // Stream-splitting rule: mix the seed, offset by the mixed trial index.
    return splitmix64(splitmix64(seed) + splitmix64(index + 1));
}

std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
    return std::mt19937_64(derive_seed(seed, trial));
}

WeightedGraph complete_graph(std::size_t n) {
    require_n(n);
    Matrix w(n, n, 1.0);
    for (std::size_t i = 0; i < n; ++i) w(i, i) = 0.0;
    return WeightedGraph(std::move(w));
}

WeightedGraph star_graph(std::size_t n) {
    require_n(n);
    Matrix w(n, n);
    for (std::size_t i = 1; i < n; ++i) w(0, i) = w(i, 0) = 1.0;
    return WeightedGraph(std::move(w));
}

WeightedGraph ring_graph(std::size_t n) {
    require_n(n);
    Matrix w(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        w(i, j) = w(j, i) = 1.0;
    }
    return WeightedGraph(std::move(w));
}

WeightedGraph path_graph(std::size_t n) {
    require_n(n);
    Matrix w(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) w(i, i + 1) = w(i + 1, i) = 1.0;
    return WeightedGraph(std::move(w));
}

WeightedGraph randomize_weights(const WeightedGraph& g, std::mt19937_64& rng) {
    const std::size_t n = g.size();
    bool has_edge = false;
    Matrix w(n, n);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            if (g.weight(u, v) == 0.0) continue;
            has_edge = true;
            double draw = uni(rng);
            while (draw == 0.0) draw = uni(rng);
            w(u, v) = w(v, u) = draw;
        }
    if (!has_edge) throw std::invalid_argument("randomize_weights: graph has no edges");
    return WeightedGraph(std::move(w));
}

WeightedGraph randomize_weights(const WeightedGraph& g, std::uint64_t seed) {
    std::mt19937_64 rng = trial_stream(seed, 0);
    return randomize_weights(g, rng);
}

GeometricGraph random_geometric(std::size_t n, double r, std::uint64_t seed) {
    require_n(n);
    if (!(r > 0.0)) throw std::invalid_argument("random_geometric: radius must be > 0");
    const std::size_t kMaxTries = 1000;
    std::size_t connected_failures = 0;
    for (std::size_t attempt = 0; attempt < kMaxTries; ++attempt) {
        std::mt19937_64 rng = trial_stream(seed, attempt);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        PointCloud cloud;
        cloud.points.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = uni(rng);
            const double y = uni(rng);
            cloud.points.emplace_back(x, y);
        }
        double dmax = 0.0;
        Matrix euc(n, n);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v) {
                const double dx = cloud.points[u].first - cloud.points[v].first;
                const double dy = cloud.points[u].second - cloud.points[v].second;
                const double d = std::hypot(dx, dy);
                euc(u, v) = euc(v, u) = d;
                dmax = std::max(dmax, d);
            }
        LengthMatrix lengths = LengthMatrix::no_edges(n);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v)
                if (euc(u, v) < r) lengths.set(u, v, euc(u, v) / dmax);

        // connectivity over finite entries
        Matrix adj(n, n);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                adj(u, v) = lengths.has_edge(u, v) ? 1.0 : 0.0;
        if (is_connected(WeightedGraph(std::move(adj))))
            return GeometricGraph{std::move(lengths), std::move(cloud)};
        ++connected_failures;
    }
    throw std::runtime_error(
        "random_geometric: no connected sample in " + std::to_string(kMaxTries) +
        " tries (connectivity rate 0/" + std::to_string(connected_failures) + ")");
}

WeightedGraph gaussian_kernel(const LengthMatrix& lengths, double alpha, double beta) {
    if (!(alpha > 0.0)) throw std::invalid_argument("gaussian_kernel: alpha must be > 0");
    if (beta < 0.0) throw std::invalid_argument("gaussian_kernel: beta must be >= 0");
    const std::size_t n = lengths.size();
    Matrix w(n, n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (lengths.has_edge(u, v)) {
                const double x = lengths(u, v);
                w(u, v) = w(v, u) = alpha * std::exp(-beta * x * x);
            }
    return WeightedGraph(std::move(w));
}

WeightedGraph image_grid_graph(const GrayImage& img, double alpha, double beta) {
    if (img.width < 2 || img.height < 2)
        throw std::invalid_argument("image_grid_graph: image must be at least 2x2");
    if (img.intensities.size() != img.width * img.height)
        throw std::invalid_argument("image_grid_graph: intensity count mismatch");
    const std::size_t n = img.width * img.height;
    Matrix w(n, n);
    auto node = [&](std::size_t row, std::size_t col) { return row * img.width + col; };
    for (std::size_t row = 0; row < img.height; ++row)
        for (std::size_t col = 0; col < img.width; ++col) {
            // east, south-west, south, south-east cover each 8-neighbor pair once
            static constexpr int kOffsets[4][2] = {{0, 1}, {1, -1}, {1, 0}, {1, 1}};
            for (const auto& off : kOffsets) {
                const std::ptrdiff_t r2 = static_cast<std::ptrdiff_t>(row) + off[0];
                const std::ptrdiff_t c2 = static_cast<std::ptrdiff_t>(col) + off[1];
                if (r2 < 0 || c2 < 0 || r2 >= static_cast<std::ptrdiff_t>(img.height) ||
                    c2 >= static_cast<std::ptrdiff_t>(img.width))
                    continue;
                const double diff = img.at(row, col) - img.at(r2, c2);
                const double wt = alpha * std::exp(-beta * diff * diff);
                const std::size_t a = node(row, col), b = node(r2, c2);
                w(a, b) = w(b, a) = wt;
            }
        }
    return WeightedGraph(std::move(w));
}

namespace {

int next_pgm_token(std::istream& in) {
    // skips whitespace and '#' comments, returns the next integer
    while (true) {
        const int c = in.peek();
        if (c == EOF) throw ParseError("pgm: unexpected end of header");
        if (c == '#') {
            std::string line;
            std::getline(in, line);
            continue;
        }
        if (std::isspace(c)) {
            in.get();
            continue;
        }
        break;
    }
    int value;
    if (!(in >> value)) throw ParseError("pgm: bad header integer");
    return value;
}

}  // namespace

GrayImage read_pgm(std::istream& in) {
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || (m1 != '2' && m1 != '5')) throw ParseError("pgm: not a P2/P5 file");
    const bool binary = (m1 == '5');
    const int width = next_pgm_token(in);
    const int height = next_pgm_token(in);
    const int maxval = next_pgm_token(in);
    if (width <= 0 || height <= 0) throw ParseError("pgm: bad dimensions");
    if (maxval <= 0 || maxval > 255) throw ParseError("pgm: only 8-bit images supported");

    GrayImage img;
    img.width = static_cast<std::size_t>(width);
    img.height = static_cast<std::size_t>(height);
    const std::size_t count = img.width * img.height;
    img.intensities.resize(count);
    if (binary) {
        in.get();  // single whitespace after maxval
        std::vector<unsigned char> raw(count);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(in.gcount()) != count)
            throw ParseError("pgm: truncated pixel data");
        for (std::size_t i = 0; i < count; ++i)
            img.intensities[i] = static_cast<double>(raw[i]) / maxval;
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const int v = next_pgm_token(in);
            if (v < 0 || v > maxval) throw ParseError("pgm: pixel out of range");
            img.intensities[i] = static_cast<double>(v) / maxval;
        }
    }
    return img;
}

GrayImage read_pgm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open image file: " + path);
    return read_pgm(in);
}

}  // namespace gsp
