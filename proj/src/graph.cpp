#include "gsp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

namespace gsp {

WeightedGraph::WeightedGraph(Matrix weights) : weights_(std::move(weights)) {
    const std::size_t n = weights_.rows();
    if (n == 0 || weights_.cols() != n)
        throw std::invalid_argument("WeightedGraph: weight matrix must be square and nonempty");
    if (!weights_.is_symmetric(1e-12))
        throw std::invalid_argument("WeightedGraph: weight matrix not symmetric");
    for (std::size_t j = 0; j < n; ++j) {
        if (weights_(j, j) != 0.0)
            throw std::invalid_argument("WeightedGraph: nonzero diagonal entry");
        for (std::size_t i = 0; i < n; ++i) {
            const double w = weights_(i, j);
            if (!std::isfinite(w) || w < 0.0)
                throw std::invalid_argument("WeightedGraph: weights must be finite and >= 0");
        }
    }
    weights_.symmetrize();
}

WeightedGraph WeightedGraph::with_weight(std::size_t u, std::size_t v, double w) const {
    if (u == v) throw std::invalid_argument("with_weight: self-loop");
    Matrix m = weights_;
    m(u, v) = w;
    m(v, u) = w;
    return WeightedGraph(std::move(m));
}

bool GraphSignal::is_unit_norm(double tol) const { return std::abs(norm() - 1.0) <= tol; }

void GraphSignal::normalize() {
    const double nrm = norm();
    if (nrm < 1e-300) throw std::domain_error("GraphSignal::normalize: zero signal");
    for (double& v : values) v /= nrm;
}

GraphSignal GraphSignal::delta(std::size_t n, std::size_t at) {
    GraphSignal s{Vector(n, 0.0)};
    s.values.at(at) = 1.0;
    return s;
}

GraphSignal GraphSignal::constant(std::size_t n, double value) {
    return GraphSignal{Vector(n, value)};
}

Vector degrees(const WeightedGraph& g) {
    const std::size_t n = g.size();
    Vector d(n, 0.0);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) d[u] += g.weight(u, v);
    return d;
}

Matrix degree_matrix(const WeightedGraph& g) {
    const Vector d = degrees(g);
    Matrix m(g.size(), g.size());
    for (std::size_t u = 0; u < g.size(); ++u) m(u, u) = d[u];
    return m;
}

Matrix normalized_laplacian(const WeightedGraph& g) {
    const std::size_t n = g.size();
    const Vector d = degrees(g);
    Vector dinv(n);
    for (std::size_t u = 0; u < n; ++u) {
        if (d[u] <= 0.0)
            throw std::domain_error("normalized_laplacian: node with zero degree");
        dinv[u] = 1.0 / std::sqrt(d[u]);
    }
    Matrix l(n, n);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t u = 0; u < n; ++u)
            l(u, v) = -g.weight(u, v) * (dinv[u] * dinv[v]);
        l(v, v) = 1.0;
    }
    return l;
}

Matrix combinatorial_laplacian(const WeightedGraph& g) {
    const std::size_t n = g.size();
    const Vector d = degrees(g);
    Matrix l(n, n);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t u = 0; u < n; ++u) l(u, v) = -g.weight(u, v);
        l(v, v) = d[v];
    }
    return l;
}

bool is_connected(const WeightedGraph& g) {
    const std::size_t n = g.size();
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < n; ++v) {
            if (!seen[v] && g.weight(u, v) > 0.0) {
                seen[v] = true;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == n;
}

WeightedGraph read_graph(std::istream& in) {
    std::size_t n = 0;
    if (!(in >> n) || n == 0) throw ParseError("graph file: bad node count");
    Matrix w(n, n);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::size_t u, v;
    double wt;
    while (in >> u) {
        if (!(in >> v >> wt)) throw ParseError("graph file: truncated edge line");
        if (u >= n || v >= n) throw ParseError("graph file: node index out of range");
        if (u == v) throw ParseError("graph file: self-loop rejected");
        if (wt < 0.0 || !std::isfinite(wt)) throw ParseError("graph file: bad weight");
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second) throw ParseError("graph file: duplicate edge");
        w(u, v) = wt;
        w(v, u) = wt;
    }
    if (!in.eof()) throw ParseError("graph file: malformed edge line");
    return WeightedGraph(std::move(w));
}

WeightedGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file: " + path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
    out << g.size() << "\n";
    char buf[64];
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t v = u + 1; v < g.size(); ++v)
            if (g.weight(u, v) != 0.0) {
                std::snprintf(buf, sizeof(buf), "%.17g", g.weight(u, v));
                out << u << " " << v << " " << buf << "\n";
            }
}

GraphSignal read_signal(std::istream& in) {
    GraphSignal s;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        double v;
        if (!(ls >> v)) throw ParseError("signal file: bad value line: " + line);
        std::string rest;
        if (ls >> rest) throw ParseError("signal file: trailing content: " + line);
        s.values.push_back(v);
    }
    if (s.values.empty()) throw ParseError("signal file: empty");
    return s;
}

GraphSignal read_signal_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open signal file: " + path);
    return read_signal(in);
}

}  // namespace gsp
