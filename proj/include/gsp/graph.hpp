#pragma once

#include <iosfwd>
#include <string>

#include "gsp/eigen.hpp"
#include "gsp/matrix.hpp"

namespace gsp {

// Errors raised while reading graph/signal/image files.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Undirected graph given by a symmetric nonnegative similarity matrix with
// zero diagonal; a zero entry means "no edge".
class WeightedGraph {
  public:
    // Validates symmetry (1e-12), zero diagonal, finiteness and
    // nonnegativity, then symmetrizes exactly.
    explicit WeightedGraph(Matrix weights);

    std::size_t size() const { return weights_.rows(); }
    const Matrix& weights() const { return weights_; }
    double weight(std::size_t u, std::size_t v) const { return weights_(u, v); }

    // Returns a copy with one symmetric entry changed (used by the distance
    // property harness and the weight randomizer).
    WeightedGraph with_weight(std::size_t u, std::size_t v, double w) const;

  private:
    Matrix weights_;
};

struct GraphSignal {
    Vector values;

    std::size_t size() const { return values.size(); }
    double norm() const { return norm2(values); }
    bool is_unit_norm(double tol = 1e-9) const;
    // Scales to unit Euclidean norm; throws on (near-)zero signals.
    void normalize();

    static GraphSignal delta(std::size_t n, std::size_t at);
    static GraphSignal constant(std::size_t n, double value);
};

Matrix degree_matrix(const WeightedGraph& g);
Vector degrees(const WeightedGraph& g);

// I - D^{-1/2} W D^{-1/2}; throws std::domain_error on zero-degree nodes.
Matrix normalized_laplacian(const WeightedGraph& g);

// D - W
Matrix combinatorial_laplacian(const WeightedGraph& g);

// Breadth-first reachability from node 0 over nonzero weights.
bool is_connected(const WeightedGraph& g);

// Text format: first line `n`, then `u v w` per nonzero upper-triangular
// entry. Rejects self-loops, duplicates, negative weights, bad indices.
WeightedGraph read_graph(std::istream& in);
WeightedGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const WeightedGraph& g);

// Signal file: one decimal per line.
GraphSignal read_signal(std::istream& in);
GraphSignal read_signal_file(const std::string& path);

}  // namespace gsp
