#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hcol {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

struct Colouring;  // colouring.hpp

// Parameters of the random models: q colours, k-uniform edges, density c
// (edges per vertex), n vertices. m = floor(c*n).
struct ModelParams {
    int q = 3;
    int k = 3;
    double c = 1.0;
    std::int64_t n = 0;

    std::int64_t edge_count() const;
    void validate(bool need_n = false) const;  // throws std::invalid_argument
};

// k-uniform (multi-)hypergraph on vertices [0, n). Edges are stored flat,
// k vertices each, sorted ascending within an edge.
class Hypergraph {
public:
    Hypergraph(std::int64_t n, int k, bool multi_edges_allowed = false);

    std::int64_t n() const { return n_; }
    int k() const { return k_; }
    bool multi_edges_allowed() const { return multi_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(flat_.size()) / k_; }

    std::span<const Vertex> edge(EdgeId e) const {
        return {flat_.data() + static_cast<std::size_t>(e) * k_, static_cast<std::size_t>(k_)};
    }

    // Sorts and validates the edge (k distinct vertices in range).
    void add_edge(std::span<const Vertex> vs);

    bool is_simple() const;  // no repeated edge as a set

    bool operator==(const Hypergraph&) const = default;

private:
    std::int64_t n_;
    int k_;
    bool multi_;
    std::vector<Vertex> flat_;
};

// Vertex -> incident edge ids, CSR layout.
struct Incidence {
    std::vector<std::int64_t> offsets;  // n+1
    std::vector<EdgeId> edge_ids;

    std::span<const EdgeId> at(Vertex v) const {
        return {edge_ids.data() + offsets[v],
                static_cast<std::size_t>(offsets[v + 1] - offsets[v])};
    }

    static Incidence build(const Hypergraph& h);
};

// Breadth-first layers around a root: layers[i] = vertices at distance i,
// protruding[i] = edges meeting layer i but no earlier layer.
struct NeighbourhoodLayers {
    Vertex root = 0;
    std::vector<std::vector<Vertex>> layers;
    std::vector<std::vector<EdgeId>> protruding;
    std::optional<int> cycle_at_depth;
};

// --- random models -------------------------------------------------------

// Uniform over simple hypergraphs with m = floor(c*n) distinct edges.
Hypergraph gen_simple(const ModelParams& params, std::uint64_t seed);

// m independent uniform k-subsets, duplicates permitted.
Hypergraph gen_multi(const ModelParams& params, std::uint64_t seed);

// m independent uniform k-subsets conditioned on not being monochromatic
// under sigma; sigma is a proper colouring of the result.
Hypergraph gen_planted(const ModelParams& params, const Colouring& sigma,
                       std::uint64_t seed);

// Layer-by-layer exploration to the given depth. cycle_at_depth is the least
// i at which a protruding edge meets the explored ball in two vertices, or
// two protruding edges collide on a newly exposed vertex.
NeighbourhoodLayers explore_neighbourhood(const Hypergraph& h, const Incidence& inc,
                                          Vertex v, int depth);
NeighbourhoodLayers explore_neighbourhood(const Hypergraph& h, Vertex v, int depth);

// --- serialization -------------------------------------------------------

// Line format: "n k m multi" header, then one sorted edge per line.
void write_text(const Hypergraph& h, std::ostream& os);
Hypergraph read_text(std::istream& is);
std::string to_text(const Hypergraph& h);
Hypergraph from_text(const std::string& text);

}  // namespace hcol
