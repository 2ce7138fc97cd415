#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hcol/colouring.hpp"
#include "hcol/hypergraph.hpp"

namespace hcol {

// Record of the simultaneous-round stripping process.
struct CoreTrace {
    std::vector<std::vector<Vertex>> rounds;  // vertices removed per round
    std::vector<Vertex> core;                 // sorted survivors
    std::vector<EdgeId> surviving_edges;      // edges with all endpoints in the core
    std::vector<std::int32_t> removal_round;  // per vertex; -1 means in the core

    bool in_core(Vertex v) const { return removal_round[v] < 0; }
};

// Directed multigraph induced by a vertex set T inside the core.
struct FlipDigraph {
    struct Arc {
        Vertex from;
        Vertex to;
        int colour;  // the gamma whose essential edge produced the arc
    };

    std::vector<Vertex> vertices;
    std::vector<Arc> arcs;
    std::map<Vertex, int> in_deg;
    std::map<Vertex, int> out_deg;
    std::map<std::pair<Vertex, int>, int> per_colour_out;  // d_T^+(v, gamma)
};

// Single-vertex recolouring steps that change the target's colour while
// keeping every prefix proper.
struct RecolouringSequence {
    Vertex target = -1;
    std::vector<std::pair<Vertex, int>> steps;  // (vertex, new colour)
};

// Edges through v whose other k-1 vertices all carry colour gamma.
// gamma must differ from sigma(v).
std::vector<EdgeId> essential_edges(const Hypergraph& h, const Incidence& inc,
                                    const Colouring& sigma, Vertex v, int gamma);

// Simultaneous-round peeling: each round removes every current vertex that
// lacks an essential edge for some non-own colour; incident edges go with it.
CoreTrace extract_core(const Hypergraph& h, const Colouring& sigma);

// One-sided witness that v is not 1-frozen. Follows the stripping rounds
// inside the depth-limited neighbourhood of v, recolouring each stripped
// vertex to its least admissible colour. Every step is validated; returns
// nothing when the preconditions fail or validation breaks.
// With require_acyclic=false the sequence is attempted even when the
// neighbourhood contains a cycle; validation remains the soundness gate.
std::optional<RecolouringSequence> recolouring_certificate(
    const Hypergraph& h, const Incidence& inc, const Colouring& sigma,
    const CoreTrace& trace, Vertex v, int depth_budget, bool require_acyclic = true);

// Replays a sequence and checks that every prefix is proper and the target's
// colour changes.
bool validate_recolouring(const Hypergraph& h, const Colouring& sigma,
                          const RecolouringSequence& seq);

// BFS over proper colourings reachable by moves changing at most ell
// vertices; true iff every reachable colouring agrees with sigma at v.
bool is_ell_frozen_exact(const Hypergraph& h, const Colouring& sigma, Vertex v,
                         int ell, std::int64_t max_states = 10000000);

// T is flippable when every v in T has a colour gamma whose essential edges
// (within the core) all meet T outside v.
bool is_flippable(const Hypergraph& h, const Colouring& sigma,
                  const CoreTrace& trace, const std::vector<Vertex>& T);

FlipDigraph flip_digraph(const Hypergraph& h, const Colouring& sigma,
                         const CoreTrace& trace, const std::vector<Vertex>& T);

// Largest subset of T whose induced digraph has minimum in-degree >= 1.
// By default the digraph is recomputed on each shrinking set; with
// recompute=false the original D(T) is frozen and only restricted.
std::vector<Vertex> star_flippable_kernel(const Hypergraph& h, const Colouring& sigma,
                                          const CoreTrace& trace,
                                          const std::vector<Vertex>& T,
                                          bool recompute = true);

}  // namespace hcol
