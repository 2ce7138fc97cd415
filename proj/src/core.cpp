#include "hcol/core.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace hcol {

namespace {

void check_vertex(const Hypergraph& h, Vertex v) {
    if (v < 0 || v >= h.n()) throw std::invalid_argument("bad vertex id");
}

// The (u, gamma) pair an edge supports, if its colour pattern is (k-1, 1):
// u is the odd vertex, gamma the majority colour. Returns {-1, -1} otherwise.
std::pair<Vertex, int> essential_target(const Hypergraph& h, const Colouring& sigma,
                                        EdgeId e) {
    auto sp = h.edge(e);
    const int k = static_cast<int>(sp.size());
    const int c0 = sigma.at(sp[0]);
    int count0 = 0;
    for (Vertex v : sp)
        if (sigma.at(v) == c0) ++count0;
    if (count0 == k - 1) {
        for (Vertex v : sp)
            if (sigma.at(v) != c0) return {v, c0};
    }
    if (count0 == 1) {
        // sp[0] is the odd vertex iff the rest share one colour
        const int cx = sigma.at(sp[1]);
        for (int i = 2; i < k; ++i)
            if (sigma.at(sp[i]) != cx) return {-1, -1};
        return {sp[0], cx};
    }
    return {-1, -1};
}

}  // namespace

std::vector<EdgeId> essential_edges(const Hypergraph& h, const Incidence& inc,
                                    const Colouring& sigma, Vertex v, int gamma) {
    check_vertex(h, v);
    if (gamma < 0 || gamma >= sigma.q)
        throw std::invalid_argument("essential_edges: colour out of range");
    if (gamma == sigma.at(v))
        throw std::invalid_argument("essential_edges: gamma equals sigma(v)");
    std::vector<EdgeId> out;
    for (EdgeId e : inc.at(v)) {
        bool ok = true;
        for (Vertex u : h.edge(e)) {
            if (u == v) continue;
            if (sigma.at(u) != gamma) { ok = false; break; }
        }
        if (ok) out.push_back(e);
    }
    return out;
}

CoreTrace extract_core(const Hypergraph& h, const Colouring& sigma) {
    if (!is_proper(h, sigma))
        throw std::invalid_argument("extract_core: sigma is not proper");
    const std::int64_t n = h.n();
    const std::int64_t m = h.edge_count();
    const int q = sigma.q;

    // per edge: the (vertex, colour) pair it is essential for, if any
    std::vector<Vertex> ess_vertex(m, -1);
    std::vector<int> ess_colour(m, -1);
    // per (vertex, colour): count of live essential edges
    std::vector<std::int32_t> ess_count(static_cast<std::size_t>(n) * q, 0);
    for (EdgeId e = 0; e < m; ++e) {
        auto [u, gamma] = essential_target(h, sigma, e);
        ess_vertex[e] = u;
        ess_colour[e] = gamma;
        if (u >= 0) ++ess_count[static_cast<std::size_t>(u) * q + gamma];
    }

    const Incidence inc = Incidence::build(h);

    std::vector<char> vertex_alive(n, 1);
    std::vector<char> edge_alive(m, 1);
    std::vector<char> scheduled(n, 0);

    auto removable = [&](Vertex v) {
        const auto base = static_cast<std::size_t>(v) * q;
        for (int gamma = 0; gamma < q; ++gamma) {
            if (gamma == sigma.at(v)) continue;
            if (ess_count[base + gamma] == 0) return true;
        }
        return false;
    };

    CoreTrace trace;
    trace.removal_round.assign(n, -1);

    std::vector<Vertex> round;
    for (Vertex v = 0; v < n; ++v)
        if (removable(v)) { round.push_back(v); scheduled[v] = 1; }

    int round_idx = 0;
    while (!round.empty()) {
        std::vector<Vertex> next;
        for (Vertex v : round) {
            vertex_alive[v] = 0;
            trace.removal_round[v] = round_idx;
        }
        for (Vertex v : round) {
            for (EdgeId e : inc.at(v)) {
                if (!edge_alive[e]) continue;
                edge_alive[e] = 0;
                const Vertex u = ess_vertex[e];
                if (u < 0 || !vertex_alive[u]) continue;
                auto& cnt = ess_count[static_cast<std::size_t>(u) * q + ess_colour[e]];
                if (--cnt == 0 && !scheduled[u]) {
                    next.push_back(u);
                    scheduled[u] = 1;
                }
            }
        }
        trace.rounds.push_back(std::move(round));
        round = std::move(next);
        std::sort(round.begin(), round.end());
        ++round_idx;
    }

    for (Vertex v = 0; v < n; ++v)
        if (vertex_alive[v]) trace.core.push_back(v);
    for (EdgeId e = 0; e < m; ++e)
        if (edge_alive[e]) trace.surviving_edges.push_back(e);
    return trace;
}

namespace {

// edge alive at stripping round j: every endpoint survives to round j
bool edge_in_round(const Hypergraph& h, const CoreTrace& trace, EdgeId e, int j) {
    for (Vertex u : h.edge(e)) {
        const auto r = trace.removal_round[u];
        if (r >= 0 && r < j) return false;
    }
    return true;
}

}  // namespace

std::optional<RecolouringSequence> recolouring_certificate(
    const Hypergraph& h, const Incidence& inc, const Colouring& sigma,
    const CoreTrace& trace, Vertex v, int depth_budget, bool require_acyclic) {
    check_vertex(h, v);
    if (!is_proper(h, sigma))
        throw std::invalid_argument("recolouring_certificate: sigma is not proper");
    if (trace.in_core(v)) return std::nullopt;

    const auto nb = explore_neighbourhood(h, inc, v, depth_budget);
    if (require_acyclic && nb.cycle_at_depth) return std::nullopt;

    const int target_round = trace.removal_round[v];

    // stripped neighbourhood vertices, ordered by (round, vertex id)
    std::vector<std::pair<int, Vertex>> plan;
    for (const auto& layer : nb.layers)
        for (Vertex u : layer) {
            const int r = trace.removal_round[u];
            if (r < 0 || r > target_round) continue;
            if (r == target_round && u > v) continue;
            plan.emplace_back(r, u);
        }
    std::sort(plan.begin(), plan.end());

    Colouring current = sigma;
    RecolouringSequence seq;
    seq.target = v;

    for (const auto& [j, u] : plan) {
        // least colour with no (u, gamma)-essential edge in H'(j), wrt sigma
        int chosen = -1;
        for (int gamma = 0; gamma < sigma.q && chosen < 0; ++gamma) {
            if (gamma == sigma.at(u)) continue;
            bool has_essential = false;
            for (EdgeId e : inc.at(u)) {
                if (!edge_in_round(h, trace, e, j)) continue;
                bool ess = true;
                for (Vertex w : h.edge(e)) {
                    if (w == u) continue;
                    if (sigma.at(w) != gamma) { ess = false; break; }
                }
                if (ess) { has_essential = true; break; }
            }
            if (!has_essential) chosen = gamma;
        }
        if (chosen < 0) return std::nullopt;  // u should not have been stripped

        // the move must keep the colouring proper
        for (EdgeId e : inc.at(u)) {
            bool mono = true;
            for (Vertex w : h.edge(e)) {
                if (w == u) continue;
                if (current.at(w) != chosen) { mono = false; break; }
            }
            if (mono) return std::nullopt;
        }
        current.assignment[u] = static_cast<std::uint8_t>(chosen);
        seq.steps.emplace_back(u, chosen);
        if (u == v) return seq;
    }
    return std::nullopt;  // v never reached (outside its own neighbourhood?)
}

bool validate_recolouring(const Hypergraph& h, const Colouring& sigma,
                          const RecolouringSequence& seq) {
    if (!is_proper(h, sigma)) return false;
    Colouring current = sigma;
    for (const auto& [u, c] : seq.steps) {
        if (u < 0 || u >= h.n() || c < 0 || c >= sigma.q) return false;
        current.assignment[u] = static_cast<std::uint8_t>(c);
        if (!is_proper(h, current)) return false;
    }
    return current.at(seq.target) != sigma.at(seq.target);
}

namespace {

std::uint64_t encode(const std::vector<std::uint8_t>& a, int q) {
    std::uint64_t code = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it)
        code = code * q + *it;
    return code;
}

}  // namespace

bool is_ell_frozen_exact(const Hypergraph& h, const Colouring& sigma, Vertex v,
                         int ell, std::int64_t max_states) {
    check_vertex(h, v);
    if (ell < 1) throw std::invalid_argument("is_ell_frozen_exact: ell must be >= 1");
    if (!is_proper(h, sigma))
        throw std::invalid_argument("is_ell_frozen_exact: sigma is not proper");
    const std::int64_t n = h.n();
    const int q = sigma.q;
    if (n * std::log(static_cast<double>(q)) > 62 * std::log(2.0))
        throw ResourceGuardError("is_ell_frozen_exact: state space does not fit 64 bits");

    std::unordered_set<std::uint64_t> visited;
    std::deque<std::vector<std::uint8_t>> queue;
    visited.insert(encode(sigma.assignment, q));
    queue.push_back(sigma.assignment);

    std::vector<std::uint8_t> work;
    bool frozen = true;

    Colouring probe;
    probe.q = q;

    // enumerate assignments differing from `work` in 1..ell positions >= pos
    auto explore = [&](auto&& self, std::int64_t pos, int budget) -> bool {
        for (std::int64_t i = pos; i < n; ++i) {
            const std::uint8_t old = work[i];
            for (int c = 0; c < q; ++c) {
                if (c == old) continue;
                work[i] = static_cast<std::uint8_t>(c);
                const std::uint64_t code = encode(work, q);
                if (!visited.contains(code)) {
                    probe.assignment = work;
                    if (is_proper(h, probe)) {
                        if (work[v] != sigma.assignment[v]) { work[i] = old; return false; }
                        visited.insert(code);
                        if (static_cast<std::int64_t>(visited.size()) > max_states) {
                            work[i] = old;
                            throw ResourceGuardError("is_ell_frozen_exact: state budget exceeded");
                        }
                        queue.push_back(work);
                    }
                }
                if (budget > 1 && !self(self, i + 1, budget - 1)) { work[i] = old; return false; }
            }
            work[i] = old;
        }
        return true;
    };

    while (!queue.empty() && frozen) {
        work = std::move(queue.front());
        queue.pop_front();
        if (!explore(explore, 0, ell)) frozen = false;
    }
    return frozen;
}

namespace {

struct CoreView {
    std::vector<char> in_core;
    std::vector<std::vector<EdgeId>> core_inc;  // surviving edges per core vertex

    CoreView(const Hypergraph& h, const CoreTrace& trace) {
        in_core.assign(h.n(), 0);
        for (Vertex v : trace.core) in_core[v] = 1;
        core_inc.assign(h.n(), {});
        for (EdgeId e : trace.surviving_edges)
            for (Vertex u : h.edge(e)) core_inc[u].push_back(e);
    }
};

void check_subset_of_core(const CoreView& view, const std::vector<Vertex>& T) {
    for (Vertex v : T)
        if (v < 0 || v >= static_cast<Vertex>(view.in_core.size()) || !view.in_core[v])
            throw std::invalid_argument("flippable: T is not contained in the core");
}

// whether Psi_T(v, gamma) holds: every surviving (v,gamma)-essential edge
// meets T outside v
bool psi_event(const Hypergraph& h, const Colouring& sigma, const CoreView& view,
               const std::vector<char>& in_T, Vertex v, int gamma) {
    for (EdgeId e : view.core_inc[v]) {
        bool ess = true;
        for (Vertex w : h.edge(e)) {
            if (w == v) continue;
            if (sigma.at(w) != gamma) { ess = false; break; }
        }
        if (!ess) continue;
        bool meets = false;
        for (Vertex w : h.edge(e)) {
            if (w == v) continue;
            if (in_T[w]) { meets = true; break; }
        }
        if (!meets) return false;
    }
    return true;
}

}  // namespace

bool is_flippable(const Hypergraph& h, const Colouring& sigma,
                  const CoreTrace& trace, const std::vector<Vertex>& T) {
    const CoreView view(h, trace);
    check_subset_of_core(view, T);
    std::vector<char> in_T(h.n(), 0);
    for (Vertex v : T) in_T[v] = 1;
    for (Vertex v : T) {
        bool ok = false;
        for (int gamma = 0; gamma < sigma.q && !ok; ++gamma) {
            if (gamma == sigma.at(v)) continue;
            ok = psi_event(h, sigma, view, in_T, v, gamma);
        }
        if (!ok) return false;
    }
    return true;
}

FlipDigraph flip_digraph(const Hypergraph& h, const Colouring& sigma,
                         const CoreTrace& trace, const std::vector<Vertex>& T) {
    const CoreView view(h, trace);
    check_subset_of_core(view, T);
    std::vector<char> in_T(h.n(), 0);
    for (Vertex v : T) in_T[v] = 1;

    FlipDigraph d;
    d.vertices = T;
    std::sort(d.vertices.begin(), d.vertices.end());
    for (Vertex v : d.vertices) {
        d.in_deg[v];
        d.out_deg[v];
    }
    for (Vertex v : d.vertices) {
        for (int gamma = 0; gamma < sigma.q; ++gamma) {
            if (gamma == sigma.at(v)) continue;
            if (!psi_event(h, sigma, view, in_T, v, gamma)) continue;
            for (EdgeId e : view.core_inc[v]) {
                bool ess = true;
                for (Vertex w : h.edge(e)) {
                    if (w == v) continue;
                    if (sigma.at(w) != gamma) { ess = false; break; }
                }
                if (!ess) continue;
                for (Vertex w : h.edge(e)) {
                    if (w == v || !in_T[w]) continue;
                    d.arcs.push_back({v, w, gamma});
                    ++d.out_deg[v];
                    ++d.in_deg[w];
                    ++d.per_colour_out[{v, gamma}];
                }
            }
        }
    }
    return d;
}

std::vector<Vertex> star_flippable_kernel(const Hypergraph& h, const Colouring& sigma,
                                          const CoreTrace& trace,
                                          const std::vector<Vertex>& T,
                                          bool recompute) {
    std::vector<Vertex> current = T;
    std::sort(current.begin(), current.end());

    if (recompute) {
        for (;;) {
            if (current.empty()) return current;
            const FlipDigraph d = flip_digraph(h, sigma, trace, current);
            std::vector<Vertex> kept;
            for (Vertex v : current)
                if (d.in_deg.at(v) >= 1) kept.push_back(v);
            if (kept.size() == current.size()) return current;
            current = std::move(kept);
        }
    }

    // frozen variant: restrict the original D(T) instead of recomputing Psi
    const FlipDigraph d0 = flip_digraph(h, sigma, trace, current);
    std::set<Vertex> alive(current.begin(), current.end());
    for (;;) {
        std::map<Vertex, int> indeg;
        for (Vertex v : alive) indeg[v] = 0;
        for (const auto& a : d0.arcs)
            if (alive.contains(a.from) && alive.contains(a.to)) ++indeg[a.to];
        std::vector<Vertex> drop;
        for (const auto& [v, deg] : indeg)
            if (deg == 0) drop.push_back(v);
        if (drop.empty()) break;
        for (Vertex v : drop) alive.erase(v);
    }
    return {alive.begin(), alive.end()};
}

}  // namespace hcol
