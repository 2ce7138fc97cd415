#include "hcol/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "hcol/colouring.hpp"
#include "hcol/rng.hpp"

namespace hcol {

std::int64_t ModelParams::edge_count() const {
    return static_cast<std::int64_t>(std::floor(c * static_cast<double>(n)));
}

void ModelParams::validate(bool need_n) const {
    if (q < 3) throw std::invalid_argument("ModelParams: q must be >= 3");
    if (k < 3) throw std::invalid_argument("ModelParams: k must be >= 3");
    if (!(c > 0.0)) throw std::invalid_argument("ModelParams: c must be > 0");
    if (need_n && n <= 0) throw std::invalid_argument("ModelParams: n must be positive");
    if (need_n && n < k) throw std::invalid_argument("ModelParams: n must be >= k");
}

Hypergraph::Hypergraph(std::int64_t n, int k, bool multi_edges_allowed)
    : n_(n), k_(k), multi_(multi_edges_allowed) {
    if (n < 0) throw std::invalid_argument("Hypergraph: negative n");
    if (k < 2) throw std::invalid_argument("Hypergraph: k must be >= 2");
}

void Hypergraph::add_edge(std::span<const Vertex> vs) {
    if (static_cast<int>(vs.size()) != k_)
        throw std::invalid_argument("add_edge: wrong arity");
    std::vector<Vertex> e(vs.begin(), vs.end());
    std::sort(e.begin(), e.end());
    for (int i = 0; i < k_; ++i) {
        if (e[i] < 0 || e[i] >= n_) throw std::invalid_argument("add_edge: vertex out of range");
        if (i > 0 && e[i] == e[i - 1]) throw std::invalid_argument("add_edge: repeated vertex");
    }
    flat_.insert(flat_.end(), e.begin(), e.end());
}

namespace {

struct EdgeKeyHash {
    std::size_t operator()(const std::vector<Vertex>& e) const {
        std::size_t h = 1469598103934665603ull;
        for (Vertex v : e) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace

bool Hypergraph::is_simple() const {
    std::unordered_set<std::vector<Vertex>, EdgeKeyHash> seen;
    for (EdgeId e = 0; e < edge_count(); ++e) {
        auto sp = edge(e);
        std::vector<Vertex> key(sp.begin(), sp.end());
        if (!seen.insert(std::move(key)).second) return false;
    }
    return true;
}

Incidence Incidence::build(const Hypergraph& h) {
    Incidence inc;
    const std::int64_t n = h.n();
    const std::int64_t m = h.edge_count();
    inc.offsets.assign(n + 1, 0);
    for (EdgeId e = 0; e < m; ++e)
        for (Vertex v : h.edge(e)) ++inc.offsets[v + 1];
    for (std::int64_t v = 0; v < n; ++v) inc.offsets[v + 1] += inc.offsets[v];
    inc.edge_ids.resize(static_cast<std::size_t>(m) * h.k());
    std::vector<std::int64_t> cursor(inc.offsets.begin(), inc.offsets.end() - 1);
    for (EdgeId e = 0; e < m; ++e)
        for (Vertex v : h.edge(e)) inc.edge_ids[cursor[v]++] = e;
    return inc;
}

namespace {

// k distinct vertices of [0,n), sorted
void draw_subset(Rng& rng, std::int64_t n, int k, std::vector<Vertex>& out) {
    out.clear();
    while (static_cast<int>(out.size()) < k) {
        Vertex v = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
}

}  // namespace

Hypergraph gen_simple(const ModelParams& params, std::uint64_t seed) {
    params.validate(true);
    const std::int64_t m = params.edge_count();
    const double total = [&] {
        double t = 1.0;
        for (int i = 0; i < params.k; ++i)
            t *= static_cast<double>(params.n - i) / (i + 1);
        return t;
    }();
    if (static_cast<double>(m) > total)
        throw std::invalid_argument("gen_simple: m exceeds C(n,k)");

    Hypergraph h(params.n, params.k, false);
    Rng rng(seed);
    std::unordered_set<std::vector<Vertex>, EdgeKeyHash> seen;
    std::vector<Vertex> e;
    while (static_cast<std::int64_t>(seen.size()) < m) {
        draw_subset(rng, params.n, params.k, e);
        if (seen.insert(e).second) h.add_edge(e);
    }
    return h;
}

Hypergraph gen_multi(const ModelParams& params, std::uint64_t seed) {
    params.validate(true);
    const std::int64_t m = params.edge_count();
    Hypergraph h(params.n, params.k, true);
    Rng rng(seed);
    std::vector<Vertex> e;
    for (std::int64_t i = 0; i < m; ++i) {
        draw_subset(rng, params.n, params.k, e);
        h.add_edge(e);
    }
    return h;
}

Hypergraph gen_planted(const ModelParams& params, const Colouring& sigma,
                       std::uint64_t seed) {
    params.validate(true);
    if (sigma.n() != params.n)
        throw std::invalid_argument("gen_planted: sigma length mismatch");
    if (binomial(params.n, params.k) <= mono_count(sigma, params.k))
        throw std::invalid_argument("gen_planted: sigma admits no non-monochromatic edge");

    const std::int64_t m = params.edge_count();
    Hypergraph h(params.n, params.k, true);
    Rng rng(seed);
    std::vector<Vertex> e;
    for (std::int64_t i = 0; i < m; ++i) {
        for (;;) {
            draw_subset(rng, params.n, params.k, e);
            const int c0 = sigma.at(e[0]);
            bool mono = true;
            for (int j = 1; j < params.k; ++j)
                if (sigma.at(e[j]) != c0) { mono = false; break; }
            if (!mono) break;
        }
        h.add_edge(e);
    }
    return h;
}

NeighbourhoodLayers explore_neighbourhood(const Hypergraph& h, const Incidence& inc,
                                          Vertex v, int depth) {
    if (v < 0 || v >= h.n()) throw std::invalid_argument("explore_neighbourhood: bad vertex");
    if (depth < 0) throw std::invalid_argument("explore_neighbourhood: negative depth");

    NeighbourhoodLayers out;
    out.root = v;
    out.layers.push_back({v});

    std::unordered_map<Vertex, int> depth_of;  // explored vertices only
    depth_of.emplace(v, 0);
    std::unordered_set<EdgeId> seen_edges;

    for (int i = 0; i <= depth; ++i) {
        // protruding edges: meet layer i, avoid everything shallower
        std::vector<EdgeId> frontier_edges;
        for (Vertex u : out.layers[i]) {
            for (EdgeId e : inc.at(u)) {
                if (!seen_edges.insert(e).second) continue;
                bool touches_earlier = false;
                for (Vertex w : h.edge(e)) {
                    auto it = depth_of.find(w);
                    if (it != depth_of.end() && it->second < i) { touches_earlier = true; break; }
                }
                if (!touches_earlier) frontier_edges.push_back(e);
            }
        }
        std::sort(frontier_edges.begin(), frontier_edges.end());

        std::vector<Vertex> next_layer;
        for (EdgeId e : frontier_edges) {
            int in_ball = 0;
            for (Vertex w : h.edge(e)) {
                auto it = depth_of.find(w);
                if (it != depth_of.end() && it->second <= i) ++in_ball;
            }
            if (in_ball >= 2 && !out.cycle_at_depth) out.cycle_at_depth = i;
            for (Vertex w : h.edge(e)) {
                auto [it, inserted] = depth_of.emplace(w, i + 1);
                if (inserted) {
                    next_layer.push_back(w);
                } else if (it->second == i + 1 && !out.cycle_at_depth) {
                    // two frontier edges collide on a newly exposed vertex
                    out.cycle_at_depth = i;
                }
            }
        }
        out.protruding.push_back(std::move(frontier_edges));
        if (i == depth) break;
        std::sort(next_layer.begin(), next_layer.end());
        out.layers.push_back(std::move(next_layer));
    }
    return out;
}

NeighbourhoodLayers explore_neighbourhood(const Hypergraph& h, Vertex v, int depth) {
    return explore_neighbourhood(h, Incidence::build(h), v, depth);
}

void write_text(const Hypergraph& h, std::ostream& os) {
    os << h.n() << ' ' << h.k() << ' ' << h.edge_count() << ' '
       << (h.multi_edges_allowed() ? 1 : 0) << '\n';
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
        auto sp = h.edge(e);
        for (std::size_t i = 0; i < sp.size(); ++i)
            os << sp[i] << (i + 1 < sp.size() ? ' ' : '\n');
    }
}

Hypergraph read_text(std::istream& is) {
    std::int64_t n, m;
    int k, multi;
    if (!(is >> n >> k >> m >> multi))
        throw std::runtime_error("hypergraph text: bad header");
    Hypergraph h(n, k, multi != 0);
    std::vector<Vertex> e(k);
    for (std::int64_t i = 0; i < m; ++i) {
        for (int j = 0; j < k; ++j)
            if (!(is >> e[j])) throw std::runtime_error("hypergraph text: truncated edge list");
        h.add_edge(e);
    }
    return h;
}

std::string to_text(const Hypergraph& h) {
    std::ostringstream os;
    write_text(h, os);
    return os.str();
}

Hypergraph from_text(const std::string& text) {
    std::istringstream is(text);
    return read_text(is);
}

}  // namespace hcol
