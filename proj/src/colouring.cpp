#include "hcol/colouring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hcol/rng.hpp"

namespace hcol {

std::int64_t OverlapMatrix::row_sum(int i) const {
    std::int64_t s = 0;
    for (int j = 0; j < q; ++j) s += count(i, j);
    return s;
}

std::int64_t OverlapMatrix::col_sum(int j) const {
    std::int64_t s = 0;
    for (int i = 0; i < q; ++i) s += count(i, j);
    return s;
}

std::uint64_t binomial(std::int64_t n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = static_cast<int>(n - k);
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned>(i);
        if (r > static_cast<unsigned __int128>(UINT64_MAX))
            throw std::overflow_error("binomial: result exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

bool is_proper(const Hypergraph& h, const Colouring& sigma) {
    if (sigma.n() != h.n())
        throw std::invalid_argument("is_proper: colouring length mismatch");
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
        auto sp = h.edge(e);
        const int c0 = sigma.at(sp[0]);
        bool mono = true;
        for (std::size_t i = 1; i < sp.size(); ++i)
            if (sigma.at(sp[i]) != c0) { mono = false; break; }
        if (mono) return false;
    }
    return true;
}

std::uint64_t mono_count(const Colouring& sigma, int k) {
    std::vector<std::int64_t> sizes(sigma.q, 0);
    for (auto c : sigma.assignment) ++sizes[c];
    std::uint64_t total = 0;
    for (auto s : sizes) total += binomial(s, k);
    return total;
}

ColourDensity colour_density(const Colouring& sigma) {
    ColourDensity d;
    d.n = sigma.n();
    d.counts.assign(sigma.q, 0);
    for (auto c : sigma.assignment) ++d.counts[c];
    return d;
}

OverlapMatrix overlap(const Colouring& sigma, const Colouring& tau) {
    if (sigma.n() != tau.n() || sigma.q != tau.q)
        throw std::invalid_argument("overlap: colouring shape mismatch");
    OverlapMatrix m;
    m.q = sigma.q;
    m.n = sigma.n();
    m.counts.assign(static_cast<std::size_t>(m.q) * m.q, 0);
    for (std::int64_t v = 0; v < m.n; ++v)
        ++m.counts[static_cast<std::size_t>(sigma.assignment[v]) * m.q + tau.assignment[v]];
    return m;
}

bool is_balanced(const Colouring& sigma, double omega) {
    if (!(omega > 0)) throw std::invalid_argument("is_balanced: omega must be > 0");
    const auto d = colour_density(sigma);
    const double bound = 1.0 / (omega * std::sqrt(static_cast<double>(d.n)));
    for (int i = 0; i < sigma.q; ++i)
        if (std::abs(d.rho(i) - 1.0 / sigma.q) > bound) return false;
    return true;
}

namespace {

// Backtracking state shared by the exact counter and the indexed sampler.
struct Backtracker {
    const Hypergraph& h;
    int q;
    std::vector<Vertex> order;             // vertices, degree descending
    std::vector<std::vector<EdgeId>> inc;  // incident edges per vertex
    std::vector<int> remaining;            // unassigned vertices per edge
    std::vector<int> first_colour;         // -1 until an endpoint is assigned
    std::vector<bool> bichromatic;
    std::vector<std::uint8_t> colour;      // current partial assignment

    explicit Backtracker(const Hypergraph& hg, int q_) : h(hg), q(q_) {
        const std::int64_t n = h.n();
        const std::int64_t m = h.edge_count();
        inc.assign(n, {});
        for (EdgeId e = 0; e < m; ++e)
            for (Vertex v : h.edge(e)) inc[v].push_back(e);
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
            return inc[a].size() > inc[b].size();
        });
        remaining.assign(m, h.k());
        first_colour.assign(m, -1);
        bichromatic.assign(m, false);
        colour.assign(n, 0);
    }

    // Enumerates proper colourings in a fixed order; visit() returns false to
    // stop early (used by the indexed sampler).
    template <typename Visit>
    bool enumerate(std::size_t pos, Visit&& visit) {
        if (pos == order.size()) return visit();
        const Vertex v = order[pos];
        for (int c = 0; c < q; ++c) {
            bool ok = true;
            std::size_t applied = 0;
            for (; applied < inc[v].size(); ++applied) {
                const EdgeId e = inc[v][applied];
                --remaining[e];
                if (first_colour[e] < 0)
                    first_colour[e] = c;
                else if (!bichromatic[e] && first_colour[e] != c)
                    bichromatic[e] = true;
                if (remaining[e] == 0 && !bichromatic[e]) { ok = false; ++applied; break; }
            }
            if (ok) {
                colour[v] = static_cast<std::uint8_t>(c);
                if (!enumerate(pos + 1, visit)) return false;
            }
            // undo: rebuild the touched edges from the assignments above pos
            for (std::size_t i = 0; i < applied; ++i) recompute_flags(inc[v][i], pos);
        }
        return true;
    }

    void recompute_flags(EdgeId e, std::size_t pos) {
        // assigned endpoints of e are exactly those earlier in the order
        first_colour[e] = -1;
        bichromatic[e] = false;
        int assigned = 0;
        for (Vertex u : h.edge(e)) {
            if (rank(u) < pos) {
                ++assigned;
                if (first_colour[e] < 0)
                    first_colour[e] = colour[u];
                else if (colour[u] != first_colour[e])
                    bichromatic[e] = true;
            }
        }
        remaining[e] = h.k() - assigned;
    }

    std::size_t rank(Vertex v) {
        if (rank_.empty()) {
            rank_.assign(order.size(), 0);
            for (std::size_t i = 0; i < order.size(); ++i) rank_[order[i]] = i;
        }
        return rank_[v];
    }

private:
    std::vector<std::size_t> rank_;
};

void guard_state_space(std::int64_t n, int q, double max_states) {
    if (std::pow(static_cast<double>(q), static_cast<double>(n)) > max_states)
        throw ResourceGuardError("exact colouring enumeration: q^n exceeds budget");
}

}  // namespace

std::uint64_t count_colourings_exact(const Hypergraph& h, int q, double max_states) {
    guard_state_space(h.n(), q, max_states);
    Backtracker bt(h, q);
    std::uint64_t count = 0;
    bt.enumerate(0, [&] { ++count; return true; });
    return count;
}

Colouring sample_planted_map(const ModelParams& params, std::uint64_t seed,
                             int max_attempts) {
    if (params.n <= 0) throw std::invalid_argument("sample_planted_map: n required");
    if (params.q < 1) throw std::invalid_argument("sample_planted_map: q must be >= 1");
    const std::uint64_t total = binomial(params.n, params.k);
    const std::int64_t m = params.edge_count();
    if (m < 0 || static_cast<std::uint64_t>(m) > total)
        throw std::invalid_argument("sample_planted_map: m exceeds C(n,k)");

    Rng rng(seed);
    Colouring sigma;
    sigma.q = params.q;
    sigma.assignment.resize(params.n);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        for (auto& c : sigma.assignment)
            c = static_cast<std::uint8_t>(rng.below(static_cast<std::uint64_t>(params.q)));
        if (mono_count(sigma, params.k) <= total - static_cast<std::uint64_t>(m))
            return sigma;
    }
    throw std::runtime_error("sample_planted_map: retry cap hit; admissible maps too rare");
}

Colouring sample_uniform_colouring(const Hypergraph& h, int q, std::uint64_t seed,
                                   double max_states) {
    const std::uint64_t z = count_colourings_exact(h, q, max_states);
    if (z == 0) throw std::runtime_error("sample_uniform_colouring: no proper colouring");
    Rng rng(seed);
    std::uint64_t target = rng.below(z);
    Backtracker bt(h, q);
    Colouring out;
    out.q = q;
    bt.enumerate(0, [&] {
        if (target == 0) {
            out.assignment = bt.colour;
            return false;
        }
        --target;
        return true;
    });
    return out;
}

double expected_colourings_multi(std::int64_t n, int k, int q, std::int64_t m) {
    const double total = static_cast<double>(binomial(n, k));
    double sum = 0.0;
    std::vector<std::int64_t> sizes(q, 0);
    // recursive walk over colour-class compositions of n into q parts
    std::vector<double> lfact(n + 1, 0.0);
    for (std::int64_t i = 1; i <= n; ++i) lfact[i] = lfact[i - 1] + std::log(static_cast<double>(i));
    auto rec = [&](auto&& self, int colour, std::int64_t left) -> void {
        if (colour == q - 1) {
            sizes[colour] = left;
            double log_multinomial = lfact[n];
            double f = 0.0;
            for (int i = 0; i < q; ++i) {
                log_multinomial -= lfact[sizes[i]];
                f += static_cast<double>(binomial(sizes[i], k));
            }
            const double p = 1.0 - f / total;
            if (p > 0.0)
                sum += std::exp(log_multinomial + static_cast<double>(m) * std::log(p));
            else if (p == 0.0 && m == 0)
                sum += std::exp(log_multinomial);
            return;
        }
        for (std::int64_t s = 0; s <= left; ++s) {
            sizes[colour] = s;
            self(self, colour + 1, left - s);
        }
    };
    rec(rec, 0, n);
    return sum;
}

std::string to_text(const Colouring& sigma) {
    std::ostringstream os;
    for (std::int64_t v = 0; v < sigma.n(); ++v)
        os << static_cast<int>(sigma.assignment[v]) << (v + 1 < sigma.n() ? ' ' : '\n');
    return os.str();
}

Colouring colouring_from_text(const std::string& line, int q) {
    Colouring sigma;
    sigma.q = q;
    std::istringstream is(line);
    int c;
    while (is >> c) {
        if (c < 0 || c >= q) throw std::runtime_error("colouring text: colour out of range");
        sigma.assignment.push_back(static_cast<std::uint8_t>(c));
    }
    return sigma;
}

}  // namespace hcol
