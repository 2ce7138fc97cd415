#include "hcol/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "hcol/colouring.hpp"

namespace hcol {

namespace {

int shared_count(std::span<const Vertex> a, std::span<const Vertex> b,
                 Vertex* first_shared = nullptr) {
    int cnt = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (a[i] > b[j]) ++j;
        else {
            if (cnt == 0 && first_shared) *first_shared = a[i];
            ++cnt; ++i; ++j;
        }
    }
    return cnt;
}

struct CycleSearch {
    const Hypergraph& h;
    const Incidence& inc;
    int L;
    std::int64_t work = 0;
    std::int64_t max_work;
    std::vector<char> used;       // vertex in some chain edge
    std::vector<char> in_chain;   // edge in chain
    std::vector<Vertex> links;    // links[0] unused; links[d] joins edge d-1 and d
    EdgeId e0 = 0;
    std::vector<std::int64_t> raw;  // directed counts per length

    CycleSearch(const Hypergraph& hg, const Incidence& ic, int L_, std::int64_t mw)
        : h(hg), inc(ic), L(L_), max_work(mw),
          used(hg.n(), 0), in_chain(hg.edge_count(), 0), raw(L_ + 1, 0) {}

    void tick() {
        if (++work > max_work)
            throw ResourceGuardError("count_loose_cycles: work budget exceeded");
    }

    void dfs(EdgeId last, Vertex last_link, int depth) {
        const auto last_e = h.edge(last);
        // close the cycle with one more edge
        if (depth >= 2 && depth + 1 <= L) {
            for (Vertex w : last_e) {
                if (w == last_link) continue;
                for (EdgeId f : inc.at(w)) {
                    tick();
                    if (f <= e0 || in_chain[f]) continue;
                    Vertex other = -1;
                    int cnt = 0;
                    for (Vertex u : h.edge(f)) {
                        if (used[u]) {
                            ++cnt;
                            if (u != w) other = u;
                        }
                    }
                    if (cnt != 2 || other < 0 || other == links[1]) continue;
                    bool in_first = false;
                    for (Vertex u : h.edge(e0))
                        if (u == other) { in_first = true; break; }
                    if (in_first) ++raw[depth + 1];
                }
            }
        }
        // extend the chain
        if (depth + 1 > L - 1) return;
        for (Vertex w : last_e) {
            if (w == last_link) continue;
            for (EdgeId f : inc.at(w)) {
                tick();
                if (f <= e0 || in_chain[f]) continue;
                int cnt = 0;
                for (Vertex u : h.edge(f))
                    if (used[u]) ++cnt;
                if (cnt != 1) continue;  // must touch the chain exactly at w
                in_chain[f] = 1;
                for (Vertex u : h.edge(f)) used[u] = 1;
                links.push_back(w);
                dfs(f, w, depth + 1);
                links.pop_back();
                for (Vertex u : h.edge(f))
                    if (u != w) used[u] = 0;
                in_chain[f] = 0;
            }
        }
    }
};

}  // namespace

CycleCensus count_loose_cycles(const Hypergraph& h, int L, std::int64_t max_work) {
    if (L < 2) throw std::invalid_argument("count_loose_cycles: L must be >= 2");
    CycleCensus census;
    for (int ell = 2; ell <= L; ++ell) census.counts[ell] = 0;

    const Incidence inc = Incidence::build(h);
    const std::int64_t m = h.edge_count();

    // ell = 2: pairs of edges sharing exactly two vertices
    std::int64_t work = 0;
    for (EdgeId e = 0; e < m; ++e) {
        for (Vertex v : h.edge(e)) {
            for (EdgeId f : inc.at(v)) {
                if (f <= e) continue;
                if (++work > max_work)
                    throw ResourceGuardError("count_loose_cycles: work budget exceeded");
                Vertex first = -1;
                if (shared_count(h.edge(e), h.edge(f), &first) == 2 && first == v)
                    ++census.counts[2];
            }
        }
    }

    if (L >= 3) {
        CycleSearch cs(h, inc, L, max_work - work);
        for (EdgeId e = 0; e < m; ++e) {
            cs.e0 = e;
            cs.in_chain[e] = 1;
            for (Vertex u : h.edge(e)) cs.used[u] = 1;
            cs.links.assign(1, -1);
            cs.dfs(e, -1, 1);
            for (Vertex u : h.edge(e)) cs.used[u] = 0;
            cs.in_chain[e] = 0;
        }
        // every undirected cycle is reached twice from its least edge
        for (int ell = 3; ell <= L; ++ell) census.counts[ell] = cs.raw[ell] / 2;
    }
    return census;
}

std::vector<PoissonParams> poisson_params(const ModelParams& params, int L) {
    params.validate();
    if (L < 2) throw std::invalid_argument("poisson_params: L must be >= 2");
    const double base = params.c * params.k * (params.k - 1);
    const double denom = std::pow(static_cast<double>(params.q), params.k - 1) - 1.0;
    std::vector<PoissonParams> out;
    for (int ell = 2; ell <= L; ++ell) {
        PoissonParams p;
        p.ell = ell;
        p.lambda = std::pow(base, ell) / (2.0 * ell);
        p.delta = (ell % 2 == 0 ? 1.0 : -1.0) * (params.q - 1) / std::pow(denom, ell);
        p.mu = p.lambda * (1.0 + p.delta);
        out.push_back(p);
    }
    return out;
}

double sum_lambda_delta_sq_series(const ModelParams& params, int L) {
    const auto ps = poisson_params(params, L);
    double sum = 0.0;
    for (const auto& p : ps) sum += p.lambda * p.delta * p.delta;
    return sum;
}

double sum_lambda_delta_sq_closed(const ModelParams& params) {
    params.validate();
    const double ck2 = params.c * params.k * (params.k - 1);
    const double denom = std::pow(static_cast<double>(params.q), params.k - 1) - 1.0;
    const double r = ck2 / (denom * denom);
    if (r >= 1.0)
        throw std::domain_error("sum_lambda_delta_sq: series diverges, ck(k-1) >= (q^{k-1}-1)^2");
    const double qm1 = params.q - 1.0;
    return -0.5 * qm1 * qm1 * std::log(1.0 - r) - 0.5 * ck2 * qm1 * qm1 / (denom * denom);
}

GoodnessOfFit poisson_fit(const std::vector<std::int64_t>& samples, double lambda) {
    if (samples.size() < 100)
        throw std::invalid_argument("poisson_fit: need at least 100 samples");
    if (!(lambda > 0)) throw std::invalid_argument("poisson_fit: lambda must be > 0");

    const double n = static_cast<double>(samples.size());
    // span the distribution's bulk even when every observation is tiny
    const std::int64_t maxv =
        std::max(*std::max_element(samples.begin(), samples.end()),
                 static_cast<std::int64_t>(std::ceil(lambda + 10.0 * std::sqrt(lambda) + 10.0)));

    std::vector<double> pmf(maxv + 1);
    pmf[0] = std::exp(-lambda);
    for (std::int64_t j = 1; j <= maxv; ++j) pmf[j] = pmf[j - 1] * lambda / j;

    std::vector<std::int64_t> obs(maxv + 1, 0);
    for (auto s : samples) {
        if (s < 0) throw std::invalid_argument("poisson_fit: negative sample");
        ++obs[s];
    }

    // greedy bucketing left to right; final bucket absorbs the tail
    std::vector<double> bucket_exp;
    std::vector<std::int64_t> bucket_obs;
    double e_acc = 0;
    std::int64_t o_acc = 0;
    double cum = 0;
    for (std::int64_t j = 0; j <= maxv; ++j) {
        e_acc += n * pmf[j];
        o_acc += obs[j];
        cum += pmf[j];
        if (e_acc >= 5.0 && j < maxv) {
            bucket_exp.push_back(e_acc);
            bucket_obs.push_back(o_acc);
            e_acc = 0;
            o_acc = 0;
        }
    }
    e_acc += n * std::max(0.0, 1.0 - cum);  // open tail beyond maxv
    bucket_exp.push_back(e_acc);
    bucket_obs.push_back(o_acc);
    if (bucket_exp.size() >= 2 && bucket_exp.back() < 5.0) {
        bucket_exp[bucket_exp.size() - 2] += bucket_exp.back();
        bucket_obs[bucket_obs.size() - 2] += bucket_obs.back();
        bucket_exp.pop_back();
        bucket_obs.pop_back();
    }
    if (bucket_exp.size() < 2)
        throw std::runtime_error("poisson_fit: degenerate sample set, fewer than two buckets");

    GoodnessOfFit fit;
    for (std::size_t b = 0; b < bucket_exp.size(); ++b) {
        const double d = static_cast<double>(bucket_obs[b]) - bucket_exp[b];
        fit.chi2 += d * d / bucket_exp[b];
    }
    fit.dof = static_cast<int>(bucket_exp.size()) - 1;
    fit.p_value = boost::math::gamma_q(fit.dof / 2.0, fit.chi2 / 2.0);
    return fit;
}

}  // namespace hcol
