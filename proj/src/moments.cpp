#include "hcol/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hcol/cycles.hpp"
#include "hcol/rng.hpp"

namespace hcol {

double OverlapReal::row_sum(int i) const {
    double s = 0;
    for (int j = 0; j < q; ++j) s += at(i, j);
    return s;
}

double OverlapReal::col_sum(int j) const {
    double s = 0;
    for (int i = 0; i < q; ++i) s += at(i, j);
    return s;
}

OverlapReal OverlapReal::from_counts(const OverlapMatrix& om) {
    OverlapReal r(om.q, 0.0);
    for (int i = 0; i < om.q; ++i)
        for (int j = 0; j < om.q; ++j) r.at(i, j) = om.rho(i, j);
    return r;
}

double kappa(int q, int k) {
    const double lq = std::log(static_cast<double>(q));
    return std::pow(static_cast<double>(q), 1 - k) * std::pow(lq, 20);
}

double psi_const(const ModelParams& params) {
    const double d = std::pow(static_cast<double>(params.q), params.k - 1) - 1.0;
    return 1.0 - params.c * params.k * (params.k - 1) / (d * d);
}

double gamma_const(const ModelParams& params) {
    const double d = std::pow(static_cast<double>(params.q), params.k - 1) - 1.0;
    // printed elsewhere with 2q^k, but only 2q^{k-1} closes the cancellation
    // Gamma - ck(k-1)(q-1)/(q^{k-1}-1) = -ck(k-1)(q-1)^2/(2(q^{k-1}-1)^2)
    const double num = (params.q - 1.0) *
                       (2.0 * std::pow(static_cast<double>(params.q), params.k - 1) - params.q - 1.0);
    return 0.5 * params.c * params.k * (params.k - 1) * num / (d * d);
}

double entropy(const std::vector<double>& rho) {
    double h = 0;
    for (double p : rho) {
        if (p < 0) throw std::invalid_argument("entropy: negative entry");
        if (p > 0) h -= p * std::log(p);
    }
    return h;
}

double entropy(const OverlapReal& rho) { return entropy(rho.m); }

namespace {

double pow_sum(const std::vector<double>& v, int k) {
    double s = 0;
    for (double p : v) s += std::pow(p, k);
    return s;
}

}  // namespace

double energy(const OverlapReal& rho, const ModelParams& params) {
    const double arg = 1.0 - 2.0 * std::pow(static_cast<double>(params.q), 1 - params.k) +
                       pow_sum(rho.m, params.k);
    if (!(arg > 0)) throw std::domain_error("energy: nonpositive log argument");
    return params.c * std::log(arg);
}

double f_value(const OverlapReal& rho, const ModelParams& params) {
    return entropy(rho) + energy(rho, params);
}

double f_uniform(const ModelParams& params) {
    return 2.0 * std::log(static_cast<double>(params.q)) +
           2.0 * params.c * std::log(1.0 - std::pow(static_cast<double>(params.q), 1 - params.k));
}

double quadratic_coefficient(const ModelParams& params) {
    return 0.5 * params.q * params.q * psi_const(params);
}

QuadraticCheck quadratic_expansion_check(const ModelParams& params,
                                         const OverlapReal& direction, double t) {
    const int q = params.q;
    if (direction.q != q) throw std::invalid_argument("quadratic check: direction shape");
    for (int i = 0; i < q; ++i)
        if (std::abs(direction.row_sum(i)) > 1e-12 || std::abs(direction.col_sum(i)) > 1e-12)
            throw std::invalid_argument("quadratic check: direction must have zero row/col sums");

    OverlapReal rho = OverlapReal::uniform(q);
    double norm_sq = 0;
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            rho.at(i, j) += t * direction.at(i, j);
            if (!(rho.at(i, j) > 0))
                throw std::invalid_argument("quadratic check: step leaves the simplex");
            norm_sq += direction.at(i, j) * direction.at(i, j);
        }

    QuadraticCheck out;
    out.exact = f_value(rho, params) - f_uniform(params);
    out.predicted = -quadratic_coefficient(params) * t * t * norm_sq;
    return out;
}

double first_moment_log(const ModelParams& params, std::int64_t n, bool with_correction) {
    ModelParams p = params;
    p.n = n;
    const double m = static_cast<double>(p.edge_count());
    double v = n * std::log(static_cast<double>(params.q)) +
               m * std::log(1.0 - std::pow(static_cast<double>(params.q), 1 - params.k));
    if (with_correction) {
        const double d = std::pow(static_cast<double>(params.q), params.k - 1) - 1.0;
        v += 0.5 * params.c * params.k * (params.k - 1) * (params.q - 1.0) / d;
    }
    return v;
}

namespace {

struct NormTriple {
    double rows, cols, full;
};

NormTriple overlap_norms(const OverlapReal& rho, int power) {
    NormTriple t{0, 0, 0};
    for (int i = 0; i < rho.q; ++i) t.rows += std::pow(rho.row_sum(i), power);
    for (int j = 0; j < rho.q; ++j) t.cols += std::pow(rho.col_sum(j), power);
    for (double p : rho.m) t.full += std::pow(p, power);
    return t;
}

}  // namespace

double pair_moment_exponent(const OverlapReal& rho, const ModelParams& params) {
    const auto nk = overlap_norms(rho, params.k);
    const double arg = 1.0 - nk.rows - nk.cols + nk.full;
    if (!(arg > 0)) throw std::domain_error("pair_moment: nonpositive log argument");
    return entropy(rho) + params.c * std::log(arg);
}

double pair_moment_log(const OverlapReal& rho, const ModelParams& params, std::int64_t n) {
    const auto nk = overlap_norms(rho, params.k);
    const auto nk1 = overlap_norms(rho, params.k - 1);
    const double denom = 1.0 - nk.rows - nk.cols + nk.full;
    if (!(denom > 0)) throw std::domain_error("pair_moment: nonpositive log argument");
    const double numer = 1.0 - nk1.rows - nk1.cols + nk1.full;
    const double correction =
        0.5 * params.c * params.k * (params.k - 1) * (1.0 - numer / denom);
    return n * (entropy(rho) + params.c * std::log(denom)) + correction;
}

OverlapClass classify_overlap(const OverlapReal& rho, const ModelParams& params) {
    const int q = params.q;
    const double kap = kappa(q, params.k);
    OverlapClass oc;
    oc.kappa_degenerate = kap >= 1.0;
    const double lo = kap / q;
    const double hi = (1.0 - kap) / q;
    oc.separable = true;
    int s = 0;
    bool interior = true;
    for (double p : rho.m) {
        if (p > lo && p < hi) oc.separable = false;  // open interval
        if (p > hi) ++s;
        if (!(p > 1.0 / (static_cast<double>(q) * q * q))) interior = false;
    }
    oc.stability = s;
    oc.stability_valid = s <= q;
    oc.in_interior = interior;
    return oc;
}

double second_moment_log_ratio(const ModelParams& params) {
    const double psi = psi_const(params);
    if (!(psi > 0)) throw std::domain_error("second_moment_ratio: Psi <= 0");
    const double d = std::pow(static_cast<double>(params.q), params.k - 1) - 1.0;
    const double qm1 = params.q - 1.0;
    const double closed = -0.5 * qm1 * qm1 * std::log(psi) -
                          0.5 * params.c * params.k * (params.k - 1) * qm1 * qm1 / (d * d);
    const double series = sum_lambda_delta_sq_closed(params);
    if (std::abs(closed - series) > 1e-10)
        throw std::logic_error("second_moment_ratio: closed form disagrees with cycle series");
    return closed;
}

namespace {

// Scale rows and columns alternately until all marginals are 1/q.
void sinkhorn(OverlapReal& rho, int iters = 200) {
    const int q = rho.q;
    for (int it = 0; it < iters; ++it) {
        double worst = 0;
        for (int i = 0; i < q; ++i) {
            const double s = rho.row_sum(i);
            for (int j = 0; j < q; ++j) rho.at(i, j) *= 1.0 / (q * s);
        }
        for (int j = 0; j < q; ++j) {
            const double s = rho.col_sum(j);
            for (int i = 0; i < q; ++i) rho.at(i, j) *= 1.0 / (q * s);
            worst = std::max(worst, std::abs(s - 1.0 / q));
        }
        if (worst < 1e-14) break;
    }
}

}  // namespace

LandscapeReport landscape_scan(const ModelParams& params, std::int64_t samples,
                               std::uint64_t seed) {
    params.validate();
    const int q = params.q;
    const double f_bar = f_uniform(params);
    const double first_regime =
        (std::pow(static_cast<double>(q), params.k - 1) - 1.0) * std::log(static_cast<double>(q));
    const bool check_bound = params.c < first_regime;
    const double d = std::pow(static_cast<double>(q), params.k - 1) - 1.0;
    const double q2k2 = std::pow(static_cast<double>(q), 2 * params.k - 2);

    LandscapeReport rep;
    rep.argmax = OverlapReal::uniform(q);
    Rng rng(seed);

    // identity plus a deterministic cyclic shift; convex paths toward
    // q^{-1} * permutation probe the s-stable corners
    std::vector<std::vector<int>> perms;
    {
        std::vector<int> id(q), shift(q);
        for (int i = 0; i < q; ++i) { id[i] = i; shift[i] = (i + 1) % q; }
        perms.push_back(id);
        perms.push_back(shift);
    }

    auto consider = [&](const OverlapReal& rho) {
        double f;
        try {
            f = f_value(rho, params);
        } catch (const std::domain_error&) {
            return;
        }
        const double delta = f - f_bar;
        if (delta > rep.max_delta) {
            rep.max_delta = delta;
            rep.argmax = rho;
        }
        double dist = 0;
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) {
                const double e = rho.at(i, j) - 1.0 / (q * static_cast<double>(q));
                dist += e * e;
            }
        const auto oc = classify_overlap(rho, params);
        if (oc.separable && dist > 1e-6)
            rep.max_delta_separable = std::max(rep.max_delta_separable, delta);
        if (check_bound) {
            double norm_k = 0;
            for (double p : rho.m) norm_k += std::pow(p, params.k);
            const double bound =
                f_bar - std::log(1.0 + (q2k2 * norm_k - 1.0) / (d * d)) * (first_regime - params.c);
            ++rep.cathcalc_checked;
            if (f > bound + 1e-9) ++rep.cathcalc_violations;
        }
        ++rep.samples;
    };

    const std::int64_t structured = std::min<std::int64_t>(samples / 4, 4000);
    for (std::int64_t s = 0; s < structured; ++s) {
        const auto& perm = perms[s % perms.size()];
        const double t = rng.real();
        OverlapReal rho = OverlapReal::uniform(q);
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j)
                rho.at(i, j) = (1.0 - t) * rho.at(i, j) + t * (perm[i] == j ? 1.0 / q : 0.0);
        consider(rho);
    }
    while (rep.samples < samples) {
        OverlapReal rho(q, 0.0);
        for (double& p : rho.m) p = -std::log(1.0 - rng.real());  // Exp(1) noise
        sinkhorn(rho);
        consider(rho);
    }
    return rep;
}

}  // namespace hcol
