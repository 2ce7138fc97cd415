#pragma once

#include <cstdint>
#include <vector>

#include "hcol/colouring.hpp"
#include "hcol/hypergraph.hpp"

namespace hcol {

// Real-valued q x q overlap matrix for landscape work.
struct OverlapReal {
    int q = 0;
    std::vector<double> m;  // row-major q*q

    OverlapReal() = default;
    OverlapReal(int q_, double fill) : q(q_), m(static_cast<std::size_t>(q_) * q_, fill) {}

    double& at(int i, int j) { return m[static_cast<std::size_t>(i) * q + j]; }
    double at(int i, int j) const { return m[static_cast<std::size_t>(i) * q + j]; }
    double row_sum(int i) const;
    double col_sum(int j) const;

    static OverlapReal uniform(int q) { return OverlapReal(q, 1.0 / (q * static_cast<double>(q))); }
    static OverlapReal from_counts(const OverlapMatrix& om);
};

struct OverlapClass {
    bool separable = false;
    int stability = 0;          // entries above q^{-1}(1-kappa)
    bool stability_valid = false;  // s <= q
    bool in_interior = false;   // all entries > q^{-3}
    bool kappa_degenerate = false;  // kappa >= 1, taxonomy collapses
};

struct LandscapeReport {
    std::int64_t samples = 0;
    double max_delta = -1e300;            // max f(rho) - f(rho_bar)
    double max_delta_separable = -1e300;  // over separable samples away from rho_bar
    std::int64_t cathcalc_checked = 0;
    std::int64_t cathcalc_violations = 0;
    OverlapReal argmax;
};

double kappa(int q, int k);  // q^{1-k} (ln q)^20
double psi_const(const ModelParams& params);    // 1 - ck(k-1)/(q^{k-1}-1)^2
double gamma_const(const ModelParams& params);  // (ck(k-1)/2)(q-1)(2q^{k-1}-q-1)/(q^{k-1}-1)^2

// H(rho) = -sum rho ln rho, with 0 ln 0 = 0
double entropy(const OverlapReal& rho);
double entropy(const std::vector<double>& rho);

// E(rho) = c ln(1 - 2 q^{1-k} + ||rho||_k^k)
double energy(const OverlapReal& rho, const ModelParams& params);

double f_value(const OverlapReal& rho, const ModelParams& params);

// f(rho_bar) = 2 ln q + 2c ln(1 - q^{1-k})
double f_uniform(const ModelParams& params);

// q^2/2 [1 - ck(k-1)/(q^{k-1}-1)^2]; the negated Hessian scale of f at rho_bar
double quadratic_coefficient(const ModelParams& params);

// exact f(rho_bar + t dir) - f(rho_bar) vs -coef * t^2 ||dir||^2
struct QuadraticCheck {
    double exact = 0;
    double predicted = 0;
};
QuadraticCheck quadratic_expansion_check(const ModelParams& params,
                                         const OverlapReal& direction, double t);

// n ln q + floor(cn) ln(1 - q^{1-k}), optionally with the balanced-count
// correction (ck(k-1)/2)(q-1)/(q^{k-1}-1)
double first_moment_log(const ModelParams& params, std::int64_t n,
                        bool with_correction = false);

// exponent of the pair moment, free of n:
//   H(rho) + c ln(1 - ||row||_k^k - ||col||_k^k + ||rho||_k^k)
double pair_moment_exponent(const OverlapReal& rho, const ModelParams& params);

// n * exponent plus the displayed lower-order correction
double pair_moment_log(const OverlapReal& rho, const ModelParams& params, std::int64_t n);

OverlapClass classify_overlap(const OverlapReal& rho, const ModelParams& params);

// log of the limiting second-moment ratio; checked against the cycle series
double second_moment_log_ratio(const ModelParams& params);

// Samples overlap matrices with uniform marginals (Sinkhorn-normalized noise
// plus convex paths toward permutation matrices), evaluates f and the
// first-regime upper bound on each.
LandscapeReport landscape_scan(const ModelParams& params, std::int64_t samples,
                               std::uint64_t seed);

}  // namespace hcol
