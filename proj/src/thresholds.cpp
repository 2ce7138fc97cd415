#include "hcol/thresholds.hpp"

#include <cmath>
#include <stdexcept>

namespace hcol {

namespace {

void check_qk(int q, int k) {
    if (q < 3 || k < 3) throw std::invalid_argument("thresholds: need q >= 3 and k >= 3");
}

// residual of the critical-point equation e^lambda - 1 - x lambda
double fred(double lambda, double x) { return std::expm1(lambda) - x * lambda; }

}  // namespace

double alpha(const ModelParams& params) {
    params.validate();
    return params.c * params.k /
           (std::pow(static_cast<double>(params.q), params.k - 1) - 1.0);
}

double h_func(double lambda, int q, int k) {
    check_qk(q, k);
    if (!(lambda > 0)) throw std::invalid_argument("h_func: lambda must be > 0");
    const double x = static_cast<double>(q - 1) * (k - 1);
    return lambda / std::pow(-std::expm1(-lambda), x);
}

double lambda_r(int q, int k) {
    check_qk(q, k);
    const double x = static_cast<double>(q - 1) * (k - 1);
    // e^l - 1 - x l is negative on (0, lambda_r) and positive beyond
    double lo = 1.0, hi = x * x;
    if (fred(lo, x) > 0) { lo = 1e-12; hi = 1.0; }
    while (fred(hi, x) < 0) hi *= 2;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (fred(mid, x) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double lambert_w_m1(double s) {
    if (!(s > -std::exp(-1.0) && s < 0))
        throw std::domain_error("lambert_w_m1: argument must lie in (-1/e, 0)");
    // asymptotic seed, then Halley steps on w e^w - s = 0
    const double L1 = std::log(-s);
    double w = L1 - std::log(-L1);
    for (int i = 0; i < 100; ++i) {
        const double ew = std::exp(w);
        const double f = w * ew - s;
        const double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
        const double dw = f / denom;
        w -= dw;
        if (std::abs(dw) < 1e-16 * (1.0 + std::abs(w))) break;
    }
    return w;
}

double lambda_r_lambert(int q, int k) {
    check_qk(q, k);
    const double x = static_cast<double>(q - 1) * (k - 1);
    return -lambert_w_m1(-std::exp(-1.0 / x) / x) - 1.0 / x;
}

double lambda_r_asymptotic(int q, int k) {
    check_qk(q, k);
    const double x = static_cast<double>(q - 1) * (k - 1);
    return std::log(x) + std::log(std::log(x));
}

double c_r(int q, int k) {
    check_qk(q, k);
    const double qk = std::pow(static_cast<double>(q), k - 1);
    return (qk - 1.0) / k * h_func(lambda_r(q, k), q, k);
}

double c_r_asymptotic(int q, int k) {
    check_qk(q, k);
    const double x = static_cast<double>(q - 1) * (k - 1);
    return std::pow(static_cast<double>(q), k - 1) / k *
           (std::log(x) + std::log(std::log(x)) + 1.0);
}

double c_cond(int q, int k) {
    check_qk(q, k);
    return (std::pow(static_cast<double>(q), k - 1) - 0.5) * std::log(static_cast<double>(q)) -
           std::log(2.0);
}

ThresholdReport threshold_report(int q, int k) {
    ThresholdReport r;
    r.q = q;
    r.k = k;
    r.lambda_r = lambda_r(q, k);
    r.alpha_r = h_func(r.lambda_r, q, k);
    r.c_r_exact = c_r(q, k);
    r.c_r_asymptotic = c_r_asymptotic(q, k);
    r.c_cond = c_cond(q, k);
    r.first_regime_bound =
        (std::pow(static_cast<double>(q), k - 1) - 1.0) * std::log(static_cast<double>(q));
    return r;
}

FixedPoint fixed_point(const ModelParams& params) {
    params.validate();
    FixedPoint fp;
    fp.alpha = alpha(params);
    fp.at_threshold = std::abs(params.c - c_r(params.q, params.k)) < 1e-9;

    const double exponent = static_cast<double>(params.q - 1);
    double rho = 1.0;
    int iter = 0;
    const int max_iter = 100000;
    for (; iter < max_iter; ++iter) {
        const double lam = fp.alpha * std::pow(rho, params.k - 1);
        const double next = std::pow(-std::expm1(-lam), exponent);
        if (std::abs(next - rho) < 1e-14) { rho = next; ++iter; break; }
        rho = next;
    }
    fp.iterations = iter;
    fp.converged = iter < max_iter;
    if (rho < 1e-8) {
        fp.rho = 0.0;
        fp.lambda = 0.0;
        fp.upsilon = 0.0;
    } else {
        fp.rho = rho;
        fp.lambda = fp.alpha * std::pow(rho, params.k - 1);
        fp.upsilon = std::pow(fp.lambda / fp.alpha, 1.0 / (params.k - 1));
    }
    return fp;
}

double upsilon(const ModelParams& params) {
    const FixedPoint fp = fixed_point(params);
    if (fp.lambda <= 0) return 0.0;
    const double qk = std::pow(static_cast<double>(params.q), params.k - 1);
    return std::pow((qk - 1.0) * fp.lambda / (params.c * params.k), 1.0 / (params.k - 1));
}

}  // namespace hcol
