#pragma once

#include "hcol/hypergraph.hpp"

namespace hcol {

// Solution record of the core fixed-point equations:
//   rho = (1 - e^{-lambda})^{q-1},  lambda = alpha rho^{k-1}
struct FixedPoint {
    double alpha = 0;
    double lambda = 0;
    double rho = 0;
    double upsilon = 0;
    bool converged = false;
    bool at_threshold = false;
    int iterations = 0;
};

struct ThresholdReport {
    int q = 0;
    int k = 0;
    double lambda_r = 0;
    double alpha_r = 0;
    double c_r_exact = 0;
    double c_r_asymptotic = 0;
    double c_cond = 0;
    double first_regime_bound = 0;  // (q^{k-1}-1) ln q
};

// expected essential-edge count per (vertex, colour): alpha = ck/(q^{k-1}-1)
double alpha(const ModelParams& params);

// h(lambda) = lambda / (1 - e^{-lambda})^{(q-1)(k-1)}
double h_func(double lambda, int q, int k);

// positive root of e^lambda - 1 = (q-1)(k-1) lambda, by bracketed bisection
double lambda_r(int q, int k);

// non-principal real branch of Lambert W on (-1/e, 0), by Halley iteration
double lambert_w_m1(double s);

// lambda_r via the Lambert-W closed form: -W_{-1}(-e^{-1/x}/x) - 1/x
double lambda_r_lambert(int q, int k);

// ln x + ln ln x at x = (q-1)(k-1)
double lambda_r_asymptotic(int q, int k);

// exact rigidity threshold: ((q^{k-1}-1)/k) h(lambda_r)
double c_r(int q, int k);

// (q^{k-1}/k)(ln x + ln ln x + 1)
double c_r_asymptotic(int q, int k);

// condensation threshold without the o_q(1) term: (q^{k-1}-1/2) ln q - ln 2
double c_cond(int q, int k);

ThresholdReport threshold_report(int q, int k);

// Iterates rho -> (1 - e^{-alpha rho^{k-1}})^{q-1} from rho = 1; the limit is
// the largest fixed point. Below c_r the iteration collapses to 0.
FixedPoint fixed_point(const ModelParams& params);

// core-size constant Upsilon = [(q^{k-1}-1) lambda / (ck)]^{1/(k-1)};
// 0 below threshold
double upsilon(const ModelParams& params);

}  // namespace hcol
