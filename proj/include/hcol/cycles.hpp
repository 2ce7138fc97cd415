#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hcol/hypergraph.hpp"

namespace hcol {

// Loose-cycle counts per length ell in [2, L].
struct CycleCensus {
    std::map<int, std::int64_t> counts;

    std::int64_t at(int ell) const {
        auto it = counts.find(ell);
        return it == counts.end() ? 0 : it->second;
    }
};

// lambda_ell = (c k (k-1))^ell / (2 ell)
// delta_ell  = (-1)^ell (q-1) / (q^{k-1}-1)^ell
// mu_ell     = lambda_ell (1 + delta_ell)
struct PoissonParams {
    int ell = 0;
    double lambda = 0;
    double delta = 0;
    double mu = 0;
};

struct GoodnessOfFit {
    double chi2 = 0;
    int dof = 0;
    double p_value = 0;
};

// Exact loose-cycle census for lengths 2..L. A loose cycle of length ell has
// ell edges and ell distinct link vertices; consecutive edges share exactly
// the link vertex, non-consecutive edges are disjoint. For ell = 2 the two
// edges share exactly the two link vertices.
CycleCensus count_loose_cycles(const Hypergraph& h, int L,
                               std::int64_t max_work = 200000000);

std::vector<PoissonParams> poisson_params(const ModelParams& params, int L);

// series sum_{ell=2}^{L} lambda_ell delta_ell^2
double sum_lambda_delta_sq_series(const ModelParams& params, int L);

// closed form of sum_{ell=2}^{inf} lambda_ell delta_ell^2:
//   -((q-1)^2/2) ln(1 - ck(k-1)/(q^{k-1}-1)^2) - ck(k-1)(q-1)^2/(2(q^{k-1}-1)^2)
// Throws std::domain_error when ck(k-1) >= (q^{k-1}-1)^2 (series diverges).
double sum_lambda_delta_sq_closed(const ModelParams& params);

// Chi-square goodness of fit of integer samples against Poisson(lambda),
// with tail bucketing so every bucket has expected count >= 5.
GoodnessOfFit poisson_fit(const std::vector<std::int64_t>& samples, double lambda);

}  // namespace hcol
