#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcol/hypergraph.hpp"

namespace hcol {

// Thrown when an exhaustive operation would exceed its configured budget.
struct ResourceGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Colouring {
    int q = 0;
    std::vector<std::uint8_t> assignment;

    std::int64_t n() const { return static_cast<std::int64_t>(assignment.size()); }
    int at(Vertex v) const { return assignment[static_cast<std::size_t>(v)]; }

    bool operator==(const Colouring&) const = default;
};

// Colour class sizes as exact counts over n vertices.
struct ColourDensity {
    std::int64_t n = 0;
    std::vector<std::int64_t> counts;  // length q

    double rho(int i) const { return static_cast<double>(counts[i]) / static_cast<double>(n); }
};

// q x q joint colour-class intersection counts between two colourings.
struct OverlapMatrix {
    int q = 0;
    std::int64_t n = 0;
    std::vector<std::int64_t> counts;  // row-major q*q

    std::int64_t count(int i, int j) const { return counts[static_cast<std::size_t>(i) * q + j]; }
    double rho(int i, int j) const { return static_cast<double>(count(i, j)) / static_cast<double>(n); }
    std::int64_t row_sum(int i) const;
    std::int64_t col_sum(int j) const;
};

// exact binomial coefficient; throws on overflow past 64 bits
std::uint64_t binomial(std::int64_t n, int k);

bool is_proper(const Hypergraph& h, const Colouring& sigma);

// number of monochromatic k-subsets of the complete hypergraph:
// F(sigma) = sum_i C(|class i|, k)
std::uint64_t mono_count(const Colouring& sigma, int k);

ColourDensity colour_density(const Colouring& sigma);
OverlapMatrix overlap(const Colouring& sigma, const Colouring& tau);

// |rho_i - 1/q| <= 1/(omega sqrt(n)) for every colour
bool is_balanced(const Colouring& sigma, double omega);

// Exact count of proper q-colourings by backtracking. Guards against state
// spaces larger than max_states (default ~q^16 scale).
std::uint64_t count_colourings_exact(const Hypergraph& h, int q,
                                     double max_states = 5e9);

// Uniform over maps sigma with F(sigma) <= C(n,k) - m, by rejection.
Colouring sample_planted_map(const ModelParams& params, std::uint64_t seed,
                             int max_attempts = 1000000);

// Exact uniform proper colouring by enumeration-indexed selection.
Colouring sample_uniform_colouring(const Hypergraph& h, int q, std::uint64_t seed,
                                   double max_states = 5e9);

// Exact E[Z_q] for the with-replacement model H'(n,k,m): the composition sum
// over colour class sizes of multinomial(n;a) * (1 - F(a)/C(n,k))^m.
double expected_colourings_multi(std::int64_t n, int k, int q, std::int64_t m);

// --- serialization -------------------------------------------------------

std::string to_text(const Colouring& sigma);
Colouring colouring_from_text(const std::string& line, int q);

}  // namespace hcol
