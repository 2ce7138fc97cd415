#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "hcol/colouring.hpp"
#include "hcol/hypergraph.hpp"

using namespace hcol;

namespace {

// density giving exactly m edges on n vertices under floor(c*n)
double density_for(std::int64_t m, std::int64_t n) {
    return (static_cast<double>(m) + 0.5) / static_cast<double>(n);
}

std::vector<Vertex> edge_vec(const Hypergraph& h, EdgeId e) {
    auto sp = h.edge(e);
    return {sp.begin(), sp.end()};
}

}  // namespace

TEST_CASE("gen_simple tiny forced instances") {
    ModelParams p{3, 3, density_for(1, 3), 3};
    Hypergraph h = gen_simple(p, 7);
    REQUIRE(h.edge_count() == 1);
    CHECK(edge_vec(h, 0) == std::vector<Vertex>{0, 1, 2});

    ModelParams p4{3, 3, density_for(4, 4), 4};
    Hypergraph h4 = gen_simple(p4, 99);
    REQUIRE(h4.edge_count() == 4);
    CHECK(h4.is_simple());
    std::set<std::vector<Vertex>> edges;
    for (EdgeId e = 0; e < 4; ++e) edges.insert(edge_vec(h4, e));
    CHECK(edges.size() == 4);  // all four 3-subsets of {0,1,2,3}
}

TEST_CASE("gen_simple rejects m > C(n,k)") {
    ModelParams p{3, 3, density_for(2, 3), 3};
    CHECK_THROWS_AS(gen_simple(p, 1), std::invalid_argument);
}

TEST_CASE("gen_simple uniform over edge pairs, n=5 k=3 m=2") {
    ModelParams p{3, 3, density_for(2, 5), 5};
    const int trials = 100000;
    std::map<std::set<std::vector<Vertex>>, int> freq;
    for (int t = 0; t < trials; ++t) {
        Hypergraph h = gen_simple(p, 1000 + t);
        REQUIRE(h.edge_count() == 2);
        REQUIRE(h.is_simple());
        freq[{edge_vec(h, 0), edge_vec(h, 1)}]++;
    }
    CHECK(freq.size() == 45);  // C(10,2) unordered pairs of distinct edges
    const double expect = trials / 45.0;
    const double se = std::sqrt(trials * (1.0 / 45) * (44.0 / 45));
    for (const auto& [key, count] : freq) CHECK(std::abs(count - expect) <= 3.5 * se);
}

TEST_CASE("gen_multi basics and uniformity") {
    ModelParams p{3, 3, density_for(2, 3), 3};
    Hypergraph h = gen_multi(p, 5);
    REQUIRE(h.edge_count() == 2);
    CHECK(edge_vec(h, 0) == std::vector<Vertex>{0, 1, 2});
    CHECK(edge_vec(h, 1) == std::vector<Vertex>{0, 1, 2});
    CHECK(h.multi_edges_allowed());

    ModelParams p5{3, 3, density_for(1, 5), 5};
    const int trials = 100000;
    std::map<std::string, int> freq;
    for (int t = 0; t < trials; ++t) freq[to_text(gen_multi(p5, t))]++;
    CHECK(freq.size() == 10);
    const double se = std::sqrt(trials * 0.1 * 0.9);
    for (const auto& [key, count] : freq) CHECK(std::abs(count - trials * 0.1) <= 3.5 * se);
}

TEST_CASE("gen_multi birthday collision rate, n=6 k=3 m=3") {
    // P[all 3 edges distinct] = (19/20)(18/20) = 0.855
    ModelParams p{3, 3, density_for(3, 6), 6};
    const int trials = 100000;
    int distinct = 0;
    for (int t = 0; t < trials; ++t)
        if (gen_multi(p, 50000 + t).is_simple()) ++distinct;
    const double se = std::sqrt(trials * 0.855 * 0.145);
    CHECK(std::abs(distinct - trials * 0.855) <= 3 * se);
}

TEST_CASE("gen_planted rejects colourings without admissible edges") {
    ModelParams p{3, 3, density_for(1, 3), 3};
    Colouring sigma{3, {0, 0, 0}};
    CHECK_THROWS_AS(gen_planted(p, sigma, 1), std::invalid_argument);
}

TEST_CASE("gen_planted uniform over admissible subsets") {
    // n=4, sigma=(0,0,0,1): only the three subsets containing vertex 3 admissible
    ModelParams p{3, 3, density_for(1, 4), 4};
    Colouring sigma{3, {0, 0, 0, 1}};
    std::map<std::string, int> freq;
    const int trials = 30000;
    for (int t = 0; t < trials; ++t) {
        Hypergraph h = gen_planted(p, sigma, t);
        REQUIRE(is_proper(h, sigma));
        freq[to_text(h)]++;
    }
    CHECK(freq.size() == 3);
    const double se = std::sqrt(trials * (1.0 / 3) * (2.0 / 3));
    for (const auto& [key, count] : freq) CHECK(std::abs(count - trials / 3.0) <= 3 * se);

    // n=5, densities (3,2): 10 - C(3,3) = 9 admissible subsets
    ModelParams p5{3, 3, density_for(2, 5), 5};
    Colouring sigma5{3, {0, 0, 0, 1, 1}};
    std::map<std::vector<Vertex>, int> edge_freq;
    const int trials5 = 50000;
    for (int t = 0; t < trials5; ++t) {
        Hypergraph h = gen_planted(p5, sigma5, 70000 + t);
        for (EdgeId e = 0; e < h.edge_count(); ++e) edge_freq[edge_vec(h, e)]++;
    }
    CHECK(edge_freq.size() == 9);
    const double draws = 2.0 * trials5;
    double chi2 = 0;
    for (const auto& [key, count] : edge_freq) {
        const double d = count - draws / 9.0;
        chi2 += d * d / (draws / 9.0);
    }
    CHECK(chi2 < 37.3);  // chi-square dof 8, p = 1e-5
}

TEST_CASE("determinism of generators") {
    ModelParams p{3, 3, 2.0, 50};
    CHECK(gen_simple(p, 42) == gen_simple(p, 42));
    CHECK(gen_multi(p, 42) == gen_multi(p, 42));
    Colouring sigma{3, std::vector<std::uint8_t>(50)};
    for (int i = 0; i < 50; ++i) sigma.assignment[i] = static_cast<std::uint8_t>(i % 3);
    CHECK(gen_planted(p, sigma, 42) == gen_planted(p, sigma, 42));
    CHECK(!(gen_multi(p, 42) == gen_multi(p, 43)));
}

TEST_CASE("explore_neighbourhood worked instances") {
    Hypergraph h1(3, 3);
    h1.add_edge(std::vector<Vertex>{0, 1, 2});
    auto nb1 = explore_neighbourhood(h1, 0, 1);
    REQUIRE(nb1.layers.size() == 2);
    CHECK(nb1.layers[0] == std::vector<Vertex>{0});
    CHECK(nb1.layers[1] == std::vector<Vertex>{1, 2});
    CHECK(!nb1.cycle_at_depth.has_value());

    Hypergraph h2(4, 3);
    h2.add_edge(std::vector<Vertex>{0, 1, 2});
    h2.add_edge(std::vector<Vertex>{1, 2, 3});
    auto nb2 = explore_neighbourhood(h2, 0, 2);
    REQUIRE(nb2.cycle_at_depth.has_value());
    CHECK(*nb2.cycle_at_depth == 1);  // {1,2,3} meets N_1 in two vertices

    // two root edges intersecting only in the root: not a depth-0 cycle,
    // but the loose 3-cycle closes at depth 1
    Hypergraph h3(6, 3);
    h3.add_edge(std::vector<Vertex>{0, 1, 2});
    h3.add_edge(std::vector<Vertex>{2, 3, 4});
    h3.add_edge(std::vector<Vertex>{0, 4, 5});
    auto nb3 = explore_neighbourhood(h3, 0, 2);
    REQUIRE(nb3.cycle_at_depth.has_value());
    CHECK(*nb3.cycle_at_depth == 1);
}

TEST_CASE("explore_neighbourhood layer growth bound") {
    ModelParams p{3, 3, 1.5, 200};
    Hypergraph h = gen_simple(p, 11);
    const Incidence inc = Incidence::build(h);
    for (Vertex v : {0, 17, 101}) {
        auto nb = explore_neighbourhood(h, inc, v, 4);
        for (std::size_t i = 1; i < nb.layers.size(); ++i)
            CHECK(nb.layers[i].size() <=
                  static_cast<std::size_t>((h.k() - 1)) * nb.protruding[i - 1].size());
        // layers disjoint
        std::set<Vertex> seen;
        for (const auto& layer : nb.layers)
            for (Vertex u : layer) CHECK(seen.insert(u).second);
    }
}

TEST_CASE("text round trip is exact") {
    ModelParams p{3, 4, 1.2, 60};
    Hypergraph h = gen_multi(p, 9);
    Hypergraph back = from_text(to_text(h));
    CHECK(h == back);
    CHECK(back.multi_edges_allowed());

    std::stringstream ss;
    write_text(h, ss);
    CHECK(read_text(ss) == h);
}

TEST_CASE("edge counts equal floor(c n)") {
    for (double c : {0.37, 1.0, 2.719}) {
        ModelParams p{3, 3, c, 97};
        CHECK(gen_multi(p, 3).edge_count() ==
              static_cast<std::int64_t>(std::floor(c * 97)));
    }
}
