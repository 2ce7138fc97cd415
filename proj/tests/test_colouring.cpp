#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "hcol/colouring.hpp"
#include "hcol/hypergraph.hpp"

using namespace hcol;

namespace {

Hypergraph single_edge() {
    Hypergraph h(3, 3);
    h.add_edge(std::vector<Vertex>{0, 1, 2});
    return h;
}

}  // namespace

TEST_CASE("is_proper") {
    Hypergraph h = single_edge();
    CHECK(!is_proper(h, Colouring{3, {0, 0, 0}}));
    CHECK(is_proper(h, Colouring{3, {0, 0, 1}}));
    CHECK(is_proper(Hypergraph(5, 3), Colouring{3, {0, 0, 0, 0, 0}}));  // vacuous
    CHECK_THROWS_AS(is_proper(h, Colouring{3, {0, 0}}), std::invalid_argument);
}

TEST_CASE("mono_count") {
    CHECK(mono_count(Colouring{3, {0, 0, 0}}, 3) == 1);
    CHECK(mono_count(Colouring{3, {0, 0, 1, 1}}, 3) == 0);
    CHECK(mono_count(Colouring{3, {0, 0, 0, 0, 1, 1}}, 3) == 4);  // C(4,3)
}

TEST_CASE("binomial") {
    CHECK(binomial(10, 2) == 45);
    CHECK(binomial(4, 3) == 4);
    CHECK(binomial(2, 3) == 0);
    CHECK(binomial(52, 26) == 495918532948104ull);
}

TEST_CASE("densities and overlaps") {
    Colouring s{3, {0, 1, 2}};
    auto om = overlap(s, s);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(om.count(i, j) == (i == j ? 1 : 0));

    Colouring a{2, {0, 0, 1, 1}}, b{2, {1, 1, 0, 0}};
    auto om2 = overlap(a, b);
    CHECK(om2.count(0, 0) == 0);
    CHECK(om2.count(0, 1) == 2);
    CHECK(om2.count(1, 0) == 2);
    CHECK(om2.count(1, 1) == 0);

    // marginal consistency
    auto da = colour_density(a);
    for (int i = 0; i < 2; ++i) CHECK(om2.row_sum(i) == da.counts[i]);
    auto db = colour_density(b);
    for (int j = 0; j < 2; ++j) CHECK(om2.col_sum(j) == db.counts[j]);
}

TEST_CASE("is_balanced") {
    Colouring even{3, {0, 0, 0, 1, 1, 1, 2, 2, 2}};
    CHECK(is_balanced(even, 1000.0));
    Colouring skew{3, {0, 0, 0, 0, 0, 1, 1, 2, 2}};
    CHECK(!is_balanced(skew, 10.0));  // |5/9 - 1/3| > 1/30
}

TEST_CASE("exact colouring counts") {
    Hypergraph h = single_edge();
    CHECK(count_colourings_exact(h, 3) == 24);
    CHECK(count_colourings_exact(h, 2) == 6);

    Hypergraph two(6, 3);
    two.add_edge(std::vector<Vertex>{0, 1, 2});
    two.add_edge(std::vector<Vertex>{3, 4, 5});
    CHECK(count_colourings_exact(two, 3) == 576);

    // every 3-subset of 4 vertices, q=2: only the 2+2 splits survive
    Hypergraph complete4(4, 3);
    for (Vertex a = 0; a < 4; ++a)
        for (Vertex b = a + 1; b < 4; ++b)
            for (Vertex c = b + 1; c < 4; ++c)
                complete4.add_edge(std::vector<Vertex>{a, b, c});
    CHECK(count_colourings_exact(complete4, 2) == 6);
}

TEST_CASE("exact count agrees with direct enumeration") {
    ModelParams p{3, 3, 1.0, 8};
    Hypergraph h = gen_multi(p, 17);
    std::uint64_t brute = 0;
    Colouring s{3, std::vector<std::uint8_t>(8)};
    for (int code = 0; code < 6561; ++code) {
        int x = code;
        for (int v = 0; v < 8; ++v) { s.assignment[v] = static_cast<std::uint8_t>(x % 3); x /= 3; }
        if (is_proper(h, s)) ++brute;
    }
    CHECK(count_colourings_exact(h, 3) == brute);
}

TEST_CASE("count resource guard") {
    Hypergraph big(40, 3);
    CHECK_THROWS_AS(count_colourings_exact(big, 3, 1e6), ResourceGuardError);
}

TEST_CASE("sample_planted_map uniform over admissible maps") {
    // n=3, k=3, m=1, q=2: the two constant maps are inadmissible
    ModelParams p{3, 3, 0.5, 3};
    p.q = 2;
    const int trials = 60000;
    std::map<int, int> freq;
    for (int t = 0; t < trials; ++t) {
        Colouring s = sample_planted_map(p, t);
        int code = s.assignment[0] * 4 + s.assignment[1] * 2 + s.assignment[2];
        freq[code]++;
    }
    CHECK(freq.size() == 6);
    CHECK(freq.count(0) == 0);
    CHECK(freq.count(7) == 0);
    const double se = std::sqrt(trials * (1.0 / 6) * (5.0 / 6));
    for (const auto& [code, count] : freq) CHECK(std::abs(count - trials / 6.0) <= 3.5 * se);
}

TEST_CASE("sample_planted_map rejects hopeless parameters") {
    ModelParams p{3, 3, 0.5, 3};
    p.q = 1;
    CHECK_THROWS(sample_planted_map(p, 1));
}

TEST_CASE("sample_uniform_colouring uniform over the 24 proper colourings") {
    Hypergraph h = single_edge();
    const int trials = 60000;
    std::map<int, int> freq;
    for (int t = 0; t < trials; ++t) {
        Colouring s = sample_uniform_colouring(h, 3, t);
        REQUIRE(is_proper(h, s));
        freq[s.assignment[0] * 9 + s.assignment[1] * 3 + s.assignment[2]]++;
    }
    CHECK(freq.size() == 24);
    const double se = std::sqrt(trials * (1.0 / 24) * (23.0 / 24));
    for (const auto& [code, count] : freq) CHECK(std::abs(count - trials / 24.0) <= 3.5 * se);
}

TEST_CASE("sample_uniform_colouring reports uncolourable input") {
    Hypergraph h = single_edge();
    CHECK_THROWS(sample_uniform_colouring(h, 1, 1));
}

TEST_CASE("expected_colourings_multi identities") {
    // c=0 edge case handled at the call site; m=0 means all maps proper
    CHECK(expected_colourings_multi(5, 3, 3, 0) == doctest::Approx(243.0));

    // Monte Carlo mean of exact Z vs the composition sum
    const double exact = expected_colourings_multi(10, 3, 3, 8);
    ModelParams p{3, 3, 0.85, 10};
    REQUIRE(p.edge_count() == 8);
    const int trials = 2000;
    double sum = 0, sumsq = 0;
    for (int t = 0; t < trials; ++t) {
        const double z = static_cast<double>(count_colourings_exact(gen_multi(p, 500 + t), 3));
        sum += z;
        sumsq += z * z;
    }
    const double mean = sum / trials;
    const double se = std::sqrt((sumsq / trials - mean * mean) / (trials - 1));
    CHECK(std::abs(mean - exact) <= 3 * se);
}

TEST_CASE("colouring text round trip") {
    Colouring s{3, {2, 0, 1, 1}};
    CHECK(colouring_from_text(to_text(s), 3) == s);
    CHECK_THROWS(colouring_from_text("0 1 5", 3));
}
