#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "di/poly.hpp"
#include "di/subsets.hpp"

using namespace di;

namespace {

MultilinearPoly random_poly(std::mt19937_64& rng, unsigned v, unsigned max_terms,
                            unsigned max_deg) {
    MultilinearPoly p(v);
    std::uniform_int_distribution<int> coeff(-5, 5);
    unsigned terms = 1 + rng() % max_terms;
    for (unsigned t = 0; t < terms; ++t) {
        unsigned deg = rng() % (max_deg + 1);
        Mono m;
        while (m.size() < deg) {
            std::uint16_t var = static_cast<std::uint16_t>(rng() % v);
            if (std::find(m.begin(), m.end(), var) == m.end()) m.push_back(var);
        }
        std::sort(m.begin(), m.end());
        p.add_term(m, coeff(rng));
    }
    return p;
}

Bitset random_subset(std::mt19937_64& rng, unsigned v) {
    Bitset c(v);
    for (unsigned i = 0; i < v; ++i)
        if (rng() & 1) c.set(i);
    return c;
}

} // namespace

TEST_CASE("worked evaluation example") {
    // f = 1 + x1 + 2x2 - 3x3 + 4x4 - x1x2 + 3x1x5 + 2x2x3 - 3x3x5
    // (1-indexed); at C = {1,2,3} the value is 2. Shifted to 0-indexing.
    MultilinearPoly f = MultilinearPoly::constant(5, 1);
    f.add_term({0}, 1);
    f.add_term({1}, 2);
    f.add_term({2}, -3);
    f.add_term({3}, 4);
    f.add_term({0, 1}, -1);
    f.add_term({0, 4}, 3);
    f.add_term({1, 2}, 2);
    f.add_term({2, 4}, -3);
    CHECK(f.eval(Bitset::of(5, {0, 1, 2})) == 2);
}

TEST_CASE("constants and monomial indicators") {
    MultilinearPoly five = MultilinearPoly::constant(6, 5);
    CHECK(five.eval(Bitset::of(6, {1, 3})) == 5);
    CHECK(five.eval(Bitset(6)) == 5);

    // x^C at C' is 1 iff C is inside C'
    Bitset c = Bitset::of(6, {1, 2});
    MultilinearPoly xc = MultilinearPoly::monomial(6, c);
    CHECK(xc.eval(Bitset::of(6, {1, 2, 4})) == 1);
    CHECK(xc.eval(Bitset::of(6, {1, 4})) == 0);
}

TEST_CASE("multiplication reduces squares on the variety") {
    MultilinearPoly x0 = MultilinearPoly::variable(4, 0);
    MultilinearPoly sq = x0 * x0;
    CHECK(sq == x0);
}

TEST_CASE("multiply agrees with eval pointwise") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 60; ++i) {
        unsigned v = 4 + rng() % 5;
        MultilinearPoly f = random_poly(rng, v, 6, 3);
        MultilinearPoly g = random_poly(rng, v, 6, 3);
        MultilinearPoly fg = f * g;
        for (int j = 0; j < 6; ++j) {
            Bitset c = random_subset(rng, v);
            CHECK(fg.eval(c) == f.eval(c) * g.eval(c));
        }
    }
}

TEST_CASE("partial derivative basics") {
    MultilinearPoly p(5);
    p.add_term({0, 1}, 1);
    MultilinearPoly d0 = p.partial_derivative(0);
    CHECK(d0 == MultilinearPoly::variable(5, 1));
    CHECK(p.partial_derivative(3).is_zero());
}

TEST_CASE("product rule on disjoint-support pairs") {
    // the formal derivative on the square-free normal form obeys the product
    // rule whenever the factors share no variables (normal-form reduction is
    // then the true polynomial product)
    std::mt19937_64 rng(7);
    for (int i = 0; i < 40; ++i) {
        MultilinearPoly f = random_poly(rng, 4, 5, 2);
        // g lives on variables 4..7 inside an 8-variable ring
        MultilinearPoly g_small = random_poly(rng, 4, 5, 2);
        MultilinearPoly f8(8), g8(8);
        for (const auto& [m, c] : f.terms()) f8.add_term(m, c);
        for (const auto& [m, c] : g_small.terms()) {
            Mono shifted;
            for (auto var : m) shifted.push_back(static_cast<std::uint16_t>(var + 4));
            g8.add_term(shifted, c);
        }
        MultilinearPoly fg = f8 * g8;
        for (unsigned var = 0; var < 8; ++var) {
            MultilinearPoly lhs = fg.partial_derivative(var);
            MultilinearPoly rhs = f8.partial_derivative(var) * g8 +
                                  f8 * g8.partial_derivative(var);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("elementary symmetric polynomials") {
    Bitset c = Bitset::of(5, {0, 1, 3});
    MultilinearPoly e2 = elementary_symmetric(5, c, 2);
    CHECK(e2.term_count() == 3);
    CHECK(e2.coefficient({0, 1}) == 1);
    CHECK(e2.coefficient({0, 3}) == 1);
    CHECK(e2.coefficient({1, 3}) == 1);
    CHECK(elementary_symmetric(5, c, 0) == MultilinearPoly::constant(5, 1));
    CHECK(elementary_symmetric(5, c, 4).is_zero());
    // x^{C,|C|} = x^C
    CHECK(elementary_symmetric(5, c, 3) == MultilinearPoly::monomial(5, c));
}

TEST_CASE("zonal polynomials") {
    // c = {0,1}, sizes = [0] -> x0 + x1
    MultilinearPoly z = zonal(4, Bitset::of(4, {0, 1}), {0});
    MultilinearPoly expected = MultilinearPoly::variable(4, 0) + MultilinearPoly::variable(4, 1);
    CHECK(z == expected);

    // c = {0}, sizes = [0,1] -> x0^2 - x0 collapses to zero in normal form
    CHECK(zonal(4, Bitset::of(4, {0}), {0, 1}).is_zero());

    CHECK_THROWS_AS(zonal(4, Bitset::of(4, {0, 1}), {1, 1}), InvalidInput);

    // zonal vanishing: the product over observed intersection sizes kills
    // every subset with one of those intersections
    Bitset c = Bitset::of(6, {0, 1, 2});
    MultilinearPoly z2 = zonal(6, c, {0, 2});
    CHECK(z2.eval(Bitset::of(6, {3, 4})) == 0);       // intersection 0
    CHECK(z2.eval(Bitset::of(6, {0, 1, 4})) == 0);    // intersection 2
    CHECK(z2.eval(Bitset::of(6, {0, 4})) != 0);       // intersection 1
}

TEST_CASE("g_BJ trichotomy on the worked example") {
    Bitset b = Bitset::of(6, {0, 1, 3});
    Bitset j = Bitset::of(6, {0, 1});
    MultilinearPoly g = g_bj(6, b, j, 3);
    CHECK(g.eval(b) == 0);                          // |C ∩ B| = k
    CHECK(g.eval(Bitset::of(6, {0, 1, 2})) == -2);  // j <= |C ∩ B| < k
    CHECK(g.eval(Bitset::of(6, {2, 4, 5})) == 0);   // |C ∩ B| < j
}

TEST_CASE("g_BJ nonvanishing iff j <= |C ∩ B| < k, exhaustively") {
    unsigned v = 6, k = 3;
    Bitset b = Bitset::of(v, {1, 2, 4});
    std::vector<Bitset> jsets;
    for (unsigned jsize = 0; jsize <= k; ++jsize)
        for_each_subset(v, jsize, [&](const Bitset& j) {
            if (j.is_subset_of(b)) jsets.push_back(j);
        });
    for (const Bitset& j : jsets) {
        MultilinearPoly g = g_bj(v, b, j, k);
        for (unsigned csize = 0; csize <= v; ++csize)
            for_each_subset(v, csize, [&](const Bitset& c) {
                unsigned m = static_cast<unsigned>(c.intersection_count(b));
                bool nonzero = (j.count() <= m && m < k);
                CHECK((g.eval(c) != 0) == nonzero);
            });
    }
}
