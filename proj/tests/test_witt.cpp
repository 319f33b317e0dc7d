#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "di/design.hpp"
#include "di/witt.hpp"

using namespace di;

TEST_CASE("Golay code structure") {
    const BinaryCode& g = golay_code();
    CHECK(g.length() == 24);
    CHECK(g.dimension() == 12);
    CHECK(g.self_orthogonal());

    auto we = g.weight_enumerator();
    CHECK(we[0] == 1);
    CHECK(we[8] == 759);
    CHECK(we[12] == 2576);
    CHECK(we[16] == 759);
    CHECK(we[24] == 1);
    CHECK(g.codewords().size() == 4096);
}

TEST_CASE("witt24 is a 5-(24,8,1) design") {
    const Design& d = witt24();
    CHECK(d.v() == 24);
    CHECK(d.k() == 8);
    CHECK(d.block_count() == 759);
    DesignParams p = strength(d);
    CHECK(p.t == 5);
    CHECK(p.lambda == 1);
    REQUIRE(p.lambda_s.size() == 6);
    CHECK(p.lambda_s[4] == 5);
    CHECK(p.lambda_s[3] == 21);
    CHECK(p.lambda_s[2] == 77);
    CHECK(p.lambda_s[1] == 253);
    CHECK(p.lambda_s[0] == 759);
}

TEST_CASE("witt24 intersection distribution matches the m_i table") {
    const Design& d = witt24();
    for (const Block& b : d.blocks()) {
        auto dist = intersection_distribution(d, b);
        CHECK(dist[8] == 1);
        CHECK(dist[4] == 280);
        CHECK(dist[2] == 448);
        CHECK(dist[0] == 30);
        std::size_t total = 0;
        for (auto [i, c] : dist) {
            total += c;
            CHECK((i == 0 || i == 2 || i == 4 || i == 8));
        }
        CHECK(total == 759);
    }
}

TEST_CASE("weight-8 supports have even intersection with every codeword") {
    const Design& d = witt24();
    const BinaryCode& code = golay_code();
    std::mt19937_64 rng(5);
    auto words = code.codewords();
    for (int i = 0; i < 200; ++i) {
        const Block& b = d.blocks()[rng() % d.block_count()];
        const Bitset& w = words[rng() % words.size()];
        CHECK(b.intersection_count(w) % 2 == 0);
    }
}

TEST_CASE("witt23 and witt22 derived designs") {
    CHECK(witt23().block_count() == 253);
    CHECK(witt23().v() == 23);
    CHECK(witt23().k() == 7);
    DesignParams p23 = strength(witt23());
    CHECK(p23.t == 4);
    CHECK(p23.lambda == 1);

    CHECK(witt22().block_count() == 77);
    DesignParams p22 = strength(witt22());
    CHECK(p22.t == 3);
    CHECK(p22.lambda == 1);
}

TEST_CASE("witt22 blocks pairwise intersect in 0 or 2 points") {
    const Design& d = witt22();
    for (std::size_t i = 0; i < d.block_count(); ++i)
        for (std::size_t j = i + 1; j < d.block_count(); ++j) {
            unsigned m = static_cast<unsigned>(d.blocks()[i].intersection_count(d.blocks()[j]));
            CHECK((m == 0 || m == 2));
        }
}

TEST_CASE("M12 group closure") {
    const PermGroup& g = m12_group();
    CHECK(g.order() == 95040);
    // identity is element 0 of the closure
    PermGroup::Perm id(12);
    for (unsigned i = 0; i < 12; ++i) id[i] = static_cast<std::uint8_t>(i);
    CHECK(g.elements()[0] == id);
    // sharply 5-transitive: the orbit of an ordered 5-tuple is the whole group
    CHECK(g.ordered_tuple_orbit_size({0, 1, 2, 3, 4}) == 95040);
    CHECK(g.ordered_tuple_orbit_size({7, 2, 9, 0, 5}) == 95040);
}

TEST_CASE("group closure cap") {
    // S_6 from a transposition and a 6-cycle exceeds a tiny cap
    PermGroup::Perm cycle{1, 2, 3, 4, 5, 0};
    PermGroup::Perm swap{1, 0, 2, 3, 4, 5};
    CHECK_THROWS_AS(PermGroup(6, {cycle, swap}, 100), ConstructionError);
    PermGroup s6(6, {cycle, swap});
    CHECK(s6.order() == 720);
}

TEST_CASE("witt12 and its derived designs") {
    const Design& d = witt12();
    CHECK(d.v() == 12);
    CHECK(d.k() == 6);
    CHECK(d.block_count() == 132);
    DesignParams p = strength(d);
    CHECK(p.t == 5);
    CHECK(p.lambda == 1);

    CHECK(witt11().block_count() == 66);
    DesignParams p11 = strength(witt11());
    CHECK(p11.t == 4);
    CHECK(p11.lambda == 1);
}

TEST_CASE("witt12: every 5-set lies in exactly one block") {
    const Design& d = witt12();
    std::vector<unsigned> pts{0, 1, 2, 3, 4};
    do {
        Bitset s = Bitset::from_points(12, pts);
        unsigned count = 0;
        for (const Block& b : d.blocks())
            if (s.is_subset_of(b)) ++count;
        CHECK(count == 1);
    } while (next_subset(12, pts));
}

TEST_CASE("witt10 construction") {
    const Design& d = witt10();
    CHECK(d.v() == 10);
    CHECK(d.k() == 4);
    CHECK(d.block_count() == 30);
    DesignParams p = strength(d);
    CHECK(p.t == 3);
    CHECK(p.lambda == 1);
    CHECK(d.is_block(Bitset::of(10, {1, 2, 4, 5})));
}

TEST_CASE("witt10 pairwise distribution on disjoint blocks") {
    const Design& d = witt10();
    // find a disjoint block pair
    for (std::size_t i = 0; i < d.block_count(); ++i)
        for (std::size_t j = 0; j < d.block_count(); ++j) {
            if (i == j || d.blocks()[i].intersects(d.blocks()[j])) continue;
            auto dist = pairwise_distribution(d, d.blocks()[i], d.blocks()[j]);
            CHECK(dist[{0, 2}] == 2);
            CHECK(dist[{0, 4}] == 1);
            CHECK(dist[{1, 2}] == 8);
            CHECK(dist[{2, 0}] == 2);
            CHECK(dist[{2, 1}] == 8);
            CHECK(dist[{2, 2}] == 8);
            CHECK(dist[{4, 0}] == 1);
            std::size_t total = 0;
            for (auto [key, c] : dist) total += c;
            CHECK(total == 30);
            CHECK(dist.size() == 7); // nothing outside the published entries
        }
}

TEST_CASE("derived designs inherit strength t-1 with lambda unchanged") {
    for (const Design* d : {&witt24(), &witt12()}) {
        DesignParams p = strength(*d);
        auto der = derived_design(*d, 3);
        DesignParams dp = strength(der.design);
        CHECK(dp.t >= p.t - 1);
        CHECK(dp.lambda == p.lambda);
        auto res = residual_design(*d, 3);
        DesignParams rp = strength(res.design);
        CHECK(rp.t >= p.t - 1);
    }
}
