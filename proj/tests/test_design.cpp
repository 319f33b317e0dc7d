#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "di/design.hpp"
#include "di/errors.hpp"
#include "di/geometry.hpp"

using namespace di;

TEST_CASE("complete design block counts and order") {
    Design k32 = complete_design(3, 2);
    REQUIRE(k32.block_count() == 3);
    CHECK(k32.blocks()[0] == Bitset::of(3, {0, 1}));
    CHECK(k32.blocks()[1] == Bitset::of(3, {0, 2}));
    CHECK(k32.blocks()[2] == Bitset::of(3, {1, 2}));

    CHECK(complete_design(7, 3).block_count() == 35);

    Budget small{100};
    CHECK_THROWS_AS(complete_design(24, 8, small), BudgetExceeded);
}

TEST_CASE("design invariants are enforced") {
    CHECK_THROWS_AS(Design(5, 5, {}), InvalidInput);
    CHECK_THROWS_AS(Design(5, 0, {}), InvalidInput);
    std::vector<Block> bad{Bitset::of(5, {0, 1})};
    CHECK_THROWS_AS(Design(5, 3, bad), InvalidInput);
    std::vector<Block> dup{Bitset::of(5, {0, 1, 2}), Bitset::of(5, {0, 1, 2})};
    CHECK_THROWS_AS(Design(5, 3, dup), InvalidInput);
}

TEST_CASE("strength of the Fano plane") {
    DesignParams p = strength(fano_design());
    CHECK(p.t == 2);
    CHECK(p.lambda == 1);
    REQUIRE(p.lambda_s.size() == 3);
    CHECK(p.lambda_s[1] == 3);
    CHECK(p.lambda_s[0] == 7);
}

TEST_CASE("strength of the disjoint-triples 1-design") {
    std::vector<Block> blocks{Bitset::of(9, {0, 1, 2}), Bitset::of(9, {3, 4, 5}),
                              Bitset::of(9, {6, 7, 8})};
    Design d(9, 3, blocks);
    DesignParams p = strength(d);
    CHECK(p.t == 1);
    CHECK(p.lambda == 1);
}

TEST_CASE("a non-regular hypergraph reports t = 0") {
    std::vector<Block> blocks{Bitset::of(5, {0, 1, 2}), Bitset::of(5, {0, 1, 3})};
    DesignParams p = strength(Design(5, 3, blocks));
    CHECK(p.t == 0);
    CHECK(!p.is_design());
    CHECK(p.lambda_s[0] == 2);
}

TEST_CASE("complete design has strength k") {
    CHECK(strength(complete_design(6, 3)).t == 3);
}

TEST_CASE("derived and residual of the Fano plane") {
    Design fano = fano_design();
    auto der = derived_design(fano, 0);
    CHECK(der.design.v() == 6);
    CHECK(der.design.k() == 2);
    CHECK(der.design.block_count() == 3);
    CHECK(der.relabel.size() == 6);
    CHECK(der.relabel[0] == 1);

    auto res = residual_design(fano, 0);
    CHECK(res.design.block_count() == 4); // Fano blocks avoiding one point
    CHECK(res.design.k() == 3);
    DesignParams p = strength(res.design);
    CHECK(p.t == 1);
}

TEST_CASE("projective designs") {
    Design fano_pg = projective_design(2, 1, 2);
    CHECK(fano_pg.v() == 7);
    CHECK(fano_pg.k() == 3);
    CHECK(fano_pg.block_count() == 7);
    DesignParams p = strength(fano_pg);
    CHECK(p.t == 2);
    CHECK(p.lambda == 1);

    Design pg21 = projective_design(2, 1, 4);
    CHECK(pg21.v() == 21);
    CHECK(pg21.k() == 5);
    CHECK(pg21.block_count() == 21);
    DesignParams p21 = strength(pg21);
    CHECK(p21.t == 2);
    CHECK(p21.lambda == 1);

    Design pg31 = projective_design(3, 1, 2);
    CHECK(pg31.v() == 15);
    CHECK(pg31.block_count() == 35);
    CHECK(strength(pg31).t == 2);

    CHECK_THROWS_AS(projective_design(2, 1, 6), InvalidInput);
    CHECK_THROWS_AS(projective_design(2, 2, 4), InvalidInput);
}

TEST_CASE("lines of PG agree with brute-force subspace counts") {
    // oracle: 2-dim subspaces of GF(2)^4 as {a, b, a^b} triples over the
    // 15 nonzero vectors
    {
        std::set<std::set<unsigned>> lines;
        for (unsigned a = 1; a < 16; ++a)
            for (unsigned b = a + 1; b < 16; ++b) lines.insert({a, b, a ^ b});
        CHECK(lines.size() == 35);
    }
    CHECK(lines_of_pg(3, 2).size() == 35);
    CHECK(lines_of_pg(2, 2).size() == 7);
    CHECK(lines_of_pg(2, 4).size() == 21);
    for (const Block& line : lines_of_pg(2, 4)) CHECK(line.count() == 5);
}

TEST_CASE("every point pair lies on exactly one line of PG(d,q)") {
    for (auto [d, q] : {std::pair<unsigned, unsigned>{2, 3}, {3, 2}, {2, 4}}) {
        std::vector<Block> lines = lines_of_pg(d, q);
        unsigned v = static_cast<unsigned>(lines.front().size());
        for (unsigned i = 0; i < v; ++i)
            for (unsigned j = i + 1; j < v; ++j) {
                unsigned count = 0;
                for (const Block& line : lines)
                    if (line.test(i) && line.test(j)) ++count;
                CHECK(count == 1);
            }
    }
}

TEST_CASE("AG(2,3) is a 2-(9,3,1) design") {
    Design ag = ag23_design();
    CHECK(ag.v() == 9);
    CHECK(ag.block_count() == 12);
    DesignParams p = strength(ag);
    CHECK(p.t == 2);
    CHECK(p.lambda == 1);
}

TEST_CASE("intersection distribution sums to the block count") {
    Design fano = fano_design();
    auto dist = intersection_distribution(fano, fano.blocks()[0]);
    std::size_t total = 0;
    for (auto [i, c] : dist) total += c;
    CHECK(total == fano.block_count());
    CHECK(dist[3] == 1); // the block itself
    CHECK_THROWS_AS(intersection_distribution(fano, Bitset::of(7, {0, 1, 2})), InvalidInput);
}

TEST_CASE("design file format round trip") {
    Design fano = fano_design();
    std::string text = design_to_text(fano);
    Design back = parse_design(text);
    CHECK(back.v() == 7);
    CHECK(back.k() == 3);
    CHECK(back.block_count() == 7);
    for (const Block& b : fano.blocks()) CHECK(back.is_block(b));
    CHECK(design_hash(back) == design_hash(fano));

    // 1-indexed input with comments
    std::string one_indexed = "# sample\n9 3 1\n1 2 3\n4 5 6\n7 8 9\n";
    Design d = parse_design(one_indexed);
    CHECK(d.is_block(Bitset::of(9, {0, 1, 2})));
    CHECK(d.is_block(Bitset::of(9, {6, 7, 8})));

    CHECK_THROWS_AS(parse_design("9 3\n1 2 99\n"), InvalidInput);
    CHECK_THROWS_AS(parse_design(""), InvalidInput);
}
