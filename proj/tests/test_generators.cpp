#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "di/errors.hpp"
#include "di/generators.hpp"
#include "di/geometry.hpp"
#include "di/sts.hpp"
#include "di/witt.hpp"

using namespace di;

namespace {

std::shared_ptr<const Design> share(Design d) {
    return std::make_shared<const Design>(std::move(d));
}

/// exhaustively cross-validates the structured witness against explicit
/// generator evaluation on every k-subset
void cross_validate_witness(const GeneratorSet& g, const Design& d) {
    for_each_subset(d.v(), d.k(), [&](const Bitset& c) {
        auto witness = g.nonvanishing_witness(c);
        bool any_nonzero = false;
        for (const Generator& gen : g.generators())
            if (gen.eval(c) != 0) {
                any_nonzero = true;
                break;
            }
        CHECK(witness.has_value() == any_nonzero);
        if (witness) CHECK(witness->value != 0);
    });
}

} // namespace

TEST_CASE("trivial generators") {
    GeneratorSet g0 = trivial_generators(3, 2);
    const auto& gens = g0.generators();
    REQUIRE(gens.size() == 4); // x0+x1+x2-2 and three markers
    CHECK(g0.max_degree() == 2);
    CHECK(gens[0].polynomial().eval(Bitset::of(3, {0, 1})) == 0);
    CHECK(gens[0].polynomial().eval(Bitset::of(3, {0})) == -1);
    for (unsigned i = 1; i < 4; ++i) {
        CHECK(gens[i].is_marker());
        CHECK(gens[i].degree() == 2);
        CHECK(gens[i].eval(Bitset::of(3, {0, 1})) == 0);
    }
}

TEST_CASE("jacobian of G0 has full column rank at any k-subset") {
    GeneratorSet g0 = trivial_generators(7, 3);
    CHECK(jacobian_rank(g0, Bitset::of(7, {0, 2, 5})) == 7);
    CHECK(jacobian_rank(g0, Bitset::of(7, {4, 5, 6})) == 7);
}

TEST_CASE("jacobian rank of degenerate sets") {
    // a constant has zero gradient
    GeneratorSet constant = custom_generators(4, 2, {MultilinearPoly::constant(4, 1)}, false);
    CHECK(jacobian_rank(constant, Bitset::of(4, {0, 1})) == 0);
    // extra polynomials on top of G0 cannot lower the rank
    auto fano = share(fano_design());
    GeneratorSet sym = symbibd_generators(fano);
    CHECK(jacobian_rank(sym, Bitset::of(7, {0, 1, 3})) == 7);
}

TEST_CASE("gY generators on the Fano plane") {
    auto fano = share(fano_design());
    GeneratorSet g = gY_generators(fano);
    CHECK(g.max_degree() == 3);
    CHECK(g.family_size() == 21); // C(7,2)
    // vanishing on every block, for every generator
    for (const Generator& gen : g.generators())
        for (const Block& b : fano->blocks()) CHECK(gen.eval(b) == 0);
    // Y in no block: g_Y = -x^Y evaluates to -1 on supersets
    cross_validate_witness(g, *fano);
}

TEST_CASE("gY witness value is -1 on non-blocks") {
    auto fano = share(fano_design());
    GeneratorSet g = gY_generators(fano);
    auto witness = g.nonvanishing_witness(Bitset::of(7, {0, 1, 2}));
    REQUIRE(witness.has_value());
    CHECK(witness->value == -1);
}

TEST_CASE("steiner generators on the Fano plane") {
    auto fano = share(fano_design());
    GeneratorSet g = steiner_generators(fano, 2);
    CHECK(g.family_size() == 21); // 7 blocks x C(3,2)
    CHECK(g.max_degree() == 2);
    for (const Generator& gen : g.generators())
        for (const Block& b : fano->blocks()) CHECK(gen.eval(b) == 0);
    cross_validate_witness(g, *fano);
}

TEST_CASE("steiner rejects lambda > 1") {
    auto w24 = share(witt24());
    CHECK_THROWS_AS(steiner_generators(w24, 2), InvalidInput);
}

TEST_CASE("partial family covers deleted-block systems") {
    Design s9 = sts(9);
    std::vector<Block> blocks(s9.blocks().begin(), s9.blocks().end() - 1);
    Block deleted = s9.blocks().back();
    auto partial = share(Design(9, 3, blocks));
    GeneratorSet g = partial_design_generators(partial, 2);
    // x^T appears for the three uncovered pairs
    CHECK(g.family_size() == blocks.size() * 3 + 3);
    cross_validate_witness(g, *partial);
    // the deleted block is separated by an uncovered monomial
    auto witness = g.nonvanishing_witness(deleted);
    REQUIRE(witness.has_value());
    CHECK(witness->value == 1);
    CHECK(witness->generator.substr(0, 3) == "x^T");
}

TEST_CASE("steiner-only family has an extra zero on non-maximal partial systems") {
    Design s9 = sts(9);
    std::vector<Block> blocks(s9.blocks().begin(), s9.blocks().end() - 1);
    Block deleted = s9.blocks().back();
    auto partial = share(Design(9, 3, blocks));
    // keep only the g_{B,T} part (drop the uncovered monomials)
    GeneratorSet full = partial_design_generators(partial, 2);
    std::vector<MultilinearPoly> gbt;
    for (const Generator& gen : full.generators())
        if (!gen.is_marker() && gen.description().substr(0, 3) == "g_{")
            gbt.push_back(gen.polynomial());
    GeneratorSet reduced = custom_generators(9, 3, gbt, true);
    // every g_{B,T} vanishes on the deleted block: an extra zero
    CHECK(!reduced.nonvanishing_witness(deleted).has_value());
}

TEST_CASE("symbibd generators on the Fano plane") {
    auto fano = share(fano_design());
    GeneratorSet g = symbibd_generators(fano);
    CHECK(g.family_size() == 21);
    CHECK(g.max_degree() == 2);
    // worked instance: f_{0,1} = 2 x0 x1 - (x0 + x1 + x3) + 1
    MultilinearPoly expected(7);
    expected.add_term({0, 1}, 2);
    expected.add_term({0}, -1);
    expected.add_term({1}, -1);
    expected.add_term({3}, -1);
    expected.add_term({}, 1);
    bool found = false;
    for (const Generator& gen : g.generators())
        if (!gen.is_marker() && gen.polynomial() == expected) found = true;
    CHECK(found);
    for (const Block& b : fano->blocks()) CHECK(expected.eval(b) == 0);
    CHECK(expected.eval(Bitset::of(7, {0, 1, 2})) == 1);
    cross_validate_witness(g, *fano);
}

TEST_CASE("symbibd rejects non-symmetric designs") {
    auto pg = share(projective_design(3, 1, 2)); // 15 points, 35 blocks
    CHECK_THROWS_AS(symbibd_generators(pg), InvalidInput);
}

TEST_CASE("biplane specialization matches the general symmetric formula") {
    // symmetric 2-(7,4,2): complements of Fano blocks
    std::vector<Block> blocks;
    for (const Block& b : fano_design().blocks()) {
        Bitset all(7);
        for (unsigned i = 0; i < 7; ++i) all.set(i);
        blocks.push_back(all.minus(b));
    }
    auto biplane = share(Design(7, 4, blocks, "biplane7"));
    DesignParams p = strength(*biplane);
    REQUIRE(p.t == 2);
    REQUIRE(p.lambda == 2);
    GeneratorSet g = symbibd_generators(biplane);
    // (k-2) x_i x_j + 4 - 2(x_i + x_j) - sum over the symmetric difference:
    // check a pair explicitly against the biplane form
    unsigned i = 0, j = 1;
    std::vector<Block> through;
    for (const Block& b : biplane->blocks())
        if (b.test(i) && b.test(j)) through.push_back(b);
    REQUIRE(through.size() == 2);
    Bitset z = (through[0] ^ through[1]); // symmetric difference, {i,j} removed below
    MultilinearPoly expected(7);
    expected.add_term({static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j)},
                      Rat(4 - 2));
    expected.add_term({}, 4);
    expected.add_term({static_cast<std::uint16_t>(i)}, -2);
    expected.add_term({static_cast<std::uint16_t>(j)}, -2);
    for (unsigned h : z.points())
        expected.add_term({static_cast<std::uint16_t>(h)}, -1);
    bool found = false;
    for (const Generator& gen : g.generators())
        if (!gen.is_marker() && gen.polynomial() == expected) found = true;
    CHECK(found);
    for (const Block& b : biplane->blocks()) CHECK(expected.eval(b) == 0);
}

TEST_CASE("projective generators vanish on subspace blocks") {
    GeneratorSet g = projective_generators(2, 1, 2);
    const Design& fano_pg = *g.design();
    for (const Generator& gen : g.generators())
        for (const Block& b : fano_pg.blocks()) CHECK(gen.eval(b) == 0);
    CHECK(g.max_degree() == 2);
    cross_validate_witness(g, fano_pg);
}

TEST_CASE("witt24 family: structured witness matches explicit polynomials") {
    GeneratorSet g = witt24_generators();
    CHECK(g.max_degree() == 3);
    CHECK(g.family_size() == 759 * 28);
    const Design& d = *g.design();

    // spot-check explicit f_{B,i,j} = (x_i - x_j)(c_B.x - 2)(c_B.x - 4)
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Block& b = d.blocks()[rng() % d.block_count()];
        auto pts = b.points();
        unsigned i = pts[rng() % 8], j = pts[rng() % 8];
        if (i == j) continue;
        MultilinearPoly f = (MultilinearPoly::variable(24, i) -
                             MultilinearPoly::variable(24, j)) *
                            (linear_form(24, b, 2) * linear_form(24, b, 4));
        for (int c_trial = 0; c_trial < 40; ++c_trial) {
            std::vector<unsigned> pool(24);
            std::iota(pool.begin(), pool.end(), 0u);
            std::shuffle(pool.begin(), pool.end(), rng);
            Bitset c(24);
            for (unsigned idx = 0; idx < 8; ++idx) c.set(pool[idx]);
            // the structured family claims all-vanish exactly when every
            // block meets c in {0,2,4,8}; f must vanish at c in that case
            if (!g.nonvanishing_witness(c).has_value()) CHECK(f.eval(c) == 0);
        }
        // vanishing on every block
        for (const Block& other : d.blocks()) CHECK(f.eval(other) == 0);
    }
}

TEST_CASE("witt23 family: the five-block cubic vanishes on all blocks") {
    GeneratorSet g = witt23_generators();
    CHECK(g.max_degree() == 3);
    CHECK(g.family_size() == 1771); // C(23,3)
    const Design& d = *g.design();
    const auto& gens = g.generators();
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const Generator& gen = gens[24 + rng() % g.family_size()]; // skip G0
        for (int b_trial = 0; b_trial < 20; ++b_trial)
            CHECK(gen.eval(d.blocks()[rng() % d.block_count()]) == 0);
    }
    // structured witness vs explicit on random 7-subsets
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<unsigned> pool(23);
        std::iota(pool.begin(), pool.end(), 0u);
        std::shuffle(pool.begin(), pool.end(), rng);
        Bitset c(23);
        for (unsigned idx = 0; idx < 7; ++idx) c.set(pool[idx]);
        auto witness = g.nonvanishing_witness(c);
        CHECK(witness.has_value() == !d.is_block(c));
    }
}

TEST_CASE("witt22 family quadratics") {
    GeneratorSet g = witt22_generators();
    CHECK(g.max_degree() == 2);
    CHECK(g.family_size() == 77 * 15);
    const Design& d = *g.design();
    // h at the block itself vanishes through the (x_i - x_j) factor
    for (const Generator& gen : g.generators()) {
        for (int i = 0; i < 3; ++i) CHECK(gen.eval(d.blocks()[i]) == 0);
    }
}

TEST_CASE("m12 orbit polynomials") {
    GeneratorSet g = m12_orbit_generators();
    CHECK(g.max_degree() == 3);
    const Design& d = *g.design();
    // frozen orbit size from the first verified run (deduplicated mod sign)
    CHECK(g.family_size() == 1320);
    // every orbit image vanishes on every block
    std::uint64_t checked = 0;
    for (const Generator& gen : g.generators()) {
        if (gen.is_marker()) continue;
        for (const Block& b : d.blocks()) {
            CHECK(gen.eval(b) == 0);
            ++checked;
        }
    }
    CHECK(checked == g.family_size() * 132 + 132); // orbit polys + G0 linear
}

TEST_CASE("octagon search and the worked example polynomial") {
    auto d = share(witt10());
    std::vector<OctagonSpec> specs = octagon_search(*d);
    CHECK(!specs.empty());
    GeneratorSet g = octagon_generators(d, specs);
    CHECK(g.max_degree() == 2);
    for (const Generator& gen : g.generators())
        for (const Block& b : d->blocks()) CHECK(gen.eval(b) == 0);

    // the printed example: B1 = {0,1,2,3}, B2 = {4,5,7,8} gives
    // x0x5 - x5x1 + x1x7 - x7x3 + x3x8 - x8x2 + x2x4 - x4x0 (up to sign)
    MultilinearPoly printed(10);
    printed.add_term({0, 5}, 1);
    printed.add_term({1, 5}, -1);
    printed.add_term({1, 7}, 1);
    printed.add_term({3, 7}, -1);
    printed.add_term({3, 8}, 1);
    printed.add_term({2, 8}, -1);
    printed.add_term({2, 4}, 1);
    printed.add_term({0, 4}, -1);
    for (const Block& b : d->blocks()) CHECK(printed.eval(b) == 0);
    bool found = false;
    for (const OctagonSpec& spec : specs) {
        MultilinearPoly p = octagon_polynomial(*d, spec);
        if (p == printed || p == printed.scaled(Rat(-1))) found = true;
    }
    CHECK(found);
}

TEST_CASE("octagon rejects intersecting blocks") {
    auto d = share(witt10());
    // find two intersecting blocks
    std::size_t i2 = 1;
    while (!d->blocks()[0].intersects(d->blocks()[i2])) ++i2;
    CHECK_THROWS_AS(octagon_polynomial(*d, {0, i2, 0}), InvalidInput);
}

TEST_CASE("generator set file round trip") {
    auto d = share(witt10());
    std::vector<OctagonSpec> specs = octagon_search(*d);
    specs.resize(std::min<std::size_t>(specs.size(), 5));
    GeneratorSet g = octagon_generators(d, specs);
    std::string text = generator_set_to_text(g);
    GeneratorSet back = parse_generator_set(text);
    CHECK(back.v() == 10);
    CHECK(back.k() == 4);
    CHECK(back.includes_g0());
    CHECK(back.family() == Family::octagon);
    CHECK(back.generators().size() == g.generators().size());
    // same evaluations everywhere
    for_each_subset(10, 4, [&](const Bitset& c) {
        CHECK(back.nonvanishing_witness(c).has_value() ==
              g.nonvanishing_witness(c).has_value());
    });
}

TEST_CASE("zonal family through custom generators") {
    // witt24 zonal: (c_B.x)(c_B.x-2)(c_B.x-4)(c_B.x-8) vanishes on all blocks
    const Design& d = witt24();
    const Block& b = d.blocks()[0];
    MultilinearPoly z = zonal(24, b, {0, 2, 4, 8});
    for (const Block& other : d.blocks()) CHECK(z.eval(other) == 0);
}
