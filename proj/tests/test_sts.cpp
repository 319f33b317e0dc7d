#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "di/errors.hpp"
#include "di/exactla.hpp"
#include "di/geometry.hpp"
#include "di/sts.hpp"

using namespace di;

TEST_CASE("sts orders and block counts") {
    CHECK(sts(7).block_count() == 7);
    CHECK(sts(9).block_count() == 12);
    CHECK(sts(13).block_count() == 26);
    CHECK(sts(15).block_count() == 35);
    CHECK(sts(19).block_count() == 57);
    CHECK(sts(21).block_count() == 70);
    CHECK_THROWS_AS(sts(8), InvalidInput);
    CHECK_THROWS_AS(sts(11), InvalidInput);
    CHECK_THROWS_AS(sts(5), InvalidInput);
}

TEST_CASE("constructed systems are 2-(v,3,1) designs") {
    for (unsigned v : {7u, 9u, 13u, 15u, 19u, 21u, 25u, 27u}) {
        Design d = sts(v);
        DesignParams p = strength(d);
        CHECK(p.t == 2);
        CHECK(p.lambda == 1);
        CHECK(d.block_count() == static_cast<std::size_t>(v) * (v - 1) / 6);
    }
}

TEST_CASE("partial triple system validation") {
    CHECK_THROWS_AS(PartialTripleSystem(6, {Bitset::of(6, {0, 1, 2}), Bitset::of(6, {0, 1, 3})}),
                    InvalidInput);
    PartialTripleSystem ok(7, {Bitset::of(7, {0, 1, 2}), Bitset::of(7, {0, 3, 4})});
    CHECK(ok.foundation().count() == 5);
}

TEST_CASE("the example trade") {
    Trade t = example_pasch_trade();
    CHECK(is_trade(t.t1, t.t2));
    CHECK(t.volume() == 4);
    CHECK(t.foundation() == Bitset::of(6, {0, 1, 2, 3, 4, 5}));
}

TEST_CASE("trade predicate rejections") {
    // identical nonempty systems: disjointness fails
    PartialTripleSystem p(7, {Bitset::of(7, {0, 1, 2})});
    CHECK(!is_trade(p, p));
    // different pair sets
    PartialTripleSystem q(7, {Bitset::of(7, {0, 1, 3})});
    CHECK(!is_trade(p, q));
    CHECK_THROWS_AS(Trade(p, q), InvalidInput);
}

TEST_CASE("pasch configurations") {
    CHECK(pasch_count(fano_design()) == 7);
    CHECK(pasch_count(sts(9)) == 0);
    Design pg32 = projective_design(3, 1, 2);
    CHECK(pasch_count(pg32) == 105); // v(v-1)(v-3)/24 at v=15
    CHECK_THROWS_AS(pasch_count(complete_design(6, 4)), InvalidInput);
}

TEST_CASE("pasch bound holds for constructed systems") {
    for (unsigned v : {7u, 9u, 13u, 15u, 19u, 21u}) {
        std::size_t bound = static_cast<std::size_t>(v) * (v - 1) * (v - 3) / 24;
        CHECK(pasch_count(sts(v)) <= bound);
    }
}

TEST_CASE("pasch-derived trades verify the trade conditions and delta identity") {
    std::size_t harvested = 0;
    for (unsigned v : {15u, 19u, 21u}) {
        Design d = sts(v);
        auto configs = pasch_configurations(d);
        for (const auto& cfg : configs) {
            if (harvested >= 50) break;
            Trade t = pasch_trade(d, cfg);
            CHECK(is_trade(t.t1, t.t2));
            CHECK(t.volume() == 4);
            // sum of delta^2 over T1 equals the sum over T2, componentwise
            std::vector<Rat> lhs(delta_length(t.t1.v(), 2), Rat(0));
            std::vector<Rat> rhs = lhs;
            for (const Block& b : t.t1.triples()) {
                auto delta = delta_vector(b, 2);
                for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] += delta[i];
            }
            for (const Block& b : t.t2.triples()) {
                auto delta = delta_vector(b, 2);
                for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += delta[i];
            }
            CHECK(lhs == rhs);
            ++harvested;
        }
    }
    CHECK(harvested == 50);
}

TEST_CASE("completion embeds the Fano plane in an STS(15)") {
    Design fano = fano_design();
    PartialTripleSystem p(7, fano.blocks());
    CompletionOptions opts;
    opts.seed = 0;
    Design d = complete_partial_sts(p, 15, opts);
    CHECK(d.block_count() == 35);
    DesignParams params = strength(d);
    CHECK(params.t == 2);
    CHECK(params.lambda == 1);
    for (const Block& b : fano.blocks()) {
        Block wide(15);
        for (unsigned pt : b.points()) wide.set(pt);
        CHECK(d.is_block(wide));
    }
}

TEST_CASE("completion from an empty system") {
    PartialTripleSystem empty(9, {});
    CompletionOptions opts;
    Design d = complete_partial_sts(empty, 9, opts);
    CHECK(d.block_count() == 12);
    CHECK(strength(d).t == 2);
}

TEST_CASE("completion rejects inadmissible orders") {
    PartialTripleSystem empty(9, {});
    CHECK_THROWS_AS(complete_partial_sts(empty, 11, {}), InvalidInput);
    PartialTripleSystem fano_p(7, fano_design().blocks());
    CHECK_THROWS_AS(complete_partial_sts(fano_p, 13, {}), InvalidInput); // 13 < 2*7+1
}

TEST_CASE("completion is deterministic for a fixed seed") {
    PartialTripleSystem empty(13, {});
    CompletionOptions opts;
    opts.seed = 17;
    Design a = complete_partial_sts(empty, 13, opts);
    Design b = complete_partial_sts(empty, 13, opts);
    CHECK(design_to_text(a) == design_to_text(b));
}

TEST_CASE("build_2v32 produces the promised design") {
    Trade trade = example_pasch_trade();
    Block drop = Bitset::of(6, {3, 4, 5}); // the paper's {4,5,6}
    Design d = build_2v32(trade, drop, 15, 0);
    CHECK(d.v() == 15);
    CHECK(d.block_count() == 70);
    DesignParams p = strength(d);
    CHECK(p.t == 2);
    CHECK(p.lambda == 2);
    // contains T1 and T2 minus the dropped block
    auto widen = [](const Block& b, unsigned v) {
        Block w(v);
        for (unsigned pt : b.points()) w.set(pt);
        return w;
    };
    for (const Block& b : trade.t1.triples()) CHECK(d.is_block(widen(b, 15)));
    for (const Block& b : trade.t2.triples()) {
        if (b == drop)
            CHECK(!d.is_block(widen(b, 15)));
        else
            CHECK(d.is_block(widen(b, 15)));
    }
    REQUIRE(d.distinguished_non_block().has_value());
    CHECK(*d.distinguished_non_block() == widen(drop, 15));
}

TEST_CASE("build_2v32 at v=21") {
    Trade trade = example_pasch_trade();
    Design d = build_2v32(trade, Bitset::of(6, {3, 4, 5}), 21, 0);
    CHECK(d.block_count() == 140);
    CHECK(strength(d).lambda == 2);
}

TEST_CASE("build_2v32 rejects v below 2n+3") {
    Trade trade = example_pasch_trade(); // n = 6 -> v >= 15
    CHECK_THROWS_AS(build_2v32(trade, Bitset::of(6, {3, 4, 5}), 13, 0), InvalidInput);
    // the dropped block must belong to T2
    CHECK_THROWS_AS(build_2v32(trade, Bitset::of(6, {0, 1, 2}), 15, 0), InvalidInput);
}

TEST_CASE("trade file format round trip") {
    Trade t = example_pasch_trade();
    std::string text = trade_to_text(t);
    Trade back = parse_trade(text);
    CHECK(back.volume() == 4);
    CHECK(is_trade(back.t1, back.t2));

    // 1-indexed file
    std::string one = "base 1\nT1:\n1 2 3\n1 4 5\n2 4 6\n3 5 6\nT2:\n1 2 4\n1 3 5\n2 3 6\n4 5 6\n";
    Trade t1 = parse_trade(one);
    CHECK(t1.foundation() == Bitset::of(6, {0, 1, 2, 3, 4, 5}));

    CHECK_THROWS_AS(parse_trade("T1:\n1 2 3\n"), InvalidInput);
}

TEST_CASE("greedy maximal partial system is maximal") {
    Design d = greedy_maximal_partial_design(9, 3, 2);
    // maximality: no addable triple remains
    std::set<std::pair<unsigned, unsigned>> covered;
    for (const Block& b : d.blocks()) {
        auto pts = b.points();
        for (unsigned i = 0; i < 3; ++i)
            for (unsigned j = i + 1; j < 3; ++j) covered.insert({pts[i], pts[j]});
    }
    bool addable = false;
    for_each_subset(9, 3, [&](const Bitset& cand) {
        if (d.is_block(cand)) return;
        auto pts = cand.points();
        bool ok = true;
        for (unsigned i = 0; i < 3 && ok; ++i)
            for (unsigned j = i + 1; j < 3; ++j)
                if (covered.count({pts[i], pts[j]})) {
                    ok = false;
                    break;
                }
        if (ok) addable = true;
    });
    CHECK(!addable);
}
