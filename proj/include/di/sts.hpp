#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "di/design.hpp"

namespace di {

/// Partial Steiner triple system: no point pair occurs in more than one
/// triple. Validated on construction.
class PartialTripleSystem {
public:
    PartialTripleSystem(unsigned v, std::vector<Block> triples);

    unsigned v() const { return v_; }
    const std::vector<Block>& triples() const { return triples_; }
    std::size_t size() const { return triples_.size(); }

    /// Points covered by at least one triple.
    Bitset foundation() const;

private:
    unsigned v_;
    std::vector<Block> triples_;
};

/// Two partial triple systems on a shared point universe covering the same
/// pair set, with disjoint block sets. The constructor enforces the trade
/// conditions.
struct Trade {
    PartialTripleSystem t1;
    PartialTripleSystem t2;

    Trade(PartialTripleSystem t1, PartialTripleSystem t2);

    std::size_t volume() const { return t1.size(); }
    Bitset foundation() const { return t1.foundation(); }
};

/// The three trade conditions as a non-throwing predicate.
bool is_trade(const PartialTripleSystem& t1, const PartialTripleSystem& t2);

/// 2-(v,3,1) design for admissible v: Bose construction for v = 3 (mod 6),
/// Skolem-sequence construction for v = 1 (mod 6).
Design sts(unsigned v);

/// All 4-block subsets isomorphic to {{a,b,c},{a,d,e},{b,d,f},{c,e,f}}.
/// Each configuration is a sorted list of block indices into d.blocks().
std::vector<std::array<std::size_t, 4>> pasch_configurations(const Design& d);
std::size_t pasch_count(const Design& d);

/// The trade obtained from a Pasch configuration by switching it to the
/// complementary quadrilateral on the same six points.
Trade pasch_trade(const Design& d, const std::array<std::size_t, 4>& config);

struct CompletionOptions {
    std::uint64_t seed = 0;
    unsigned max_restarts = 64;
    std::uint64_t max_iterations = 400'000;
    /// Blocks the hill climber avoids creating when it has a choice (used to
    /// keep two completed systems block-disjoint). Not a hard constraint.
    std::vector<Block> discouraged;
};

/// Embeds the partial system P in a full 2-(v,3,1) design on v points by
/// seeded hill climbing (an uncovered pair is resolved each step, evicting at
/// most one non-protected triple), with restarts; falls back to backtracking
/// for v <= 15. Throws ConstructionError with the seed when every attempt is
/// exhausted.
Design complete_partial_sts(const PartialTripleSystem& p, unsigned v,
                            const CompletionOptions& opts = {});

/// Builds a 2-(v,3,2) design containing T1 and T2 minus the chosen block B of
/// T2, and not containing B, as the block-disjoint union of two completed
/// 2-(v,3,1) designs. The returned design records B as its distinguished
/// non-block for gamma_2 certification.
Design build_2v32(const Trade& trade, const Block& b, unsigned v,
                  std::uint64_t seed = 0);

// Trade text format: optional "base 0|1" line, then sections "T1:" / "T2:",
// one triple per line; '#' starts a comment.
Trade read_trade(const std::string& path);
Trade parse_trade(const std::string& text);
std::string trade_to_text(const Trade& t);

/// The paper's example trade: T1 = {123,145,246,356}, T2 = {124,135,236,456}
/// in 1-indexed labels (0-indexed internally), on a universe of n points.
Trade example_pasch_trade(unsigned n = 6);

/// Greedily grown maximal partial t-(v,k,1) system: no k-set outside it can
/// be added while keeping every t-subset covered at most once. Deterministic.
Design greedy_maximal_partial_design(unsigned v, unsigned k, unsigned t,
                                     const Budget& budget = global_budget());

} // namespace di
