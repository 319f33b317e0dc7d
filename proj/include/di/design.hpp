#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "di/bitset.hpp"
#include "di/numeric.hpp"
#include "di/subsets.hpp"

namespace di {

using Block = Bitset;

/// A k-uniform hypergraph on points 0..v-1 with pairwise distinct blocks.
/// Immutable after construction; all operations on it are pure.
class Design {
public:
    /// Validates uniformity, distinctness and 0 < k < v.
    Design(unsigned v, unsigned k, std::vector<Block> blocks, std::string name = "");

    unsigned v() const { return v_; }
    unsigned k() const { return k_; }
    const std::string& name() const { return name_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    std::size_t block_count() const { return blocks_.size(); }

    bool is_block(const Block& b) const { return block_set_.count(b) != 0; }

    /// Index of a block in the canonical order, if present.
    std::optional<std::size_t> block_index(const Block& b) const;

    /// Blocks sorted lexicographically (the canonical file order).
    std::vector<Block> sorted_blocks() const;

    /// Distinguished non-block recorded by constructions that certify a
    /// gamma_2 lower bound through it (see sts::build_2v32).
    const std::optional<Block>& distinguished_non_block() const { return non_block_; }
    Design with_distinguished_non_block(Block b) const;

private:
    unsigned v_;
    unsigned k_;
    std::vector<Block> blocks_;
    std::unordered_set<Block, BitsetHash> block_set_;
    std::string name_;
    std::optional<Block> non_block_;
};

/// Result of the strength computation. t = 0 means the block multiset is not
/// even point-regular (a plain hypergraph, NotADesign in the interface
/// contract); lambda and the lambda_s ladder are meaningful for t >= 1.
struct DesignParams {
    int t = 0;
    unsigned v = 0;
    unsigned k = 0;
    Int lambda;
    std::vector<Int> lambda_s; // lambda_s[s] for s = 0..t

    bool is_design() const { return t >= 1; }
};

/// All k-subsets of a v-set in lexicographic order.
Design complete_design(unsigned v, unsigned k, const Budget& budget = global_budget());

/// Largest t <= t_max such that every t-subset of points lies in a constant
/// number of blocks, with the full lambda_s ladder. t_max defaults to k.
DesignParams strength(const Design& d, int t_max = -1,
                      const Budget& budget = global_budget());

/// Derived design at point i: blocks through i, with i removed and points
/// relabeled to 0..v-2. relabel[new_point] = old_point.
struct RelabeledDesign {
    Design design;
    std::vector<unsigned> relabel;
};
RelabeledDesign derived_design(const Design& d, unsigned i);

/// Residual design at point i: blocks avoiding i, points relabeled likewise.
RelabeledDesign residual_design(const Design& d, unsigned i);

/// Counts blocks B' (including B itself) by |B' ∩ B|.
std::map<unsigned, std::size_t> intersection_distribution(const Design& d, const Block& b);

/// Counts blocks B' by the pair (|B' ∩ B1|, |B' ∩ B2|).
std::map<std::pair<unsigned, unsigned>, std::size_t>
pairwise_distribution(const Design& d, const Block& b1, const Block& b2);

// ----- file format ---------------------------------------------------------
// Line 1: "v k [index-base]"; each following non-comment line is one block's
// points; '#' starts a comment. Canonical writer: 0-indexed, blocks sorted
// lexicographically.

Design read_design(const std::string& path);
Design parse_design(const std::string& text, const std::string& name = "");
std::string design_to_text(const Design& d);
void write_design(const Design& d, const std::string& path);

/// FNV-1a hash of the canonical text form, as 16 hex digits. Certificates
/// identify designs by this value.
std::string design_hash(const Design& d);

} // namespace di
