#include "di/sts.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "di/errors.hpp"

namespace di {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

bool admissible_sts_order(unsigned v) { return v >= 7 && (v % 6 == 1 || v % 6 == 3); }

unsigned pair_index(unsigned v, unsigned a, unsigned b) {
    if (a > b) std::swap(a, b);
    return a * v + b;
}

} // namespace

PartialTripleSystem::PartialTripleSystem(unsigned v, std::vector<Block> triples)
    : v_(v), triples_(std::move(triples)) {
    std::unordered_set<unsigned> pairs;
    std::unordered_set<Bitset, BitsetHash> seen;
    for (const Block& t : triples_) {
        if (t.size() != v_) throw InvalidInput("triple universe mismatch");
        if (t.count() != 3) throw InvalidInput("partial triple system requires k = 3");
        if (!seen.insert(t).second) throw InvalidInput("repeated triple");
        auto pts = t.points();
        for (unsigned i = 0; i < 3; ++i)
            for (unsigned j = i + 1; j < 3; ++j)
                if (!pairs.insert(pair_index(v_, pts[i], pts[j])).second)
                    throw InvalidInput("pair {" + std::to_string(pts[i]) + "," +
                                       std::to_string(pts[j]) + "} covered twice");
    }
}

Bitset PartialTripleSystem::foundation() const {
    Bitset f(v_);
    for (const Block& t : triples_) f = f | t;
    return f;
}

bool is_trade(const PartialTripleSystem& t1, const PartialTripleSystem& t2) {
    if (t1.v() != t2.v()) return false;
    if (t1.size() != t2.size() || t1.size() == 0) return false;
    std::set<Bitset> b1(t1.triples().begin(), t1.triples().end());
    for (const Block& t : t2.triples())
        if (b1.count(t)) return false; // condition 2: disjoint block sets
    auto pair_set = [](const PartialTripleSystem& p) {
        std::set<unsigned> pairs;
        for (const Block& t : p.triples()) {
            auto pts = t.points();
            for (unsigned i = 0; i < 3; ++i)
                for (unsigned j = i + 1; j < 3; ++j)
                    pairs.insert(pair_index(p.v(), pts[i], pts[j]));
        }
        return pairs;
    };
    return pair_set(t1) == pair_set(t2); // condition 3
}

Trade::Trade(PartialTripleSystem t1_in, PartialTripleSystem t2_in)
    : t1(std::move(t1_in)), t2(std::move(t2_in)) {
    if (!is_trade(t1, t2)) throw InvalidInput("the two partial systems do not form a trade");
}

// ----- direct constructions --------------------------------------------------

namespace {

Design bose_sts(unsigned v) {
    unsigned m = v / 3; // v = 6t+3, m = 2t+1 odd
    unsigned inv2 = (m + 1) / 2;
    auto label = [m](unsigned x, unsigned level) { return 3 * x + level; };
    std::vector<Block> blocks;
    for (unsigned x = 0; x < m; ++x)
        blocks.push_back(Bitset::of(v, {label(x, 0), label(x, 1), label(x, 2)}));
    for (unsigned x = 0; x < m; ++x)
        for (unsigned y = x + 1; y < m; ++y)
            for (unsigned level = 0; level < 3; ++level)
                blocks.push_back(Bitset::of(v, {label(x, level), label(y, level),
                                                label((x + y) * inv2 % m, (level + 1) % 3)}));
    return Design(v, 3, std::move(blocks), "sts" + std::to_string(v));
}

/// Skolem sequence of order t: partition of {1..2t} into pairs (a_r, b_r)
/// with b_r - a_r = r. The hooked variant partitions {1..2t+1} \ {2t}.
/// Returns b_r indexed by r = 1..t, or nullopt if none exists for this kind.
std::optional<std::vector<unsigned>> skolem_pairs(unsigned t, bool hooked) {
    unsigned top = hooked ? 2 * t + 1 : 2 * t;
    std::vector<bool> used(top + 1, false);
    if (hooked) used[2 * t] = true; // the hook position stays empty
    std::vector<unsigned> b_of_r(t + 1, 0);
    // place differences largest-first; first-fit backtracking
    std::function<bool(unsigned)> place = [&](unsigned r) -> bool {
        if (r == 0) return true;
        for (unsigned a = 1; a + r <= top; ++a) {
            if (used[a] || used[a + r]) continue;
            used[a] = used[a + r] = true;
            b_of_r[r] = a + r;
            if (place(r - 1)) return true;
            used[a] = used[a + r] = false;
        }
        return false;
    };
    if (!place(t)) return std::nullopt;
    return b_of_r;
}

Design skolem_sts(unsigned v) {
    unsigned t = v / 6; // v = 6t+1
    bool hooked = (t % 4 == 2 || t % 4 == 3);
    auto pairs = skolem_pairs(t, hooked);
    if (!pairs) throw ConstructionError("no Skolem sequence of order " + std::to_string(t));
    // base blocks {0, r, t + b_r} developed cyclically mod v
    std::vector<Block> blocks;
    for (unsigned r = 1; r <= t; ++r)
        for (unsigned s = 0; s < v; ++s)
            blocks.push_back(
                Bitset::of(v, {s, (s + r) % v, (s + t + (*pairs)[r]) % v}));
    return Design(v, 3, std::move(blocks), "sts" + std::to_string(v));
}

} // namespace

Design sts(unsigned v) {
    if (!admissible_sts_order(v))
        throw InvalidInput("no Steiner triple system of order " + std::to_string(v) +
                           ": v must be 1 or 3 (mod 6) and v >= 7");
    return (v % 6 == 3) ? bose_sts(v) : skolem_sts(v);
}

// ----- Pasch configurations --------------------------------------------------

std::vector<std::array<std::size_t, 4>> pasch_configurations(const Design& d) {
    if (d.k() != 3) throw InvalidInput("pasch_configurations requires a triple system");
    unsigned v = d.v();
    std::map<unsigned, std::vector<std::size_t>> blocks_of_pair;
    for (std::size_t i = 0; i < d.block_count(); ++i) {
        auto pts = d.blocks()[i].points();
        for (unsigned a = 0; a < 3; ++a)
            for (unsigned b = a + 1; b < 3; ++b)
                blocks_of_pair[pair_index(v, pts[a], pts[b])].push_back(i);
    }

    std::set<std::array<std::size_t, 4>> found;
    const auto& blocks = d.blocks();
    for (std::size_t i1 = 0; i1 < blocks.size(); ++i1) {
        for (std::size_t i2 = i1 + 1; i2 < blocks.size(); ++i2) {
            Bitset common = blocks[i1] & blocks[i2];
            if (common.count() != 1) continue;
            unsigned a = common.lowest();
            auto us = blocks[i1].minus(common).points(); // {u1, u2}
            auto ws = blocks[i2].minus(common).points(); // {w1, w2}
            for (unsigned ui = 0; ui < 2; ++ui)
                for (unsigned wi = 0; wi < 2; ++wi) {
                    unsigned u = us[ui], up = us[1 - ui];
                    unsigned w = ws[wi], wp = ws[1 - wi];
                    auto it = blocks_of_pair.find(pair_index(v, u, w));
                    if (it == blocks_of_pair.end()) continue;
                    for (std::size_t i3 : it->second) {
                        if (i3 == i1 || i3 == i2) continue;
                        if (blocks[i3].test(a) || blocks[i3].test(up) || blocks[i3].test(wp))
                            continue;
                        Bitset uw = Bitset::of(v, {u, w});
                        unsigned f = blocks[i3].minus(uw).lowest();
                        Block fourth = Bitset::of(v, {up, wp, f});
                        if (!d.is_block(fourth)) continue;
                        auto i4 = d.block_index(fourth);
                        std::array<std::size_t, 4> key{i1, i2, i3, *i4};
                        std::sort(key.begin(), key.end());
                        found.insert(key);
                    }
                }
        }
    }
    return {found.begin(), found.end()};
}

std::size_t pasch_count(const Design& d) { return pasch_configurations(d).size(); }

Trade pasch_trade(const Design& d, const std::array<std::size_t, 4>& config) {
    unsigned v = d.v();
    std::vector<Block> t1_blocks;
    for (std::size_t i : config) t1_blocks.push_back(d.blocks().at(i));
    // switched quadrilateral: for each 3-subset of the four blocks, the three
    // pairwise intersection points form one block of the partner system
    std::vector<Block> t2_blocks;
    for (unsigned skip = 0; skip < 4; ++skip) {
        Bitset b(v);
        for (unsigned i = 0; i < 4; ++i)
            for (unsigned j = i + 1; j < 4; ++j) {
                if (i == skip || j == skip) continue;
                Bitset common = t1_blocks[i] & t1_blocks[j];
                if (common.count() != 1)
                    throw InvalidInput("blocks do not form a Pasch configuration");
                b.set(common.lowest());
            }
        t2_blocks.push_back(b);
    }
    return Trade(PartialTripleSystem(v, t1_blocks), PartialTripleSystem(v, t2_blocks));
}

// ----- completion -------------------------------------------------------------

namespace {

/// Hill-climbing state over pair coverage. Pairs are indexed a*v+b for a<b.
class Climber {
public:
    Climber(unsigned v, const std::vector<Block>& protected_triples,
            const std::vector<Block>& discouraged)
        : v_(v), cover_(static_cast<std::size_t>(v) * v, kNone) {
        for (const Block& b : discouraged) discouraged_.insert(b);
        for (unsigned a = 0; a < v; ++a)
            for (unsigned b = a + 1; b < v; ++b) push_uncovered(pair_index(v, a, b));
        for (const Block& t : protected_triples) add_triple(t, true);
    }

    bool complete() const { return uncovered_.empty(); }
    std::size_t triple_count() const { return triples_.size(); }

    std::vector<Block> triples() const {
        std::vector<Block> out;
        out.reserve(triples_.size());
        for (const auto& [block, prot] : triples_) out.push_back(block);
        return out;
    }

    /// One hill-climbing move; returns false if the sampled move was rejected.
    bool step(std::mt19937_64& rng) {
        unsigned pair = uncovered_[rng() % uncovered_.size()];
        unsigned x = pair / v_, y = pair % v_;
        unsigned z = static_cast<unsigned>(rng() % v_);
        if (z == x || z == y) return false;
        long c1 = cover_[pair_index(v_, x, z)];
        long c2 = cover_[pair_index(v_, y, z)];
        if (c1 != kNone && c2 != kNone) return false; // would evict two triples
        long conflict = (c1 != kNone) ? c1 : c2;
        if (conflict != kNone && triples_[static_cast<std::size_t>(conflict)].second)
            return false; // never evict a protected triple
        Block candidate = Bitset::of(v_, {x, y, z});
        if (discouraged_.count(candidate) && rng() % 8 != 0)
            return false; // soft: mostly avoid discouraged blocks
        if (conflict != kNone) remove_triple(static_cast<std::size_t>(conflict));
        add_triple(candidate, false);
        return true;
    }

private:
    static constexpr long kNone = -1;

    void push_uncovered(unsigned pair) {
        pos_in_uncovered_[pair] = uncovered_.size();
        uncovered_.push_back(pair);
    }

    void pop_uncovered(unsigned pair) {
        std::size_t pos = pos_in_uncovered_.at(pair);
        unsigned last = uncovered_.back();
        uncovered_[pos] = last;
        pos_in_uncovered_[last] = pos;
        uncovered_.pop_back();
        pos_in_uncovered_.erase(pair);
    }

    void add_triple(const Block& t, bool is_protected) {
        std::size_t idx = triples_.size();
        triples_.emplace_back(t, is_protected);
        auto pts = t.points();
        for (unsigned i = 0; i < 3; ++i)
            for (unsigned j = i + 1; j < 3; ++j) {
                unsigned pair = pair_index(v_, pts[i], pts[j]);
                if (cover_[pair] != kNone) throw InvalidInput("pair covered twice in completion");
                cover_[pair] = static_cast<long>(idx);
                pop_uncovered(pair);
            }
    }

    void remove_triple(std::size_t idx) {
        auto pts = triples_[idx].first.points();
        for (unsigned i = 0; i < 3; ++i)
            for (unsigned j = i + 1; j < 3; ++j) {
                unsigned pair = pair_index(v_, pts[i], pts[j]);
                cover_[pair] = kNone;
                push_uncovered(pair);
            }
        // swap-remove; fix the moved triple's cover entries
        if (idx + 1 != triples_.size()) {
            triples_[idx] = std::move(triples_.back());
            auto moved = triples_[idx].first.points();
            for (unsigned i = 0; i < 3; ++i)
                for (unsigned j = i + 1; j < 3; ++j)
                    cover_[pair_index(v_, moved[i], moved[j])] = static_cast<long>(idx);
        }
        triples_.pop_back();
    }

    unsigned v_;
    std::vector<long> cover_;
    std::vector<std::pair<Block, bool>> triples_;
    std::vector<unsigned> uncovered_;
    std::map<unsigned, std::size_t> pos_in_uncovered_;
    std::unordered_set<Bitset, BitsetHash> discouraged_;
};

/// Exact backtracking completion for small v: covers the lexicographically
/// first uncovered pair each step.
bool backtrack_sts(unsigned v, std::vector<long>& cover, std::vector<Block>& triples) {
    unsigned x = 0, y = 0;
    bool found = false;
    for (unsigned a = 0; a < v && !found; ++a)
        for (unsigned b = a + 1; b < v && !found; ++b)
            if (cover[pair_index(v, a, b)] < 0) {
                x = a;
                y = b;
                found = true;
            }
    if (!found) return true;
    for (unsigned z = 0; z < v; ++z) {
        if (z == x || z == y) continue;
        if (cover[pair_index(v, x, z)] >= 0 || cover[pair_index(v, y, z)] >= 0) continue;
        long mark = static_cast<long>(triples.size());
        triples.push_back(Bitset::of(v, {x, y, z}));
        cover[pair_index(v, x, y)] = mark;
        cover[pair_index(v, x, z)] = mark;
        cover[pair_index(v, y, z)] = mark;
        if (backtrack_sts(v, cover, triples)) return true;
        triples.pop_back();
        cover[pair_index(v, x, y)] = -1;
        cover[pair_index(v, x, z)] = -1;
        cover[pair_index(v, y, z)] = -1;
    }
    return false;
}

} // namespace

Design complete_partial_sts(const PartialTripleSystem& p, unsigned v,
                            const CompletionOptions& opts) {
    if (!admissible_sts_order(v))
        throw InvalidInput("target order " + std::to_string(v) + " is not 1 or 3 (mod 6)");
    unsigned n = static_cast<unsigned>(p.foundation().count());
    if (v < 2 * n + 1)
        throw InvalidInput("embedding requires v >= 2*|found(P)|+1 = " +
                           std::to_string(2 * n + 1));
    if (p.v() > v) throw InvalidInput("partial system universe exceeds target v");

    std::vector<Block> seed_triples;
    for (const Block& t : p.triples()) {
        Block wide(v);
        for (unsigned pt : t.points()) wide.set(pt);
        seed_triples.push_back(wide);
    }

    std::size_t target = static_cast<std::size_t>(v) * (v - 1) / 6;
    for (unsigned attempt = 0; attempt < opts.max_restarts; ++attempt) {
        std::mt19937_64 rng(mix_seed(opts.seed, attempt));
        Climber climber(v, seed_triples, opts.discouraged);
        for (std::uint64_t it = 0; it < opts.max_iterations && !climber.complete(); ++it)
            climber.step(rng);
        if (climber.complete()) {
            std::vector<Block> blocks = climber.triples();
            if (blocks.size() != target)
                throw ConstructionError("completion produced wrong block count", opts.seed);
            std::sort(blocks.begin(), blocks.end(),
                      [](const Block& a, const Block& b) { return a.lex_less(b); });
            return Design(v, 3, std::move(blocks), "sts" + std::to_string(v) + "-completion");
        }
    }

    if (v <= 15) {
        std::vector<long> cover(static_cast<std::size_t>(v) * v, -1);
        std::vector<Block> triples;
        for (const Block& t : seed_triples) {
            long mark = static_cast<long>(triples.size());
            triples.push_back(t);
            auto pts = t.points();
            for (unsigned i = 0; i < 3; ++i)
                for (unsigned j = i + 1; j < 3; ++j) cover[pair_index(v, pts[i], pts[j])] = mark;
        }
        if (backtrack_sts(v, cover, triples)) {
            std::sort(triples.begin(), triples.end(),
                      [](const Block& a, const Block& b) { return a.lex_less(b); });
            return Design(v, 3, std::move(triples), "sts" + std::to_string(v) + "-completion");
        }
    }
    throw ConstructionError("partial system completion exhausted its iteration cap",
                            opts.seed);
}

Design build_2v32(const Trade& trade, const Block& b, unsigned v, std::uint64_t seed) {
    unsigned n = static_cast<unsigned>(trade.foundation().count());
    if (!admissible_sts_order(v) || v < 2 * n + 3)
        throw InvalidInput("build_2v32 requires v = 1,3 (mod 6) and v >= 2n+3 = " +
                           std::to_string(2 * n + 3));
    const auto& t2 = trade.t2.triples();
    if (std::find(t2.begin(), t2.end(), b) == t2.end())
        throw InvalidInput("dropped block must belong to T2");

    // B = {h,i,j}; B* = {i,j,l} with l outside the foundation
    Bitset found = trade.foundation();
    unsigned h = b.lowest();
    unsigned ell = 0;
    while (ell < v && ell < found.size() && found.test(ell)) ++ell;
    if (ell >= v) throw InvalidInput("no spare point for B*");

    unsigned universe = std::max<unsigned>(trade.t1.v(), ell + 1);
    Block b_star(universe);
    for (unsigned pt : b.points())
        if (pt != h) b_star.set(pt);
    b_star.set(ell);

    std::vector<Block> t2_star;
    for (const Block& t : t2) {
        if (t == b) continue;
        Block wide(universe);
        for (unsigned pt : t.points()) wide.set(pt);
        t2_star.push_back(wide);
    }
    t2_star.push_back(b_star);

    Design sts1 = [&] {
        CompletionOptions opts;
        opts.seed = mix_seed(seed, 0x51);
        return complete_partial_sts(trade.t1, v, opts);
    }();

    // retry STS2 with fresh derived seeds until block-disjoint from STS1
    // (a 2-design with repeated blocks cannot be represented here)
    PartialTripleSystem p2(universe, t2_star);
    for (unsigned attempt = 0; attempt < 64; ++attempt) {
        CompletionOptions opts;
        opts.seed = mix_seed(seed, 0x52 + attempt);
        opts.discouraged = sts1.blocks();
        Design sts2 = complete_partial_sts(p2, v, opts);
        bool disjoint = true;
        for (const Block& blk : sts2.blocks())
            if (sts1.is_block(blk)) {
                disjoint = false;
                break;
            }
        if (!disjoint) continue;

        std::vector<Block> all = sts1.blocks();
        all.insert(all.end(), sts2.blocks().begin(), sts2.blocks().end());
        std::sort(all.begin(), all.end(),
                  [](const Block& x, const Block& y) { return x.lex_less(y); });
        Block b_wide(v);
        for (unsigned pt : b.points()) b_wide.set(pt);
        Design result(v, 3, std::move(all), "2-(" + std::to_string(v) + ",3,2)");
        if (result.is_block(b_wide))
            throw ConstructionError("dropped block appeared in the union", seed);
        return result.with_distinguished_non_block(b_wide);
    }
    throw ConstructionError("could not complete two block-disjoint systems", seed);
}

// ----- file format ------------------------------------------------------------

Trade parse_trade(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    unsigned base = 0;
    int section = 0; // 0 = preamble, 1 = T1, 2 = T2
    std::vector<std::vector<unsigned>> raw[3];
    unsigned max_pt = 0;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "base") {
            if (!(ls >> base) || base > 1) throw InvalidInput("base must be 0 or 1");
            continue;
        }
        if (head == "T1:") {
            section = 1;
            continue;
        }
        if (head == "T2:") {
            section = 2;
            continue;
        }
        if (section == 0) throw InvalidInput("trade file: triples before T1:/T2: section");
        std::vector<unsigned> pts;
        pts.push_back(static_cast<unsigned>(std::stoul(head)));
        unsigned p;
        while (ls >> p) pts.push_back(p);
        for (unsigned& x : pts) {
            if (x < base) throw InvalidInput("point below index base");
            x -= base;
            max_pt = std::max(max_pt, x);
        }
        raw[section].push_back(pts);
    }
    if (raw[1].empty() || raw[2].empty()) throw InvalidInput("trade file needs T1: and T2:");
    unsigned v = max_pt + 1;
    auto to_blocks = [v](const std::vector<std::vector<unsigned>>& rows) {
        std::vector<Block> out;
        for (const auto& pts : rows) out.push_back(Bitset::from_points(v, pts));
        return out;
    };
    return Trade(PartialTripleSystem(v, to_blocks(raw[1])),
                 PartialTripleSystem(v, to_blocks(raw[2])));
}

Trade read_trade(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open trade file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_trade(buf.str());
}

std::string trade_to_text(const Trade& t) {
    std::ostringstream out;
    out << "T1:\n";
    for (const Block& b : t.t1.triples()) out << b.to_string() << '\n';
    out << "T2:\n";
    for (const Block& b : t.t2.triples()) out << b.to_string() << '\n';
    return out.str();
}

Trade example_pasch_trade(unsigned n) {
    if (n < 6) throw InvalidInput("example trade needs at least 6 points");
    auto mk = [n](std::initializer_list<unsigned> pts) {
        Bitset b(n);
        for (unsigned p : pts) b.set(p - 1); // paper labels are 1-indexed
        return b;
    };
    PartialTripleSystem t1(n, {mk({1, 2, 3}), mk({1, 4, 5}), mk({2, 4, 6}), mk({3, 5, 6})});
    PartialTripleSystem t2(n, {mk({1, 2, 4}), mk({1, 3, 5}), mk({2, 3, 6}), mk({4, 5, 6})});
    return Trade(std::move(t1), std::move(t2));
}

Design greedy_maximal_partial_design(unsigned v, unsigned k, unsigned t,
                                     const Budget& budget) {
    if (t >= k || k >= v) throw InvalidInput("need t < k < v");
    checked_subset_count(v, k, budget, "greedy_maximal_partial_design");
    std::set<std::vector<unsigned>> covered; // t-subsets already used
    std::vector<Block> blocks;
    for_each_subset(v, k, [&](const Bitset& cand) {
        auto pts = cand.points();
        std::vector<std::vector<unsigned>> tsets;
        std::vector<unsigned> idx(t);
        for (unsigned i = 0; i < t; ++i) idx[i] = i;
        bool ok = true;
        do {
            std::vector<unsigned> ts(t);
            for (unsigned i = 0; i < t; ++i) ts[i] = pts[idx[i]];
            if (covered.count(ts)) {
                ok = false;
                break;
            }
            tsets.push_back(ts);
        } while (next_subset(k, idx));
        if (!ok) return;
        for (auto& ts : tsets) covered.insert(ts);
        blocks.push_back(cand);
    });
    return Design(v, k, std::move(blocks),
                  "maxpartial-" + std::to_string(t) + "-(" + std::to_string(v) + "," +
                      std::to_string(k) + ",1)");
}

} // namespace di
