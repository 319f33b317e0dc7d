#include "di/witt.hpp"

#include <algorithm>
#include <queue>
#include <unordered_set>

#include "di/errors.hpp"

namespace di {

BinaryCode::BinaryCode(unsigned length, std::vector<Bitset> generator_rows)
    : n_(length), rows_(std::move(generator_rows)) {
    for (const Bitset& r : rows_)
        if (r.size() != n_) throw InvalidInput("generator row length mismatch");
    // rows must be independent over GF(2): xor-basis insertion
    std::map<unsigned, Bitset> pivot_rows;
    for (Bitset r : rows_) {
        while (!r.empty()) {
            unsigned p = r.lowest();
            auto it = pivot_rows.find(p);
            if (it == pivot_rows.end()) {
                pivot_rows.emplace(p, r);
                break;
            }
            r = r ^ it->second;
        }
        if (r.empty()) throw InvalidInput("generator rows are dependent over GF(2)");
    }
}

std::vector<Bitset> BinaryCode::codewords(const Budget& budget) const {
    if (dimension() >= 63 || (std::uint64_t{1} << dimension()) > budget.max_subsets)
        throw BudgetExceeded("codeword enumeration over 2^" + std::to_string(dimension()));
    std::uint64_t total = std::uint64_t{1} << dimension();
    std::vector<Bitset> words;
    words.reserve(total);
    Bitset current(n_);
    words.push_back(current);
    // Gray-code walk: one row XOR per step.
    for (std::uint64_t i = 1; i < total; ++i) {
        unsigned bit = static_cast<unsigned>(std::countr_zero(i));
        current = current ^ rows_[bit];
        words.push_back(current);
    }
    return words;
}

std::map<unsigned, std::size_t> BinaryCode::weight_enumerator(const Budget& budget) const {
    std::map<unsigned, std::size_t> dist;
    for (const Bitset& w : codewords(budget)) ++dist[static_cast<unsigned>(w.count())];
    return dist;
}

bool BinaryCode::self_orthogonal() const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (std::size_t j = i; j < rows_.size(); ++j)
            if (rows_[i].intersection_count(rows_[j]) % 2 != 0) return false;
    return true;
}

const BinaryCode& golay_code() {
    static const BinaryCode code = [] {
        // cyclic [23,12,7]: rows x^i * g(x), g = x^11+x^10+x^6+x^5+x^4+x^2+1
        const unsigned exponents[] = {0, 2, 4, 5, 6, 10, 11};
        std::vector<Bitset> rows;
        for (unsigned i = 0; i < 12; ++i) {
            Bitset row(24);
            unsigned weight = 0;
            for (unsigned e : exponents) {
                row.set(i + e);
                ++weight;
            }
            if (weight % 2 == 1) row.set(23); // extend to even weight
            rows.push_back(row);
        }
        // reduce to systematic [I_12 | B]: pivots are already on columns 0..11
        for (unsigned i = 0; i < 12; ++i)
            for (unsigned r = 0; r < 12; ++r)
                if (r != i && rows[r].test(i)) rows[r] = rows[r] ^ rows[i];

        BinaryCode c(24, std::move(rows));
        if (!c.self_orthogonal())
            throw ConstructionError("Golay generator matrix is not self-orthogonal");
        auto we = c.weight_enumerator();
        std::map<unsigned, std::size_t> expected{{0, 1}, {8, 759}, {12, 2576}, {16, 759}, {24, 1}};
        if (we != expected) throw ConstructionError("Golay weight enumerator mismatch");
        return c;
    }();
    return code;
}

PermGroup::PermGroup(unsigned degree, std::vector<Perm> generators, std::size_t order_cap)
    : degree_(degree), generators_(std::move(generators)) {
    if (degree > 16) throw InvalidInput("PermGroup closure supports degree <= 16");
    for (const Perm& g : generators_) {
        if (g.size() != degree) throw InvalidInput("generator degree mismatch");
        std::vector<bool> seen(degree, false);
        for (std::uint8_t x : g) {
            if (x >= degree || seen[x]) throw InvalidInput("generator is not a bijection");
            seen[x] = true;
        }
    }

    auto pack = [degree](const Perm& p) {
        std::uint64_t key = 0;
        for (unsigned i = 0; i < degree; ++i) key |= static_cast<std::uint64_t>(p[i]) << (4 * i);
        return key;
    };

    Perm identity(degree);
    for (unsigned i = 0; i < degree; ++i) identity[i] = static_cast<std::uint8_t>(i);

    std::unordered_set<std::uint64_t> seen{pack(identity)};
    std::queue<Perm> frontier;
    frontier.push(identity);
    elements_.push_back(identity);
    while (!frontier.empty()) {
        Perm p = std::move(frontier.front());
        frontier.pop();
        for (const Perm& g : generators_) {
            Perm q(degree);
            for (unsigned i = 0; i < degree; ++i) q[i] = g[p[i]];
            if (seen.insert(pack(q)).second) {
                if (elements_.size() >= order_cap)
                    throw ConstructionError("group closure exceeds order cap " +
                                            std::to_string(order_cap));
                elements_.push_back(q);
                frontier.push(q);
            }
        }
    }
}

std::vector<Bitset> PermGroup::set_orbit(const Bitset& seed) const {
    std::unordered_set<Bitset, BitsetHash> orbit;
    for (const Perm& p : elements_) {
        Bitset image(seed.size());
        for (unsigned pt : seed.points()) image.set(p[pt]);
        orbit.insert(image);
    }
    std::vector<Bitset> out(orbit.begin(), orbit.end());
    std::sort(out.begin(), out.end(), [](const Bitset& a, const Bitset& b) { return a.lex_less(b); });
    return out;
}

std::size_t PermGroup::ordered_tuple_orbit_size(const std::vector<std::uint8_t>& tuple,
                                                std::size_t cap) const {
    auto pack = [](const std::vector<std::uint8_t>& t) {
        std::uint64_t key = 1; // length marker
        for (std::uint8_t x : t) key = key * 17 + x + 1;
        return key;
    };
    std::unordered_set<std::uint64_t> seen{pack(tuple)};
    std::queue<std::vector<std::uint8_t>> frontier;
    frontier.push(tuple);
    while (!frontier.empty()) {
        auto t = std::move(frontier.front());
        frontier.pop();
        for (const Perm& g : generators_) {
            std::vector<std::uint8_t> image(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) image[i] = g[t[i]];
            if (seen.insert(pack(image)).second) {
                if (seen.size() > cap)
                    throw ConstructionError("tuple orbit exceeds cap");
                frontier.push(image);
            }
        }
    }
    return seen.size();
}

const PermGroup& m12_group() {
    static const PermGroup group = [] {
        // paper generators (1 4)(3 10)(5 11)(6 12) and
        // (1 8 9)(2 3 4)(5 12 11)(6 10 7), shifted to 0-indexing
        auto from_cycles = [](std::vector<std::vector<std::uint8_t>> cycles) {
            PermGroup::Perm p(12);
            for (unsigned i = 0; i < 12; ++i) p[i] = static_cast<std::uint8_t>(i);
            for (const auto& cyc : cycles)
                for (std::size_t i = 0; i < cyc.size(); ++i)
                    p[cyc[i]] = cyc[(i + 1) % cyc.size()];
            return p;
        };
        PermGroup::Perm a = from_cycles({{0, 3}, {2, 9}, {4, 10}, {5, 11}});
        PermGroup::Perm b = from_cycles({{0, 7, 8}, {1, 2, 3}, {4, 11, 10}, {5, 9, 6}});
        PermGroup g(12, {a, b});
        if (g.order() != 95040)
            throw ConstructionError("M12 closure has order " + std::to_string(g.order()) +
                                    ", expected 95040");
        return g;
    }();
    return group;
}

const Design& witt24() {
    static const Design design = [] {
        std::vector<Block> blocks;
        for (const Bitset& w : golay_code().codewords())
            if (w.count() == 8) blocks.push_back(w);
        std::sort(blocks.begin(), blocks.end(),
                  [](const Block& a, const Block& b) { return a.lex_less(b); });
        if (blocks.size() != 759) throw ConstructionError("witt24 block count mismatch");
        return Design(24, 8, std::move(blocks), "witt24");
    }();
    return design;
}

const Design& witt23() {
    static const Design design = [] {
        Design d = derived_design(witt24(), 0).design;
        if (d.block_count() != 253) throw ConstructionError("witt23 block count mismatch");
        return Design(23, 7, d.blocks(), "witt23");
    }();
    return design;
}

const Design& witt22() {
    static const Design design = [] {
        Design d = derived_design(witt23(), 0).design;
        if (d.block_count() != 77) throw ConstructionError("witt22 block count mismatch");
        return Design(22, 6, d.blocks(), "witt22");
    }();
    return design;
}

const Design& witt12() {
    static const Design design = [] {
        Bitset seed = Bitset::of(12, {0, 1, 2, 3, 4, 8}); // paper's {1,2,3,4,5,9}
        std::vector<Block> orbit = m12_group().set_orbit(seed);
        if (orbit.size() != 132)
            throw ConstructionError("witt12 orbit has " + std::to_string(orbit.size()) +
                                    " blocks, expected 132");
        return Design(12, 6, std::move(orbit), "witt12");
    }();
    return design;
}

const Design& witt11() {
    static const Design design = [] {
        Design d = derived_design(witt12(), 0).design;
        if (d.block_count() != 66) throw ConstructionError("witt11 block count mismatch");
        return Design(11, 5, d.blocks(), "witt11");
    }();
    return design;
}

const Design& witt10() {
    static const Design design = [] {
        // X = F_3^2 with (x,y) labeled 1 + x + 3y, plus infinity labeled 0.
        std::vector<Block> blocks;
        for (unsigned x = 0; x < 3; ++x)
            for (unsigned y = 0; y < 3; ++y)
                for (unsigned dx = 0; dx < 3; ++dx)
                    for (unsigned dy = 0; dy < 3; ++dy) {
                        if (dx == 0 && dy == 0) continue;
                        Bitset b(10);
                        b.set(0);
                        for (unsigned t = 0; t < 3; ++t)
                            b.set(1 + (x + t * dx) % 3 + 3 * ((y + t * dy) % 3));
                        if (std::find(blocks.begin(), blocks.end(), b) == blocks.end())
                            blocks.push_back(b);
                    }
        if (blocks.size() != 12) throw ConstructionError("witt10 line-block count mismatch");
        // the eighteen symmetric differences of orthogonal lines, as printed
        const char* quads[] = {"1245", "1278", "1269", "1346", "1379", "1358",
                               "2356", "2389", "2347", "4578", "4679", "5689",
                               "1567", "2468", "3459", "1489", "2579", "3678"};
        for (const char* q : quads) {
            Bitset b(10);
            for (const char* c = q; *c; ++c) b.set(static_cast<unsigned>(*c - '0'));
            blocks.push_back(b);
        }
        std::sort(blocks.begin(), blocks.end(),
                  [](const Block& a, const Block& b) { return a.lex_less(b); });
        return Design(10, 4, std::move(blocks), "witt10");
    }();
    return design;
}

} // namespace di
