#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstddef>
#include <compare>
#include <string>
#include <vector>

#include "di/errors.hpp"

namespace di {

/// Fixed-universe bitset for point sets. The universe size is bounded by
/// kMaxPoints; only the words covering the universe participate in loops, so
/// small designs (v <= 64) pay for a single word.
///
/// Intersection popcounts on these sets are the hot path of zero-set
/// scanning, hence a flat value type with no heap indirection.
class Bitset {
public:
    static constexpr std::size_t kMaxPoints = 1024;
    static constexpr std::size_t kMaxWords = kMaxPoints / 64;

    Bitset() : nbits_(0), nwords_(0) { words_.fill(0); }

    explicit Bitset(std::size_t nbits) : nbits_(nbits), nwords_((nbits + 63) / 64) {
        if (nbits > kMaxPoints)
            throw InvalidInput("point universe exceeds supported maximum of " +
                               std::to_string(kMaxPoints));
        words_.fill(0);
    }

    static Bitset of(std::size_t nbits, std::initializer_list<unsigned> elems) {
        Bitset b(nbits);
        for (unsigned e : elems) b.set(e);
        return b;
    }

    static Bitset from_points(std::size_t nbits, const std::vector<unsigned>& elems) {
        Bitset b(nbits);
        for (unsigned e : elems) b.set(e);
        return b;
    }

    std::size_t size() const { return nbits_; }
    std::size_t word_count() const { return nwords_; }
    std::uint64_t word(std::size_t i) const { return words_[i]; }

    void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::size_t w = 0; w < nwords_; ++w) c += std::popcount(words_[w]);
        return c;
    }

    bool empty() const {
        for (std::size_t w = 0; w < nwords_; ++w)
            if (words_[w]) return false;
        return true;
    }

    std::size_t intersection_count(const Bitset& o) const {
        std::size_t c = 0;
        for (std::size_t w = 0; w < nwords_; ++w) c += std::popcount(words_[w] & o.words_[w]);
        return c;
    }

    bool intersects(const Bitset& o) const {
        for (std::size_t w = 0; w < nwords_; ++w)
            if (words_[w] & o.words_[w]) return true;
        return false;
    }

    bool is_subset_of(const Bitset& o) const {
        for (std::size_t w = 0; w < nwords_; ++w)
            if (words_[w] & ~o.words_[w]) return false;
        return true;
    }

    Bitset operator&(const Bitset& o) const {
        Bitset r(nbits_);
        for (std::size_t w = 0; w < nwords_; ++w) r.words_[w] = words_[w] & o.words_[w];
        return r;
    }

    Bitset operator|(const Bitset& o) const {
        Bitset r(nbits_);
        for (std::size_t w = 0; w < nwords_; ++w) r.words_[w] = words_[w] | o.words_[w];
        return r;
    }

    Bitset operator^(const Bitset& o) const {
        Bitset r(nbits_);
        for (std::size_t w = 0; w < nwords_; ++w) r.words_[w] = words_[w] ^ o.words_[w];
        return r;
    }

    /// Set difference: elements of *this not in o.
    Bitset minus(const Bitset& o) const {
        Bitset r(nbits_);
        for (std::size_t w = 0; w < nwords_; ++w) r.words_[w] = words_[w] & ~o.words_[w];
        return r;
    }

    bool operator==(const Bitset& o) const {
        if (nbits_ != o.nbits_) return false;
        for (std::size_t w = 0; w < nwords_; ++w)
            if (words_[w] != o.words_[w]) return false;
        return true;
    }

    bool operator!=(const Bitset& o) const { return !(*this == o); }

    /// Orders first by universe size, then by point set in colex word order;
    /// for equal-size universes this is the numeric order of the bit pattern,
    /// which coincides with colex order on subsets. Used for deterministic
    /// map keys; block-level lexicographic order is provided separately.
    bool operator<(const Bitset& o) const {
        if (nbits_ != o.nbits_) return nbits_ < o.nbits_;
        for (std::size_t w = nwords_; w-- > 0;)
            if (words_[w] != o.words_[w]) return words_[w] < o.words_[w];
        return false;
    }

    /// Lexicographic order on the sorted point lists (the order the design
    /// file format uses for blocks).
    bool lex_less(const Bitset& o) const {
        // Smallest differing element decides; equivalent to comparing the
        // sorted point sequences lexicographically.
        for (std::size_t w = 0; w < nwords_; ++w) {
            std::uint64_t diff = words_[w] ^ o.words_[w];
            if (diff) {
                std::uint64_t low = diff & (~diff + 1);
                return words_[w] & low; // we own the smallest differing point
            }
        }
        return false;
    }

    std::vector<unsigned> points() const {
        std::vector<unsigned> pts;
        pts.reserve(count());
        for (std::size_t w = 0; w < nwords_; ++w) {
            std::uint64_t x = words_[w];
            while (x) {
                pts.push_back(static_cast<unsigned>(w * 64 + std::countr_zero(x)));
                x &= x - 1;
            }
        }
        return pts;
    }

    unsigned lowest() const {
        for (std::size_t w = 0; w < nwords_; ++w)
            if (words_[w]) return static_cast<unsigned>(w * 64 + std::countr_zero(words_[w]));
        throw InvalidInput("lowest() on empty set");
    }

    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::size_t w = 0; w < nwords_; ++w) {
            h ^= words_[w];
            h *= 1099511628211ULL;
        }
        return h ^ nbits_;
    }

    std::string to_string() const {
        std::string s;
        for (unsigned p : points()) {
            if (!s.empty()) s += ' ';
            s += std::to_string(p);
        }
        return s;
    }

private:
    std::array<std::uint64_t, kMaxWords> words_;
    std::size_t nbits_;
    std::size_t nwords_;
};

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

} // namespace di
