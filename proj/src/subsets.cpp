#include "di/subsets.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "di/errors.hpp"

namespace di {

std::uint64_t binomial_u64(unsigned long n, long k) {
    Int b = binomial(n, k);
    if (!b.fits_ulong_p())
        throw BudgetExceeded("binomial(" + std::to_string(n) + "," + std::to_string(k) +
                             ") does not fit in 64 bits");
    return b.get_ui();
}

Rat parse_rational(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw InvalidInput("cannot parse rational '" + s + "'");
    r.canonicalize();
    return r;
}

Budget& global_budget() {
    static Budget b = [] {
        Budget init;
        if (const char* env = std::getenv("DESIGN_IDEALS_BUDGET")) {
            char* end = nullptr;
            unsigned long long val = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && val > 0) init.max_subsets = val;
        }
        return init;
    }();
    return b;
}

std::uint64_t checked_subset_count(unsigned v, unsigned k, const Budget& budget,
                                   const char* what) {
    Int count = binomial(v, k);
    if (count > Int(static_cast<unsigned long>(budget.max_subsets)))
        throw BudgetExceeded(std::string(what) + ": C(" + std::to_string(v) + "," +
                             std::to_string(k) + ") = " + count.get_str() +
                             " exceeds subset budget " + std::to_string(budget.max_subsets));
    return count.get_ui();
}

void for_each_subset(unsigned v, unsigned k, const std::function<void(const Bitset&)>& fn) {
    if (k > v) return;
    std::vector<unsigned> pts(k);
    for (unsigned i = 0; i < k; ++i) pts[i] = i;
    Bitset b(v);
    for (unsigned i = 0; i < k; ++i) b.set(i);
    while (true) {
        fn(b);
        // advance
        unsigned i = k;
        while (i > 0 && pts[i - 1] == v - k + i - 1) --i;
        if (i == 0) break;
        b.reset(pts[i - 1]);
        ++pts[i - 1];
        b.set(pts[i - 1]);
        for (unsigned j = i; j < k; ++j) {
            b.reset(pts[j]);
            pts[j] = pts[j - 1] + 1;
            b.set(pts[j]);
        }
    }
}

bool next_subset(unsigned v, std::vector<unsigned>& pts) {
    unsigned k = static_cast<unsigned>(pts.size());
    unsigned i = k;
    while (i > 0 && pts[i - 1] == v - k + i - 1) --i;
    if (i == 0) return false;
    ++pts[i - 1];
    for (unsigned j = i; j < k; ++j) pts[j] = pts[j - 1] + 1;
    return true;
}

std::uint64_t subset_lex_rank(unsigned v, const std::vector<unsigned>& pts) {
    // Count subsets lexicographically before pts: for each position i, every
    // choice of a smaller admissible element contributes a full tail count.
    std::uint64_t rank = 0;
    unsigned k = static_cast<unsigned>(pts.size());
    unsigned prev = 0;
    for (unsigned i = 0; i < k; ++i) {
        for (unsigned c = prev; c < pts[i]; ++c)
            rank += binomial_u64(v - c - 1, static_cast<long>(k - i - 1));
        prev = pts[i] + 1;
    }
    return rank;
}

std::vector<unsigned> subset_lex_unrank(unsigned v, unsigned k, std::uint64_t rank) {
    std::vector<unsigned> pts(k);
    unsigned c = 0;
    for (unsigned i = 0; i < k; ++i) {
        while (true) {
            std::uint64_t tail = binomial_u64(v - c - 1, static_cast<long>(k - i - 1));
            if (rank < tail) break;
            rank -= tail;
            ++c;
        }
        pts[i] = c++;
    }
    if (rank != 0) throw InvalidInput("subset rank out of range");
    return pts;
}

} // namespace di
