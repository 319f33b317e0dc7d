#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "di/bitset.hpp"
#include "di/numeric.hpp"

namespace di {

/// Global cap on exhaustive subset enumerations. All exhaustive loops check
/// their iteration count against this before starting and fail fast with
/// BudgetExceeded instead of running unbounded.
struct Budget {
    std::uint64_t max_subsets = 20'000'000;
};

/// Process-wide default, overridable by the CLI (--budget) and the
/// DESIGN_IDEALS_BUDGET environment variable.
Budget& global_budget();

/// Throws BudgetExceeded if C(v,k) exceeds the budget; otherwise returns it.
std::uint64_t checked_subset_count(unsigned v, unsigned k, const Budget& budget,
                                   const char* what);

/// Enumerates all k-subsets of {0..v-1} in lexicographic order of the sorted
/// point lists, calling fn(subset). Caller is responsible for budgeting.
void for_each_subset(unsigned v, unsigned k, const std::function<void(const Bitset&)>& fn);

/// Lexicographic rank <-> subset conversions (rank 0 = {0,1,...,k-1}).
/// Used to split zero-set scans into deterministic parallel chunks.
std::uint64_t subset_lex_rank(unsigned v, const std::vector<unsigned>& pts);
std::vector<unsigned> subset_lex_unrank(unsigned v, unsigned k, std::uint64_t rank);

/// In-place advance of a sorted k-subset to its lexicographic successor.
/// Returns false when pts was the last subset.
bool next_subset(unsigned v, std::vector<unsigned>& pts);

} // namespace di
