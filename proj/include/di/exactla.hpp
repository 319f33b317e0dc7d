#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "di/design.hpp"
#include "di/numeric.hpp"

namespace di {

/// Matrix of exact rationals stored as sorted sparse rows. All design-derived
/// matrices are 0/1, so exact elimination runs fraction-free over integers;
/// rationals appear only in solution vectors.
class ExactMatrix {
public:
    using SparseRow = std::vector<std::pair<unsigned, Rat>>; // sorted by column

    ExactMatrix(std::size_t rows, std::size_t cols);
    static ExactMatrix from_dense(const std::vector<std::vector<Rat>>& entries);
    static ExactMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    void set(std::size_t r, std::size_t c, Rat value);
    Rat get(std::size_t r, std::size_t c) const;
    const SparseRow& row(std::size_t r) const { return rows_[r]; }
    void set_row(std::size_t r, SparseRow row);

    ExactMatrix transpose() const;
    ExactMatrix multiply(const ExactMatrix& other) const;
    bool is_zero() const;

    /// Exact rank over the rationals. A modular elimination (mod 2^61 - 1)
    /// runs first; its rank lower-bounds the true rank and certifies it when
    /// it reaches min(rows, cols). Otherwise a fraction-free Bareiss pass
    /// produces the exact value.
    unsigned rank() const;

    /// Modular lower bound alone (never reports itself exact unless it
    /// reaches min(rows, cols)).
    struct RankBound {
        unsigned value;
        bool exact;
    };
    RankBound rank_bound() const;

    void write_matrix_market(const std::string& path) const;

private:
    std::size_t cols_;
    std::vector<SparseRow> rows_;
};

/// Precomputed row-echelon factorization for repeated row-span membership
/// queries against the same matrix.
class RowSpanSolver {
public:
    explicit RowSpanSolver(const ExactMatrix& m);

    /// Exact coefficients c with c * M = w, or nullopt if w is outside the
    /// row span. After a failed solve, infeasibility_witness() derives y with
    /// M y = 0 and w . y != 0 from the stored residual (computed on demand;
    /// the common scan path only pays for the reduction).
    std::optional<std::vector<Rat>> solve(const std::vector<Rat>& w);
    std::vector<Rat> infeasibility_witness() const;

    unsigned rank() const { return static_cast<unsigned>(echelon_.size()); }

private:
    std::size_t cols_;
    std::size_t nrows_;
    std::vector<std::vector<Rat>> echelon_;  // reduced rows
    std::vector<std::vector<Rat>> combos_;   // expressing each echelon row in original rows
    std::vector<unsigned> pivots_;
    std::vector<Rat> last_residual_;
};

std::optional<std::vector<Rat>> in_row_span(const ExactMatrix& m, const std::vector<Rat>& w);

/// Incidence of s-subsets versus blocks, transposed relative to the paper's
/// A^(s): rows are blocks, columns are all C(v,s) subsets of size exactly s
/// in lexicographic order; entry 1 iff the subset lies inside the block.
ExactMatrix incidence_matrix(const Design& d, unsigned s,
                             const Budget& budget = global_budget());

/// delta^s coordinates: subsets of size <= s, sizes ascending, lexicographic
/// within each size. This column order is fixed so certificates are portable.
std::uint64_t delta_length(unsigned v, unsigned s);
std::uint64_t delta_index(unsigned v, const std::vector<unsigned>& subset, unsigned s);
std::vector<Rat> delta_vector(const Bitset& c, unsigned s);

/// True iff the product of (M - r I) over the given roots is the zero matrix.
bool annihilates_polynomial(const ExactMatrix& m, const std::vector<long>& roots);

/// Exact nullspace basis of M (column vectors x with M x = 0).
std::vector<std::vector<Rat>> nullspace(const ExactMatrix& m);

} // namespace di
