#include "di/exactla.hpp"

#include <algorithm>
#include <fstream>

#include "di/errors.hpp"

namespace di {

namespace {

// Fixed 61-bit Mersenne prime for the modular pre-pass. A fixed modulus keeps
// certificate evidence reproducible across runs; the soundness contract never
// relies on the modular value alone except when it reaches min(rows, cols).
constexpr std::uint64_t kModulus = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kModulus);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, b);
        b = mulmod(b, b);
        e >>= 1;
    }
    return r;
}

std::uint64_t rat_mod(const Rat& x) {
    Int num = x.get_num(), den = x.get_den();
    Int p(static_cast<unsigned long>(kModulus));
    Int nm = num % p;
    if (nm < 0) nm += p;
    Int dm = den % p;
    if (dm == 0) throw InvalidInput("denominator divisible by modular prime");
    std::uint64_t n = nm.get_ui();
    std::uint64_t d = dm.get_ui();
    return mulmod(n, powmod(d, kModulus - 2));
}

} // namespace

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

ExactMatrix ExactMatrix::from_dense(const std::vector<std::vector<Rat>>& entries) {
    std::size_t r = entries.size();
    std::size_t c = r ? entries[0].size() : 0;
    ExactMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (entries[i].size() != c) throw InvalidInput("ragged matrix rows");
        SparseRow row;
        for (std::size_t j = 0; j < c; ++j)
            if (entries[i][j] != 0) row.emplace_back(static_cast<unsigned>(j), entries[i][j]);
        m.rows_[i] = std::move(row);
    }
    return m;
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.rows_[i].emplace_back(static_cast<unsigned>(i), Rat(1));
    return m;
}

void ExactMatrix::set(std::size_t r, std::size_t c, Rat value) {
    SparseRow& row = rows_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, std::size_t col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
        if (value == 0)
            row.erase(it);
        else
            it->second = std::move(value);
    } else if (value != 0) {
        row.insert(it, {static_cast<unsigned>(c), std::move(value)});
    }
}

Rat ExactMatrix::get(std::size_t r, std::size_t c) const {
    const SparseRow& row = rows_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, std::size_t col) { return e.first < col; });
    if (it != row.end() && it->first == c) return it->second;
    return Rat(0);
}

void ExactMatrix::set_row(std::size_t r, SparseRow row) {
    for (std::size_t i = 0; i + 1 < row.size(); ++i)
        if (row[i].first >= row[i + 1].first) throw InvalidInput("sparse row not sorted");
    rows_.at(r) = std::move(row);
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(cols_, rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, val] : rows_[r])
            t.rows_[c].emplace_back(static_cast<unsigned>(r), val);
    return t;
}

ExactMatrix ExactMatrix::multiply(const ExactMatrix& other) const {
    if (cols_ != other.rows()) throw InvalidInput("matrix dimension mismatch in multiply");
    ExactMatrix out(rows_.size(), other.cols_);
    std::vector<Rat> acc(other.cols_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        for (Rat& x : acc) x = 0;
        for (const auto& [mid, val] : rows_[r])
            for (const auto& [c, oval] : other.rows_[mid]) acc[c] += val * oval;
        SparseRow row;
        for (std::size_t c = 0; c < other.cols_; ++c)
            if (acc[c] != 0) row.emplace_back(static_cast<unsigned>(c), acc[c]);
        out.rows_[r] = std::move(row);
    }
    return out;
}

bool ExactMatrix::is_zero() const {
    for (const SparseRow& row : rows_)
        if (!row.empty()) return false;
    return true;
}

ExactMatrix::RankBound ExactMatrix::rank_bound() const {
    std::size_t nr = rows_.size(), nc = cols_;
    std::vector<std::vector<std::uint64_t>> m(nr, std::vector<std::uint64_t>(nc, 0));
    for (std::size_t r = 0; r < nr; ++r)
        for (const auto& [c, val] : rows_[r]) m[r][c] = rat_mod(val);

    unsigned rank = 0;
    std::size_t lead_row = 0;
    for (std::size_t col = 0; col < nc && lead_row < nr; ++col) {
        std::size_t pivot = lead_row;
        while (pivot < nr && m[pivot][col] == 0) ++pivot;
        if (pivot == nr) continue;
        std::swap(m[lead_row], m[pivot]);
        std::uint64_t inv = powmod(m[lead_row][col], kModulus - 2);
        for (std::size_t c = col; c < nc; ++c) m[lead_row][c] = mulmod(m[lead_row][c], inv);
        for (std::size_t r = lead_row + 1; r < nr; ++r) {
            std::uint64_t f = m[r][col];
            if (!f) continue;
            for (std::size_t c = col; c < nc; ++c) {
                std::uint64_t sub = mulmod(f, m[lead_row][c]);
                m[r][c] = (m[r][c] >= sub) ? m[r][c] - sub : m[r][c] + kModulus - sub;
            }
        }
        ++lead_row;
        ++rank;
    }
    bool exact = (rank == std::min(nr, nc));
    return {rank, exact};
}

unsigned ExactMatrix::rank() const {
    RankBound bound = rank_bound();
    if (bound.exact) return bound.value;

    // Fraction-free Bareiss over integers (rows scaled to clear denominators).
    std::size_t nr = rows_.size(), nc = cols_;
    std::vector<std::vector<Int>> m(nr, std::vector<Int>(nc, 0));
    for (std::size_t r = 0; r < nr; ++r) {
        Int lcm(1);
        for (const auto& [c, val] : rows_[r]) lcm = lcm * val.get_den() / gcd(lcm, val.get_den());
        for (const auto& [c, val] : rows_[r]) m[r][c] = val.get_num() * (lcm / val.get_den());
    }

    unsigned rank = 0;
    Int prev_pivot(1);
    std::size_t lead_row = 0;
    for (std::size_t col = 0; col < nc && lead_row < nr; ++col) {
        // pivot selection: first nonzero, preferring the sparsest row
        std::size_t pivot = nr;
        std::size_t best_nnz = SIZE_MAX;
        for (std::size_t r = lead_row; r < nr; ++r) {
            if (m[r][col] == 0) continue;
            std::size_t nnz = 0;
            for (std::size_t c = col; c < nc; ++c)
                if (m[r][c] != 0) ++nnz;
            if (nnz < best_nnz) {
                best_nnz = nnz;
                pivot = r;
            }
        }
        if (pivot == nr) continue;
        std::swap(m[lead_row], m[pivot]);
        for (std::size_t r = lead_row + 1; r < nr; ++r) {
            for (std::size_t c = col + 1; c < nc; ++c)
                m[r][c] = (m[lead_row][col] * m[r][c] - m[r][col] * m[lead_row][c]) / prev_pivot;
            m[r][col] = 0;
        }
        prev_pivot = m[lead_row][col];
        ++lead_row;
        ++rank;
    }
    return rank;
}

void ExactMatrix::write_matrix_market(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write matrix file " + path);
    std::size_t nnz = 0;
    for (const SparseRow& row : rows_) nnz += row.size();
    out << rows_.size() << ' ' << cols_ << ' ' << nnz << '\n';
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, val] : rows_[r])
            out << r << ' ' << c << ' ' << val.get_str() << '\n';
}

// ----- row-span membership --------------------------------------------------

RowSpanSolver::RowSpanSolver(const ExactMatrix& m) : cols_(m.cols()), nrows_(m.rows()) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::vector<Rat> row(cols_, Rat(0));
        for (const auto& [c, val] : m.row(r)) row[c] = val;
        std::vector<Rat> combo(nrows_, Rat(0));
        combo[r] = 1;
        // reduce against existing echelon rows
        for (std::size_t e = 0; e < echelon_.size(); ++e) {
            unsigned p = pivots_[e];
            if (row[p] == 0) continue;
            Rat f = row[p] / echelon_[e][p];
            for (std::size_t c = 0; c < cols_; ++c) row[c] -= f * echelon_[e][c];
            for (std::size_t c = 0; c < nrows_; ++c) combo[c] -= f * combos_[e][c];
        }
        unsigned pivot = static_cast<unsigned>(cols_);
        for (std::size_t c = 0; c < cols_; ++c)
            if (row[c] != 0) {
                pivot = static_cast<unsigned>(c);
                break;
            }
        if (pivot == cols_) continue; // dependent row
        echelon_.push_back(std::move(row));
        combos_.push_back(std::move(combo));
        pivots_.push_back(pivot);
    }
}

std::optional<std::vector<Rat>> RowSpanSolver::solve(const std::vector<Rat>& w) {
    if (w.size() != cols_) throw InvalidInput("row-span query length mismatch");
    std::vector<Rat> residual = w;
    std::vector<Rat> coeffs(nrows_, Rat(0));
    for (std::size_t e = 0; e < echelon_.size(); ++e) {
        unsigned p = pivots_[e];
        if (residual[p] == 0) continue;
        Rat f = residual[p] / echelon_[e][p];
        for (std::size_t c = 0; c < cols_; ++c) residual[c] -= f * echelon_[e][c];
        for (std::size_t c = 0; c < nrows_; ++c) coeffs[c] += f * combos_[e][c];
    }
    bool zero = true;
    for (const Rat& x : residual)
        if (x != 0) {
            zero = false;
            break;
        }
    if (zero) return coeffs;
    last_residual_ = std::move(residual);
    return std::nullopt;
}

std::vector<Rat> RowSpanSolver::infeasibility_witness() const {
    if (last_residual_.empty()) throw InvalidInput("no failed solve to witness");
    const std::vector<Rat>& residual = last_residual_;
    // Build y with (row space) . y = 0 and w . y = |residual|^2 != 0: extend
    // the fully reduced residual along the kernel directions of the echelon.
    std::vector<bool> is_pivot(cols_, false);
    for (unsigned p : pivots_) is_pivot[p] = true;
    std::vector<Rat> witness(cols_, Rat(0));
    for (std::size_t j = 0; j < cols_; ++j) {
        if (is_pivot[j] || residual[j] == 0) continue;
        // kernel vector for free column j: e_j minus pivot corrections
        witness[j] += residual[j];
        std::vector<Rat> col_corr(echelon_.size(), Rat(0));
        // back-substitute: solve E y = 0 restricted to pivot coordinates
        for (std::size_t e = echelon_.size(); e-- > 0;) {
            Rat acc = echelon_[e][j];
            for (std::size_t e2 = e + 1; e2 < echelon_.size(); ++e2)
                acc += echelon_[e][pivots_[e2]] * col_corr[e2];
            col_corr[e] = -acc / echelon_[e][pivots_[e]];
        }
        for (std::size_t e = 0; e < echelon_.size(); ++e)
            witness[pivots_[e]] += residual[j] * col_corr[e];
    }
    return witness;
}

std::optional<std::vector<Rat>> in_row_span(const ExactMatrix& m, const std::vector<Rat>& w) {
    RowSpanSolver solver(m);
    return solver.solve(w);
}

// ----- incidence / delta coordinates ----------------------------------------

ExactMatrix incidence_matrix(const Design& d, unsigned s, const Budget& budget) {
    if (s > d.k()) throw InvalidInput("incidence_matrix requires s <= k");
    std::uint64_t ncols = checked_subset_count(d.v(), s, budget, "incidence_matrix");
    ExactMatrix m(d.block_count(), ncols);
    for (std::size_t r = 0; r < d.block_count(); ++r) {
        std::vector<unsigned> pts = d.blocks()[r].points();
        ExactMatrix::SparseRow row;
        std::vector<unsigned> idx(s);
        for (unsigned i = 0; i < s; ++i) idx[i] = i;
        if (s == 0) {
            row.emplace_back(0u, Rat(1));
        } else if (s <= pts.size()) {
            do {
                std::vector<unsigned> subset(s);
                for (unsigned i = 0; i < s; ++i) subset[i] = pts[idx[i]];
                row.emplace_back(static_cast<unsigned>(subset_lex_rank(d.v(), subset)), Rat(1));
            } while (next_subset(static_cast<unsigned>(pts.size()), idx));
        }
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        m.set_row(r, std::move(row));
    }
    return m;
}

std::uint64_t delta_length(unsigned v, unsigned s) {
    std::uint64_t len = 0;
    for (unsigned i = 0; i <= s; ++i) len += binomial_u64(v, i);
    return len;
}

std::uint64_t delta_index(unsigned v, const std::vector<unsigned>& subset, unsigned s) {
    if (subset.size() > s) throw InvalidInput("delta_index: subset larger than s");
    std::uint64_t offset = 0;
    for (unsigned i = 0; i < subset.size(); ++i) offset += binomial_u64(v, i);
    return offset + subset_lex_rank(v, subset);
}

std::vector<Rat> delta_vector(const Bitset& c, unsigned s) {
    unsigned v = static_cast<unsigned>(c.size());
    std::vector<Rat> delta(delta_length(v, s), Rat(0));
    std::vector<unsigned> pts = c.points();
    std::uint64_t offset = 0;
    for (unsigned size = 0; size <= s; ++size) {
        if (size == 0) {
            delta[0] = 1;
        } else if (size <= pts.size()) {
            std::vector<unsigned> idx(size);
            for (unsigned i = 0; i < size; ++i) idx[i] = i;
            do {
                std::vector<unsigned> subset(size);
                for (unsigned i = 0; i < size; ++i) subset[i] = pts[idx[i]];
                delta[offset + subset_lex_rank(v, subset)] = 1;
            } while (next_subset(static_cast<unsigned>(pts.size()), idx));
        }
        offset += binomial_u64(v, size);
    }
    return delta;
}

bool annihilates_polynomial(const ExactMatrix& m, const std::vector<long>& roots) {
    if (m.rows() != m.cols()) throw InvalidInput("annihilates_polynomial requires a square matrix");
    ExactMatrix acc = ExactMatrix::identity(m.rows());
    for (long r : roots) {
        ExactMatrix shifted = m;
        for (std::size_t i = 0; i < m.rows(); ++i)
            shifted.set(i, i, shifted.get(i, i) - Rat(r));
        acc = acc.multiply(shifted);
    }
    return acc.is_zero();
}

std::vector<std::vector<Rat>> nullspace(const ExactMatrix& m) {
    // Gauss-Jordan on a dense rational copy.
    std::size_t nr = m.rows(), nc = m.cols();
    std::vector<std::vector<Rat>> a(nr, std::vector<Rat>(nc, Rat(0)));
    for (std::size_t r = 0; r < nr; ++r)
        for (const auto& [c, val] : m.row(r)) a[r][c] = val;

    std::vector<long> pivot_of_col(nc, -1);
    std::size_t lead_row = 0;
    for (std::size_t col = 0; col < nc && lead_row < nr; ++col) {
        std::size_t pivot = lead_row;
        while (pivot < nr && a[pivot][col] == 0) ++pivot;
        if (pivot == nr) continue;
        std::swap(a[lead_row], a[pivot]);
        Rat inv = Rat(1) / a[lead_row][col];
        for (std::size_t c = col; c < nc; ++c) a[lead_row][c] *= inv;
        for (std::size_t r = 0; r < nr; ++r) {
            if (r == lead_row || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (std::size_t c = col; c < nc; ++c) a[r][c] -= f * a[lead_row][c];
        }
        pivot_of_col[col] = static_cast<long>(lead_row);
        ++lead_row;
    }

    std::vector<std::vector<Rat>> basis;
    for (std::size_t j = 0; j < nc; ++j) {
        if (pivot_of_col[j] >= 0) continue;
        std::vector<Rat> x(nc, Rat(0));
        x[j] = 1;
        for (std::size_t c = 0; c < nc; ++c)
            if (pivot_of_col[c] >= 0) x[c] = -a[static_cast<std::size_t>(pivot_of_col[c])][j];
        basis.push_back(std::move(x));
    }
    return basis;
}

} // namespace di
