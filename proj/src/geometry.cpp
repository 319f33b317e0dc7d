#include "di/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "di/errors.hpp"

namespace di {

namespace {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

struct FieldSpec {
    unsigned p;      // characteristic
    unsigned deg;    // extension degree
    unsigned poly;   // irreducible polynomial digits base p (without leading x^deg term)
};

// Reduction polynomials: value encodes the low coefficients of the monic
// irreducible, base p. GF(4): x^2+x+1 -> 1+1*2 = 3 digits (1,1). GF(8):
// x^3+x+1 -> digits (1,1,0). GF(9): x^2+1 over GF(3) -> digits (1,0).
FieldSpec field_spec(unsigned q) {
    switch (q) {
        case 2: return {2, 1, 0};
        case 3: return {3, 1, 0};
        case 5: return {5, 1, 0};
        case 7: return {7, 1, 0};
        case 4: return {2, 2, 0b11};
        case 8: return {2, 3, 0b011};
        case 9: return {3, 2, 1};
        default: throw InvalidInput("unsupported field size q=" + std::to_string(q) +
                                    "; supported: 2,3,4,5,7,8,9");
    }
}

std::vector<unsigned> digits(unsigned x, unsigned p, unsigned deg) {
    std::vector<unsigned> d(deg);
    for (unsigned i = 0; i < deg; ++i) {
        d[i] = x % p;
        x /= p;
    }
    return d;
}

unsigned undigits(const std::vector<unsigned>& d, unsigned p) {
    unsigned x = 0;
    for (std::size_t i = d.size(); i-- > 0;) x = x * p + d[i];
    return x;
}

} // namespace

bool GaloisField::supported(unsigned q) {
    return q == 2 || q == 3 || q == 4 || q == 5 || q == 7 || q == 8 || q == 9;
}

GaloisField::GaloisField(unsigned q) : q_(q) {
    FieldSpec spec = field_spec(q);
    add_.resize(q * q);
    sub_.resize(q * q);
    mul_.resize(q * q);
    inv_.assign(q, 0);

    auto add_digits = [&](unsigned a, unsigned b, bool subtract) {
        auto da = digits(a, spec.p, spec.deg), db = digits(b, spec.p, spec.deg);
        for (unsigned i = 0; i < spec.deg; ++i)
            da[i] = subtract ? (da[i] + spec.p - db[i]) % spec.p : (da[i] + db[i]) % spec.p;
        return undigits(da, spec.p);
    };

    auto mul_poly = [&](unsigned a, unsigned b) {
        auto da = digits(a, spec.p, spec.deg), db = digits(b, spec.p, spec.deg);
        std::vector<unsigned> prod(2 * spec.deg - 1, 0);
        for (unsigned i = 0; i < spec.deg; ++i)
            for (unsigned j = 0; j < spec.deg; ++j)
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % spec.p;
        // reduce modulo the monic irreducible: x^deg = -(low digits)
        auto red = digits(spec.poly, spec.p, spec.deg);
        for (std::size_t i = prod.size(); i-- > spec.deg;) {
            unsigned c = prod[i];
            if (!c) continue;
            prod[i] = 0;
            for (unsigned j = 0; j < spec.deg; ++j)
                prod[i - spec.deg + j] =
                    (prod[i - spec.deg + j] + c * (spec.p - red[j])) % spec.p;
        }
        prod.resize(spec.deg);
        return undigits(prod, spec.p);
    };

    for (unsigned a = 0; a < q; ++a)
        for (unsigned b = 0; b < q; ++b) {
            add_[a * q + b] = add_digits(a, b, false);
            sub_[a * q + b] = add_digits(a, b, true);
            mul_[a * q + b] = mul_poly(a, b);
        }
    for (unsigned a = 1; a < q; ++a)
        for (unsigned b = 1; b < q; ++b)
            if (mul_[a * q + b] == 1) inv_[a] = b;
}

unsigned GaloisField::inv(unsigned a) const {
    if (a == 0) throw InvalidInput("inverse of zero in GF(" + std::to_string(q_) + ")");
    return inv_[a];
}

namespace {

using Vec = std::vector<unsigned>; // coordinate vector over GF(q)

Vec normalize(const GaloisField& gf, Vec v) {
    for (unsigned c : v)
        if (c != 0) {
            unsigned s = gf.inv(c);
            for (unsigned& x : v) x = gf.mul(x, s);
            return v;
        }
    throw InvalidInput("cannot normalize zero vector");
}

/// All projective points of PG(d,q) in lexicographic coordinate order,
/// plus the coordinate -> label map.
std::pair<std::vector<Vec>, std::map<Vec, unsigned>> pg_points(const GaloisField& gf,
                                                               unsigned d) {
    unsigned q = gf.q();
    std::set<Vec> pts;
    Vec v(d + 1, 0);
    // enumerate all q^{d+1} vectors, skip zero, normalize
    std::uint64_t total = 1;
    for (unsigned i = 0; i <= d; ++i) total *= q;
    for (std::uint64_t code = 1; code < total; ++code) {
        std::uint64_t c = code;
        for (unsigned i = 0; i <= d; ++i) {
            v[i] = static_cast<unsigned>(c % q);
            c /= q;
        }
        pts.insert(normalize(gf, v));
    }
    std::vector<Vec> ordered(pts.begin(), pts.end());
    std::map<Vec, unsigned> label;
    for (unsigned i = 0; i < ordered.size(); ++i) label[ordered[i]] = i;
    return {ordered, label};
}

/// Enumerates all e-dimensional projective subspaces as point bitmasks.
std::vector<Block> pg_subspaces(const GaloisField& gf, unsigned d, unsigned e,
                                const Budget& budget) {
    unsigned q = gf.q();
    auto [points, label] = pg_points(gf, d);
    unsigned v = static_cast<unsigned>(points.size());
    checked_subset_count(v, e + 1, budget, "pg_subspaces");

    auto gf_rank = [&](std::vector<Vec> rows) {
        unsigned rank = 0;
        unsigned cols = d + 1;
        for (unsigned col = 0; col < cols && rank < rows.size(); ++col) {
            unsigned pivot = rank;
            while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
            if (pivot == rows.size()) continue;
            std::swap(rows[rank], rows[pivot]);
            unsigned s = gf.inv(rows[rank][col]);
            for (unsigned& x : rows[rank]) x = gf.mul(x, s);
            for (unsigned r = 0; r < rows.size(); ++r) {
                if (r == rank || rows[r][col] == 0) continue;
                unsigned f = rows[r][col];
                for (unsigned c = 0; c < cols; ++c)
                    rows[r][c] = gf.sub(rows[r][c], gf.mul(f, rows[rank][c]));
            }
            ++rank;
        }
        return rank;
    };

    std::set<Bitset> spans;
    std::vector<unsigned> idx(e + 1);
    for (unsigned i = 0; i <= e; ++i) idx[i] = i;
    std::uint64_t ncoeff = 1;
    for (unsigned i = 0; i <= e; ++i) ncoeff *= q;
    do {
        std::vector<Vec> basis;
        for (unsigned i : idx) basis.push_back(points[i]);
        if (gf_rank(basis) != e + 1) continue;
        Bitset span(v);
        for (std::uint64_t code = 1; code < ncoeff; ++code) {
            Vec comb(d + 1, 0);
            std::uint64_t c = code;
            for (unsigned i = 0; i <= e; ++i) {
                unsigned coef = static_cast<unsigned>(c % q);
                c /= q;
                if (!coef) continue;
                for (unsigned j = 0; j <= d; ++j)
                    comb[j] = gf.add(comb[j], gf.mul(coef, basis[i][j]));
            }
            span.set(label.at(normalize(gf, comb)));
        }
        spans.insert(span);
    } while (next_subset(v, idx));

    std::vector<Block> out(spans.begin(), spans.end());
    std::sort(out.begin(), out.end(), [](const Block& a, const Block& b) { return a.lex_less(b); });
    return out;
}

} // namespace

Design projective_design(unsigned d, unsigned e, unsigned q, const Budget& budget) {
    if (e < 1 || e >= d) throw InvalidInput("projective_design requires 1 <= e < d");
    GaloisField gf(q);
    std::vector<Block> blocks = pg_subspaces(gf, d, e, budget);
    unsigned v = static_cast<unsigned>(blocks.front().size());
    unsigned k = static_cast<unsigned>(blocks.front().count());
    return Design(v, k, std::move(blocks),
                  "PG(" + std::to_string(d) + "," + std::to_string(q) + ")/e=" +
                      std::to_string(e));
}

std::vector<Block> lines_of_pg(unsigned d, unsigned q, const Budget& budget) {
    if (d < 2) throw InvalidInput("lines_of_pg requires d >= 2");
    GaloisField gf(q);
    return pg_subspaces(gf, d, 1, budget);
}

Design ag23_design() {
    // lines of AG(2,3); point (x,y) -> x + 3y
    std::set<Bitset> lines;
    for (unsigned x = 0; x < 3; ++x)
        for (unsigned y = 0; y < 3; ++y)
            for (unsigned dx = 0; dx < 3; ++dx)
                for (unsigned dy = 0; dy < 3; ++dy) {
                    if (dx == 0 && dy == 0) continue;
                    Bitset line(9);
                    for (unsigned t = 0; t < 3; ++t)
                        line.set((x + t * dx) % 3 + 3 * ((y + t * dy) % 3));
                    lines.insert(line);
                }
    std::vector<Block> blocks(lines.begin(), lines.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const Block& a, const Block& b) { return a.lex_less(b); });
    return Design(9, 3, std::move(blocks), "AG(2,3)");
}

Design fano_design() {
    std::vector<Block> blocks;
    for (unsigned i = 0; i < 7; ++i)
        blocks.push_back(Bitset::of(7, {i, (i + 1) % 7, (i + 3) % 7}));
    return Design(7, 3, std::move(blocks), "fano");
}

} // namespace di
