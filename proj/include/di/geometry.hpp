#pragma once

#include <cstdint>
#include <vector>

#include "di/design.hpp"

namespace di {

/// Finite field GF(q) for q in {2,3,4,5,7,8,9}. Prime fields use modular
/// arithmetic; GF(4), GF(8), GF(9) use fixed irreducible polynomials
/// (x^2+x+1, x^3+x+1, x^2+1 over GF(3)). Elements are indices 0..q-1 in the
/// polynomial-coefficient encoding (base-p digit vector).
class GaloisField {
public:
    explicit GaloisField(unsigned q);

    unsigned q() const { return q_; }
    unsigned add(unsigned a, unsigned b) const { return add_[a * q_ + b]; }
    unsigned sub(unsigned a, unsigned b) const { return sub_[a * q_ + b]; }
    unsigned mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }
    unsigned inv(unsigned a) const;

    static bool supported(unsigned q);

private:
    unsigned q_;
    std::vector<unsigned> add_, sub_, mul_, inv_;
};

/// Points and e-dimensional subspaces of PG(d,q). Points are labeled by the
/// lexicographic order of their normalized homogeneous coordinates (first
/// nonzero coordinate scaled to 1), which keeps golden tests stable.
Design projective_design(unsigned d, unsigned e, unsigned q,
                         const Budget& budget = global_budget());

/// All lines of PG(d,q) over the same point labeling, each of size q+1.
std::vector<Block> lines_of_pg(unsigned d, unsigned q,
                               const Budget& budget = global_budget());

/// The 2-(9,3,1) design of points and lines of AG(2,3); point (x,y) gets
/// label x + 3y.
Design ag23_design();

/// The paper's cyclic Fano plane on Z_7: blocks {i, i+1, i+3} mod 7.
Design fano_design();

} // namespace di
