#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "di/bitset.hpp"
#include "di/numeric.hpp"

namespace di {

/// Square-free monomial: sorted distinct variable indices. The empty list is
/// the constant monomial.
using Mono = std::vector<std::uint16_t>;

struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

/// Multilinear polynomial over the rationals: a term map from square-free
/// monomials to nonzero coefficients. Products reduce squares through
/// x_i^2 = x_i, which is valid on the 01 variety these polynomials are
/// evaluated on.
class MultilinearPoly {
public:
    explicit MultilinearPoly(unsigned v) : v_(v) {}

    static MultilinearPoly constant(unsigned v, Rat c);
    static MultilinearPoly variable(unsigned v, unsigned i);
    /// x^C: the product of the variables in C.
    static MultilinearPoly monomial(unsigned v, const Bitset& c, Rat coeff = Rat(1));

    unsigned v() const { return v_; }
    const std::map<Mono, Rat, MonoLess>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Total degree; 0 for constants and the zero polynomial.
    unsigned degree() const;

    void add_term(const Mono& m, const Rat& c);
    Rat coefficient(const Mono& m) const;

    MultilinearPoly operator+(const MultilinearPoly& o) const;
    MultilinearPoly operator-(const MultilinearPoly& o) const;
    MultilinearPoly operator*(const MultilinearPoly& o) const;
    MultilinearPoly scaled(const Rat& c) const;

    /// Value at the 01 point of C: sum of coefficients of monomials inside C.
    Rat eval(const Bitset& c) const;

    /// Formal partial derivative on the square-free representation.
    MultilinearPoly partial_derivative(unsigned i) const;

    std::string to_string() const;
    bool operator==(const MultilinearPoly& o) const {
        return v_ == o.v_ && terms_ == o.terms_;
    }

private:
    unsigned v_;
    std::map<Mono, Rat, MonoLess> terms_;
};

/// x^{C,j}: the elementary symmetric polynomial of degree j in the variables
/// of C.
MultilinearPoly elementary_symmetric(unsigned v, const Bitset& c, unsigned j);

/// Zonal polynomial: the product of (chi_c . x - i) over the listed
/// intersection sizes, expanded to multilinear normal form.
MultilinearPoly zonal(unsigned v, const Bitset& c, const std::vector<long>& sizes);

/// g_{B,J} = x^{B,|J|} - C(k,|J|) x^J. Nonzero at a subset C exactly when
/// |J| <= |C intersect B| < k.
MultilinearPoly g_bj(unsigned v, const Bitset& b, const Bitset& j, unsigned k);

/// chi_c . x - constant (the linear zonal factor).
MultilinearPoly linear_form(unsigned v, const Bitset& c, const Rat& constant);

} // namespace di
