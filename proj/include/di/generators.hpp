#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "di/design.hpp"
#include "di/poly.hpp"

namespace di {

enum class Family {
    g0,
    gBJ,
    gY,
    steiner,
    partial,
    symbibd,
    projective,
    witt24,
    witt23,
    witt22,
    m12orbit,
    octagon,
    zonal,
    custom,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// One generator: an explicit multilinear polynomial, or the raw quadratic
/// marker x_i^2 - x_i of G0, which the multilinear term map cannot hold
/// (it would collapse to zero). The marker evaluates to zero on every
/// 01 point but contributes the gradient +/- e_i that drives the Jacobian
/// rank argument.
class Generator {
public:
    static Generator poly(MultilinearPoly p, std::string desc = "");
    static Generator square_marker(unsigned v, unsigned i);

    bool is_marker() const { return marker_var_ >= 0; }
    unsigned marker_var() const { return static_cast<unsigned>(marker_var_); }
    const MultilinearPoly& polynomial() const; // throws for markers
    unsigned v() const { return v_; }

    unsigned degree() const;
    Rat eval(const Bitset& c) const;
    /// d(g)/d(x_h) evaluated at the 01 point of C.
    Rat partial_at(unsigned h, const Bitset& c) const;

    const std::string& description() const { return desc_; }

private:
    Generator(unsigned v, int marker_var, MultilinearPoly p, std::string desc)
        : v_(v), marker_var_(marker_var), poly_(std::move(p)), desc_(std::move(desc)) {}

    unsigned v_;
    int marker_var_; // -1 for ordinary polynomials
    MultilinearPoly poly_;
    std::string desc_;
};

/// A generator whose value at C was found to be nonzero.
struct NonvanishingWitness {
    std::string generator;
    Rat value;
};

/// A generating-set candidate for the ideal of a design: G0 plus one of the
/// structured families. Structured families evaluate through intersection
/// counts instead of expanded term lists, so the explicit polynomial list is
/// materialized lazily and only within a size budget; the witness path never
/// needs it.
class GeneratorSet {
public:
    Family family() const { return family_; }
    unsigned v() const { return v_; }
    unsigned k() const { return k_; }
    unsigned max_degree() const { return max_degree_; }
    bool includes_g0() const { return includes_g0_; }
    const std::shared_ptr<const Design>& design() const { return design_; }

    /// Searches the whole set for a generator not vanishing at C; nullopt
    /// means every generator vanishes. Deterministic scan order. This is the
    /// semantic ground truth the zero-set checker consumes; structured
    /// families implement it by exact closed-form evaluation of each member.
    std::optional<NonvanishingWitness> nonvanishing_witness(const Bitset& c) const;

    /// Number of generators beyond G0.
    std::size_t family_size() const;

    /// Explicit generator list (G0 first). Materialized on first use; throws
    /// BudgetExceeded when the family is too large to expand term-wise.
    const std::vector<Generator>& generators() const;

    // ----- constructors ------------------------------------------------------
    friend GeneratorSet trivial_generators(unsigned v, unsigned k);
    friend GeneratorSet gY_generators(const std::shared_ptr<const Design>& d,
                                      const Budget& budget);
    friend GeneratorSet steiner_generators(const std::shared_ptr<const Design>& d, unsigned t,
                                           const Budget& budget);
    friend GeneratorSet partial_design_generators(const std::shared_ptr<const Design>& d,
                                                  unsigned t, const Budget& budget);
    friend GeneratorSet symbibd_generators(const std::shared_ptr<const Design>& d);
    friend GeneratorSet projective_generators(unsigned d, unsigned e, unsigned q,
                                              const Budget& budget);
    friend GeneratorSet witt24_generators();
    friend GeneratorSet witt23_generators();
    friend GeneratorSet witt22_generators();
    friend GeneratorSet m12_orbit_generators();
    friend GeneratorSet octagon_generators(const std::shared_ptr<const Design>& d,
                                           const std::vector<struct OctagonSpec>& specs);
    friend GeneratorSet custom_generators(unsigned v, unsigned k,
                                          std::vector<MultilinearPoly> polys, bool add_g0,
                                          Family tag,
                                          const std::shared_ptr<const Design>& design);

private:
    GeneratorSet() = default;

    void build_g0_into(std::vector<Generator>& out) const;
    std::vector<Generator> materialize() const;
    std::optional<NonvanishingWitness> generic_witness(const Bitset& c) const;

    Family family_ = Family::custom;
    unsigned v_ = 0;
    unsigned k_ = 0;
    unsigned max_degree_ = 2;
    bool includes_g0_ = true;
    std::shared_ptr<const Design> design_;

    // family parameters
    unsigned t_ = 0;                                  // steiner / partial
    Int lambda_;                                      // symbibd
    std::vector<Block> lines_;                        // projective
    unsigned q_ = 0;                                  // projective
    std::vector<std::vector<std::size_t>> t_blocks_;  // witt23 / steiner: blocks per t-set
    std::vector<std::vector<std::pair<std::uint16_t, std::int8_t>>> compact_; // m12orbit
    std::vector<MultilinearPoly> explicit_family_;    // octagon / custom / zonal
    mutable std::vector<Generator> cache_;
    mutable bool cached_ = false;
    std::size_t explicit_budget_ = 200'000; // max family size to expand term-wise
};

/// The v+1 generators of the trivial ideal: x_0 + ... + x_{v-1} - k and the
/// square markers x_i^2 - x_i.
GeneratorSet trivial_generators(unsigned v, unsigned k);

/// G0 plus one g_Y = x^Y (x^{J,1} - 1) per (k-1)-subset Y of the points,
/// where J = { j : Y + j is a block }; certifies gamma_2 <= k for any
/// k-uniform hypergraph.
GeneratorSet gY_generators(const std::shared_ptr<const Design>& d,
                           const Budget& budget = global_budget());

/// G0 plus g_{B,T} = x^{B,t} - C(k,t) x^T over blocks B and t-subsets T of B;
/// requires a t-(v,k,1) design.
GeneratorSet steiner_generators(const std::shared_ptr<const Design>& d, unsigned t,
                                const Budget& budget = global_budget());

/// The Steiner family extended with x^T for every uncovered t-set; accepts
/// any partial t-(v,k,1) design.
GeneratorSet partial_design_generators(const std::shared_ptr<const Design>& d, unsigned t,
                                       const Budget& budget = global_budget());

/// G0 plus f_{i,j} = (k-lambda) x_i x_j - sum_{i,j in B} x^{B,1} + lambda^2
/// over point pairs; requires a non-trivial symmetric 2-design.
GeneratorSet symbibd_generators(const std::shared_ptr<const Design>& d);

/// G0 plus g_{L,J} = x^{L,2} - C(q+1,2) x^J over all lines L of PG(d,q) and
/// 2-subsets J of L, bound to the points/e-subspaces design.
GeneratorSet projective_generators(unsigned d, unsigned e, unsigned q,
                                   const Budget& budget = global_budget());

/// G0 plus f_{B,i,j} = (x_i - x_j)(c_B.x - 2)(c_B.x - 4) over blocks and
/// point pairs inside them.
GeneratorSet witt24_generators();

/// G0 plus h_{i,j,k} = 3 + 12 x_i x_j x_k - 3(x_i x_j + x_i x_k + x_j x_k)
/// - sum over the five blocks through {i,j,k} of x^{B \ {i,j,k}, 2}.
GeneratorSet witt23_generators();

/// G0 plus h_{i,j,B} = (x_i - x_j)(x_r + x_s + x_t + x_u - 1) over blocks
/// B = {i,j,r,s,t,u} and pairs i < j in B.
GeneratorSet witt22_generators();

/// G0 plus the M12 orbit of the paper's degree-3 polynomial F, deduplicated
/// modulo global sign.
GeneratorSet m12_orbit_generators();

/// Oriented disjoint block pair of the 3-(10,4,1) design: for each point of
/// block1 the two blocks meeting block1 only there split block2 into two
/// pairs, and orientation bit i picks the pair adopted as that point's
/// octagon neighbours.
struct OctagonSpec {
    std::size_t block1 = 0;
    std::size_t block2 = 0;
    unsigned orientation = 0; // 4 bits, one per point of block1 in ascending order
};

/// Builds the alternating-octagon quadratic for each spec (throwing if the
/// blocks are not disjoint or the orientation does not close an octagon) and
/// returns them with G0.
GeneratorSet octagon_generators(const std::shared_ptr<const Design>& d,
                                const std::vector<OctagonSpec>& specs);

/// All (pair, orientation) choices whose octagon closes and whose quadratic
/// vanishes on every block of the design.
std::vector<OctagonSpec> octagon_search(const Design& d);
MultilinearPoly octagon_polynomial(const Design& d, const OctagonSpec& spec);

/// Wraps explicit polynomials (optionally adding G0) under the given tag.
GeneratorSet custom_generators(unsigned v, unsigned k, std::vector<MultilinearPoly> polys,
                               bool add_g0 = true, Family tag = Family::custom,
                               const std::shared_ptr<const Design>& design = nullptr);

/// Exact column rank of the v x |G| Jacobian at the 01 point of C.
unsigned jacobian_rank(const GeneratorSet& g, const Bitset& c);

// Generator-set text format: "family <tag>", "v <n>", "k <n>" headers, then
// "marker i" lines and "poly" sections with one "coeff: i1 i2 ..." term per
// line.
std::string generator_set_to_text(const GeneratorSet& g);
GeneratorSet parse_generator_set(const std::string& text);
GeneratorSet read_generator_set(const std::string& path);
void write_generator_set(const GeneratorSet& g, const std::string& path);

} // namespace di
