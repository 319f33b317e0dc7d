#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "di/design.hpp"
#include "di/exactla.hpp"
#include "di/generators.hpp"
#include "di/numeric.hpp"

namespace di {

// ----- zero-set verification ---------------------------------------------------

struct ZeroSetReport {
    enum class Verdict { exact, missing_zero, extra_zero };

    Verdict verdict = Verdict::exact;
    std::optional<Bitset> counterexample;
    std::string witness; // generator nonvanishing on a block (missing_zero case)
    /// Lexicographic prefix of k-subsets examined before the verdict: the full
    /// count C(v,k) for exact verdicts, counterexample rank + 1 otherwise.
    /// Defined this way so reports are deterministic under parallel scanning.
    std::uint64_t scanned = 0;
    double wall_seconds = 0.0;

    bool exact() const { return verdict == Verdict::exact; }
};

std::string verdict_name(ZeroSetReport::Verdict v);

/// Scans every k-subset C of the point set: blocks must vanish under every
/// generator, non-blocks must be separated by some generator. An exact
/// verdict means Z(<G>) equals the block set, and since G contains G0 the
/// ideal is radical, so <G> is the full vanishing ideal of the design.
ZeroSetReport zero_set_check(const Design& d, const GeneratorSet& g,
                             const Budget& budget = global_budget(), unsigned threads = 0);

// ----- gamma_1 -------------------------------------------------------------------

struct RankEvidence {
    unsigned s = 0;
    std::uint64_t rank = 0; // exact when `exact`, else a certified lower bound
    bool exact = true;
    Int binom;              // C(v,s)
    bool deficient = false; // rank < C(v,s) certified
};

struct Gamma1Result {
    std::optional<unsigned> value; // set when certified exactly
    unsigned lower = 1;            // always certified
    unsigned upper = 0;            // always certified (k at worst)
    std::vector<RankEvidence> evidence;
};

/// Least s with rank(incidence_matrix(d, s)) < C(v,s), scanned over the sound
/// range s <= min(k, v-k); outside it only certified bounds are reported.
Gamma1Result gamma1(const Design& d, const Budget& budget = global_budget());

// ----- gamma_2 -------------------------------------------------------------------

struct LinearizationCertificate {
    unsigned s = 0;
    Bitset non_block;
    /// nonzero coefficients, keyed by the block itself so certificates stay
    /// portable across block orderings
    std::vector<std::pair<Bitset, Rat>> coefficients;
};

/// Searches for a non-block C whose delta^s vector lies in the row span of
/// the blocks' delta^s vectors; such a C forces every degree-<= s polynomial
/// of the ideal to vanish at C, so the ideal has no degree-s generating set
/// and gamma_2 > s. Candidates default to the design's distinguished
/// non-block followed by all non-block k-subsets (budget permitting).
std::optional<LinearizationCertificate> gamma2_lower_linearization(
    const Design& d, unsigned s, const std::vector<Bitset>& candidates = {},
    const Budget& budget = global_budget());

/// Re-verifies a stored linearization certificate by exact arithmetic.
bool verify_linearization(const Design& d, const LinearizationCertificate& cert);

struct Gamma2Upper {
    std::optional<unsigned> value; // max degree of the family when exact
    Family family = Family::custom;
    ZeroSetReport zero_set;
};

/// Certifies gamma_2 <= max_degree(G) when the zero-set check is exact.
Gamma2Upper gamma2_upper(const Design& d, const GeneratorSet& g,
                         const Budget& budget = global_budget(), unsigned threads = 0);

// ----- a-priori bounds ------------------------------------------------------------

struct TheoremBound {
    std::string name;
    std::string applies; // "gamma1_lower" | "gamma1_upper" | "gamma2_upper"
    unsigned value = 0;
    std::string ref; // short formula text
};

std::vector<TheoremBound> theorem_bounds(const Design& d, const DesignParams& params,
                                         const Budget& budget = global_budget());

// ----- coordinate-ring bases -------------------------------------------------------

/// Rank of the |B| x |polys| evaluation matrix (entry: polynomial value at
/// the block's 01 point). Rank |B| = |polys| certifies a coordinate-ring
/// basis since the ring has dimension |B|.
unsigned coset_basis_rank(const Design& d, const std::vector<MultilinearPoly>& polys);

/// Convenience: evaluation matrix itself (blocks x polys).
ExactMatrix evaluation_matrix(const Design& d, const std::vector<MultilinearPoly>& polys);

// ----- certificate -----------------------------------------------------------------

struct GammaCertificate {
    // design identity
    unsigned v = 0, k = 0;
    std::size_t b = 0;
    std::string hash;
    std::string name;

    DesignParams params;
    Gamma1Result g1;

    unsigned gamma2_lower = 0;
    std::string gamma2_lower_source; // "gamma1" | "linearization" | "parent"
    std::optional<LinearizationCertificate> linearization;

    Gamma2Upper upper;

    std::vector<TheoremBound> bounds;
    double wall_ms = 0.0;

    std::optional<unsigned> gamma1_value() const { return g1.value; }
    std::optional<unsigned> gamma2_value() const {
        if (upper.value && *upper.value == gamma2_lower) return gamma2_lower;
        return std::nullopt;
    }
};

struct CertifyOptions {
    /// Family to verify as the gamma_2 upper bound; defaults to an automatic
    /// choice: matching Witt family by canonical hash, else symbibd for
    /// symmetric 2-designs, steiner for lambda = 1, gY otherwise.
    std::optional<Family> family;
    unsigned threads = 0;
    Budget budget = global_budget();
    /// When the design is a registered derived design of a certified parent,
    /// propagate gamma_h(child) <= gamma_h(parent).
    std::optional<unsigned> parent_gamma2;
    std::string parent_name;
};

GeneratorSet select_family(const std::shared_ptr<const Design>& d, Family f,
                           const Budget& budget = global_budget());
Family auto_family(const Design& d, const DesignParams& params);

GammaCertificate certify(const std::shared_ptr<const Design>& d,
                         const CertifyOptions& opts = {});

} // namespace di
