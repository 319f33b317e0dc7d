#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "di/design.hpp"

namespace di {

/// Binary linear code given by independent generator rows over GF(2).
class BinaryCode {
public:
    BinaryCode(unsigned length, std::vector<Bitset> generator_rows);

    unsigned length() const { return n_; }
    unsigned dimension() const { return static_cast<unsigned>(rows_.size()); }
    const std::vector<Bitset>& generator_rows() const { return rows_; }

    /// Enumerates all 2^dimension codewords (budget-checked).
    std::vector<Bitset> codewords(const Budget& budget = global_budget()) const;

    /// weight -> number of codewords of that weight.
    std::map<unsigned, std::size_t> weight_enumerator(
        const Budget& budget = global_budget()) const;

    /// True iff every pair of generator rows (including a row with itself)
    /// has even intersection.
    bool self_orthogonal() const;

private:
    unsigned n_;
    std::vector<Bitset> rows_;
};

/// The extended binary Golay code in systematic [I_12 | B] form, derived from
/// the cyclic [23,12,7] code with generator polynomial
/// x^11+x^10+x^6+x^5+x^4+x^2+1 extended by an overall parity bit. The
/// constructor verifies self-duality and the 1 + 759 z^8 + 2576 z^12 +
/// 759 z^16 + z^24 weight enumerator.
const BinaryCode& golay_code();

/// Permutation group from generating permutations, enumerated by closure.
class PermGroup {
public:
    using Perm = std::vector<std::uint8_t>;

    PermGroup(unsigned degree, std::vector<Perm> generators,
              std::size_t order_cap = 200'000);

    unsigned degree() const { return degree_; }
    const std::vector<Perm>& generators() const { return generators_; }
    const std::vector<Perm>& elements() const { return elements_; }
    std::size_t order() const { return elements_.size(); }

    std::vector<Bitset> set_orbit(const Bitset& seed) const;
    std::size_t ordered_tuple_orbit_size(const std::vector<std::uint8_t>& tuple,
                                         std::size_t cap = 200'000) const;

private:
    unsigned degree_;
    std::vector<Perm> generators_;
    std::vector<Perm> elements_;
};

/// M12 as the closure of the paper's two generating permutations (stated
/// there in 1-indexed cycle notation; shifted to 0-indexing here). Order is
/// asserted to be 95040.
const PermGroup& m12_group();

/// 5-(24,8,1): supports of the 759 weight-8 Golay codewords.
const Design& witt24();
/// 4-(23,7,1): derived from witt24 at point 0.
const Design& witt23();
/// 3-(22,6,1): derived twice.
const Design& witt22();
/// 5-(12,6,1): the M12 orbit of {0,1,2,3,4,8} (the paper's {1,2,3,4,5,9}).
const Design& witt12();
/// 4-(11,5,1): derived from witt12 at point 0.
const Design& witt11();
/// 3-(10,4,1): the AG(2,3)-based construction with its 18 printed 4-sets.
const Design& witt10();

} // namespace di
