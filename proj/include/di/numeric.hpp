#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace di {

using Int = mpz_class;
using Rat = mpq_class;

/// Exact binomial coefficient; zero for k < 0 or k > n.
inline Int binomial(unsigned long n, long k) {
    if (k < 0 || static_cast<unsigned long>(k) > n) return Int(0);
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, static_cast<unsigned long>(k));
    return r;
}

/// Binomial as uint64 when it fits, for loop bounds and ranking.
/// Throws on overflow.
std::uint64_t binomial_u64(unsigned long n, long k);

inline std::string to_string(const Int& x) { return x.get_str(); }
inline std::string to_string(const Rat& x) { return x.get_str(); }

/// Parses an integer or "p/q" rational; canonicalizes.
Rat parse_rational(const std::string& s);

} // namespace di
