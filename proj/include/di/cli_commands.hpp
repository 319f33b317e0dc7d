#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "di/certificate.hpp"
#include "di/design.hpp"
#include "di/gamma.hpp"

namespace di {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCounterexample = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitBadInput = 4;

/// Builds a design by family name: witt24, witt23, witt22, witt12, witt11,
/// witt10, fano, ag, sts<v> (e.g. sts15), complete (needs v,k), pg (needs
/// d,e,q).
Design construct_family(const std::string& family, std::optional<unsigned> v,
                        std::optional<unsigned> k, std::optional<unsigned> d,
                        std::optional<unsigned> e, std::optional<unsigned> q);

/// Resolves --design: a family name or a path to a design file.
std::shared_ptr<const Design> resolve_design(const std::string& source);

struct TableRow {
    std::string key;       // row selector for --row
    std::string params;    // "5-(24,8,1)"
    unsigned gamma1;       // expected
    unsigned gamma2;       // expected
};

const std::vector<TableRow>& witt_table_rows();

struct TableRowResult {
    TableRow expected;
    unsigned gamma1 = 0;
    unsigned gamma2 = 0;
    bool match = false;
    GammaCertificate certificate;
};

/// Builds one table row's design, certifies it with its published family,
/// and compares against the expected (gamma1, gamma2).
TableRowResult reproduce_table_row(const std::string& key, unsigned threads,
                                   const Budget& budget = global_budget());

/// All eight rows in table order.
std::vector<TableRowResult> reproduce_table(unsigned threads,
                                            const Budget& budget = global_budget());

} // namespace di
