#include "di/cli_commands.hpp"

#include <fstream>

#include "di/errors.hpp"
#include "di/geometry.hpp"
#include "di/sts.hpp"
#include "di/witt.hpp"

namespace di {

Design construct_family(const std::string& family, std::optional<unsigned> v,
                        std::optional<unsigned> k, std::optional<unsigned> d,
                        std::optional<unsigned> e, std::optional<unsigned> q) {
    if (family == "witt24") return witt24();
    if (family == "witt23") return witt23();
    if (family == "witt22") return witt22();
    if (family == "witt12") return witt12();
    if (family == "witt11") return witt11();
    if (family == "witt10") return witt10();
    if (family == "fano") return fano_design();
    if (family == "ag") return ag23_design();
    if (family == "pg") {
        if (!d || !q) throw InvalidInput("pg family needs --d and --q (and optionally --e)");
        return projective_design(*d, e.value_or(1), *q);
    }
    if (family == "sts") {
        if (!v) throw InvalidInput("sts family needs --v");
        return sts(*v);
    }
    if (family.rfind("sts", 0) == 0 && family.size() > 3)
        return sts(static_cast<unsigned>(std::stoul(family.substr(3))));
    if (family == "complete") {
        if (!v || !k) throw InvalidInput("complete family needs --v and --k");
        return complete_design(*v, *k);
    }
    throw InvalidInput("unknown family '" + family +
                       "' (families: witt24 witt23 witt22 witt12 witt11 witt10 fano pg ag "
                       "sts<v> complete)");
}

std::shared_ptr<const Design> resolve_design(const std::string& source) {
    std::ifstream probe(source);
    if (probe.good()) return std::make_shared<const Design>(read_design(source));
    return std::make_shared<const Design>(
        construct_family(source, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                         std::nullopt));
}

const std::vector<TableRow>& witt_table_rows() {
    static const std::vector<TableRow> rows = {
        {"witt24", "5-(24,8,1)", 3, 3}, {"witt23", "4-(23,7,1)", 3, 3},
        {"witt22", "3-(22,6,1)", 2, 2}, {"pg21", "2-(21,5,1)", 2, 2},
        {"witt12", "5-(12,6,1)", 3, 3}, {"witt11", "4-(11,5,1)", 3, 3},
        {"witt10", "3-(10,4,1)", 2, 2}, {"sts9", "2-(9,3,1)", 2, 2},
    };
    return rows;
}

TableRowResult reproduce_table_row(const std::string& key, unsigned threads,
                                   const Budget& budget) {
    const TableRow* row = nullptr;
    for (const TableRow& r : witt_table_rows())
        if (r.key == key) row = &r;
    if (!row) throw InvalidInput("unknown table row '" + key + "'");

    CertifyOptions opts;
    opts.threads = threads;
    opts.budget = budget;
    std::shared_ptr<const Design> design;

    if (key == "witt24") {
        design = std::make_shared<const Design>(witt24());
        opts.family = Family::witt24;
    } else if (key == "witt23") {
        design = std::make_shared<const Design>(witt23());
        opts.family = Family::witt23;
    } else if (key == "witt22") {
        design = std::make_shared<const Design>(witt22());
        opts.family = Family::witt22;
    } else if (key == "pg21") {
        design = std::make_shared<const Design>(projective_design(2, 1, 4, budget));
        opts.family = Family::projective;
    } else if (key == "witt12") {
        design = std::make_shared<const Design>(witt12());
        opts.family = Family::m12orbit;
    } else if (key == "witt11") {
        // certified through the derived-design inheritance from witt12
        design = std::make_shared<const Design>(witt11());
        opts.family = Family::steiner;
        CertifyOptions parent_opts;
        parent_opts.threads = threads;
        parent_opts.budget = budget;
        parent_opts.family = Family::m12orbit;
        GammaCertificate parent =
            certify(std::make_shared<const Design>(witt12()), parent_opts);
        if (auto g2 = parent.gamma2_value()) {
            opts.parent_gamma2 = *g2;
            opts.parent_name = "witt12";
        }
    } else if (key == "witt10") {
        design = std::make_shared<const Design>(witt10());
        opts.family = Family::octagon;
    } else if (key == "sts9") {
        design = std::make_shared<const Design>(sts(9));
        opts.family = Family::steiner;
    }

    TableRowResult result;
    result.expected = *row;
    result.certificate = certify(design, opts);
    auto g1 = result.certificate.gamma1_value();
    auto g2 = result.certificate.gamma2_value();
    result.gamma1 = g1.value_or(0);
    result.gamma2 = g2.value_or(0);
    result.match = g1 && g2 && *g1 == row->gamma1 && *g2 == row->gamma2;
    return result;
}

std::vector<TableRowResult> reproduce_table(unsigned threads, const Budget& budget) {
    std::vector<TableRowResult> results;
    for (const TableRow& row : witt_table_rows())
        results.push_back(reproduce_table_row(row.key, threads, budget));
    return results;
}

} // namespace di
