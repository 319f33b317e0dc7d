// dideal: construct combinatorial designs, verify polynomial generator
// families for their vanishing ideals, and certify the gamma parameters by
// exact rank computation and exhaustive zero-set scans.

#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "di/certificate.hpp"
#include "di/cli_commands.hpp"
#include "di/errors.hpp"
#include "di/gamma.hpp"
#include "di/geometry.hpp"
#include "di/sts.hpp"
#include "di/witt.hpp"

using namespace di;

namespace {

struct GlobalOpts {
    std::uint64_t budget = 0; // 0 = default / env
    unsigned threads = 0;
    std::uint64_t seed = 0;
};

Budget effective_budget(const GlobalOpts& g) {
    Budget b = global_budget();
    if (g.budget > 0) b.max_subsets = g.budget;
    return b;
}

void print_design_summary(const Design& d, const Budget& budget) {
    DesignParams params = strength(d, -1, budget);
    std::cout << "v=" << d.v() << " k=" << d.k() << " blocks=" << d.block_count();
    if (params.is_design())
        std::cout << " strength=" << params.t << " lambda=" << params.lambda.get_str();
    else
        std::cout << " strength=0 (not point-regular)";
    std::cout << '\n';
}

int run_construct(const std::string& family, std::optional<unsigned> v,
                  std::optional<unsigned> k, std::optional<unsigned> d,
                  std::optional<unsigned> e, std::optional<unsigned> q,
                  const std::string& output, const GlobalOpts& g) {
    Design design = construct_family(family, v, k, d, e, q);
    if (!output.empty()) write_design(design, output);
    print_design_summary(design, effective_budget(g));
    return kExitOk;
}

int run_gamma(const std::string& source, const std::string& family_name_opt,
              const std::string& output, const GlobalOpts& g) {
    auto design = resolve_design(source);
    CertifyOptions opts;
    opts.threads = g.threads;
    opts.budget = effective_budget(g);
    if (!family_name_opt.empty() && family_name_opt != "auto")
        opts.family = family_from_name(family_name_opt);
    GammaCertificate cert = certify(design, opts);
    Json j = certificate_to_json(cert);
    if (!output.empty()) {
        std::ofstream out(output);
        out << j.dump(2) << '\n';
    }
    std::cout << j.dump(2) << '\n';
    if (!cert.upper.zero_set.exact()) {
        std::cerr << "zero-set counterexample {"
                  << (cert.upper.zero_set.counterexample
                          ? cert.upper.zero_set.counterexample->to_string()
                          : std::string("?"))
                  << "} (" << verdict_name(cert.upper.zero_set.verdict) << ")\n";
        return kExitCounterexample;
    }
    return kExitOk;
}

int run_verify(const std::string& source, const std::string& family_name_opt,
               const std::string& generators_path, const GlobalOpts& g) {
    auto design = resolve_design(source);
    Budget budget = effective_budget(g);
    GeneratorSet gens = [&] {
        if (!generators_path.empty()) return read_generator_set(generators_path);
        Family f = family_name_opt.empty() || family_name_opt == "auto"
                       ? auto_family(*design, strength(*design, -1, budget))
                       : family_from_name(family_name_opt);
        return select_family(design, f, budget);
    }();
    ZeroSetReport report = zero_set_check(*design, gens, budget, g.threads);
    std::cout << "verdict: " << verdict_name(report.verdict) << '\n'
              << "scanned: " << report.scanned << '\n'
              << "wall_s: " << report.wall_seconds << '\n';
    if (!report.exact()) {
        std::cout << "counterexample: {" << report.counterexample->to_string() << "}\n";
        if (!report.witness.empty()) std::cout << "witness: " << report.witness << '\n';
        return kExitCounterexample;
    }
    return kExitOk;
}

int run_reproduce_table(const std::string& row, const GlobalOpts& g) {
    Budget budget = effective_budget(g);
    std::vector<TableRowResult> results;
    if (!row.empty())
        results.push_back(reproduce_table_row(row, g.threads, budget));
    else
        results = reproduce_table(g.threads, budget);
    bool all_match = true;
    for (const TableRowResult& r : results) {
        std::printf("%-12s %-12s gamma1=%u gamma2=%u expected=(%u,%u) %s\n",
                    r.expected.key.c_str(), r.expected.params.c_str(), r.gamma1, r.gamma2,
                    r.expected.gamma1, r.expected.gamma2, r.match ? "ok" : "MISMATCH");
        all_match = all_match && r.match;
    }
    return all_match ? kExitOk : kExitCounterexample;
}

int run_check_certificate(const std::string& path, const std::string& source,
                          const GlobalOpts& g) {
    Json stored = read_certificate_json(path);
    std::string design_source = source;
    if (design_source.empty()) design_source = stored.at("design").value("name", "");
    if (design_source.empty())
        throw InvalidInput("certificate has no design name; pass --design");
    auto design = resolve_design(design_source);
    CertificateCheck check =
        check_certificate(stored, design, g.threads, effective_budget(g));
    if (check.valid) {
        std::cout << "certificate valid\n";
        return kExitOk;
    }
    std::cout << "certificate INVALID\n";
    for (const std::string& p : check.problems) std::cout << "  " << p << '\n';
    return kExitCounterexample;
}

int run_sts_build(const std::string& trade_path, const std::string& drop,
                  unsigned v, const std::string& output, const GlobalOpts& g) {
    Trade trade = read_trade(trade_path);
    std::istringstream ds(drop);
    std::vector<unsigned> pts;
    unsigned p;
    while (ds >> p) pts.push_back(p);
    // --drop-block uses the same labels as the trade file (1-indexed files
    // shift down during parsing, so shift here too when all labels are >= 1
    // and the trade was written 1-indexed); we simply try both readings.
    auto make_block = [&](int shift) {
        std::vector<unsigned> adj;
        for (unsigned x : pts) adj.push_back(x - static_cast<unsigned>(shift));
        return Bitset::from_points(trade.t2.v(), adj);
    };
    Block b(trade.t2.v());
    bool found = false;
    for (int shift : {0, 1}) {
        bool in_range = true;
        for (unsigned x : pts)
            if (x < static_cast<unsigned>(shift) ||
                x - static_cast<unsigned>(shift) >= trade.t2.v())
                in_range = false;
        if (!in_range) continue;
        Block cand = make_block(shift);
        for (const Block& t : trade.t2.triples())
            if (t == cand) {
                b = cand;
                found = true;
                break;
            }
        if (found) break;
    }
    if (!found) throw InvalidInput("--drop-block is not a triple of T2");
    Design design = build_2v32(trade, b, v, g.seed);
    if (!output.empty()) write_design(design, output);
    print_design_summary(design, effective_budget(g));
    std::cout << "dropped non-block: {" << design.distinguished_non_block()->to_string()
              << "}\n";
    return kExitOk;
}

int run_sts_complete(const std::string& partial_path, unsigned v,
                     const std::string& output, const GlobalOpts& g) {
    // partial systems reuse the design file format
    Design partial = read_design(partial_path);
    std::vector<Block> triples = partial.blocks();
    PartialTripleSystem p(partial.v(), triples);
    CompletionOptions opts;
    opts.seed = g.seed;
    Design design = complete_partial_sts(p, v, opts);
    if (!output.empty()) write_design(design, output);
    print_design_summary(design, effective_budget(g));
    return kExitOk;
}

int run_sts_pasch(const std::string& source, const GlobalOpts& g) {
    auto design = resolve_design(source);
    (void)g;
    auto configs = pasch_configurations(*design);
    std::cout << "pasch_count: " << configs.size() << '\n';
    for (const auto& cfg : configs) {
        for (std::size_t i : cfg) std::cout << '[' << design->blocks()[i].to_string() << "] ";
        std::cout << '\n';
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"design ideals: constructions, generator families, gamma certificates"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--budget", g.budget, "subset enumeration budget (overrides env)");
    app.add_option("--threads", g.threads, "worker threads for zero-set scans (0 = all)");
    app.add_option("--seed", g.seed, "seed for randomized constructions");

    // construct
    auto* construct = app.add_subcommand("construct", "build a design and write it");
    std::string family, output;
    std::optional<unsigned> ov, ok_, od, oe, oq;
    construct->add_option("--family", family, "family name")->required();
    construct->add_option("--v", ov, "point count (sts/complete)");
    construct->add_option("--k", ok_, "block size (complete)");
    construct->add_option("--d", od, "projective dimension (pg)");
    construct->add_option("--e", oe, "subspace dimension (pg, default 1)");
    construct->add_option("--q", oq, "field size (pg)");
    construct->add_option("-o,--output", output, "design file to write");

    // gamma
    auto* gamma_cmd = app.add_subcommand("gamma", "compute and certify gamma parameters");
    std::string gamma_design, gamma_family = "auto", gamma_out;
    gamma_cmd->add_option("--design", gamma_design, "design file or family name")->required();
    gamma_cmd->add_option("--family", gamma_family, "generator family (default auto)");
    gamma_cmd->add_option("-o,--output", gamma_out, "certificate file to write");

    // verify
    auto* verify = app.add_subcommand("verify", "run the zero-set check standalone");
    std::string verify_design, verify_family, verify_gens;
    verify->add_option("--design", verify_design, "design file or family name")->required();
    verify->add_option("--family", verify_family, "generator family");
    verify->add_option("--generators", verify_gens, "generator set file");

    // reproduce-table
    auto* table = app.add_subcommand("reproduce-table",
                                     "rebuild the Witt-family table and check gamma values");
    std::string row;
    table->add_option("--row", row, "single row key (witt24..sts9, pg21)");

    // check-certificate
    auto* check = app.add_subcommand("check-certificate",
                                     "re-validate every claim in a stored certificate");
    std::string cert_path, check_design;
    check->add_option("certificate", cert_path, "certificate JSON path")->required();
    check->add_option("--design", check_design, "design file or family name");

    // sts subcommands
    auto* sts_cmd = app.add_subcommand("sts", "triple-system constructions");
    sts_cmd->require_subcommand(1);
    auto* sts_build = sts_cmd->add_subcommand("build-2v32",
                                              "trade-based 2-(v,3,2) with gamma2 = 3");
    std::string trade_path, drop, sts_out;
    unsigned sts_v = 0;
    sts_build->add_option("--trade", trade_path, "trade file")->required();
    sts_build->add_option("--drop-block", drop, "triple of T2 to leave out")->required();
    sts_build->add_option("--v", sts_v, "target order")->required();
    sts_build->add_option("-o,--output", sts_out, "design file to write");

    auto* sts_complete = sts_cmd->add_subcommand("complete", "embed a partial triple system");
    std::string partial_path, complete_out;
    unsigned complete_v = 0;
    sts_complete->add_option("--partial", partial_path, "partial system (design format)")
        ->required();
    sts_complete->add_option("--v", complete_v, "target order")->required();
    sts_complete->add_option("-o,--output", complete_out, "design file to write");

    auto* sts_pasch = sts_cmd->add_subcommand("pasch", "list Pasch configurations");
    std::string pasch_design;
    sts_pasch->add_option("--design", pasch_design, "design file or family name")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (g.budget > 0) global_budget().max_subsets = g.budget;
        if (*construct)
            return run_construct(family, ov, ok_, od, oe, oq, output, g);
        if (*gamma_cmd) return run_gamma(gamma_design, gamma_family, gamma_out, g);
        if (*verify) return run_verify(verify_design, verify_family, verify_gens, g);
        if (*table) return run_reproduce_table(row, g);
        if (*check) return run_check_certificate(cert_path, check_design, g);
        if (*sts_build) return run_sts_build(trade_path, drop, sts_v, sts_out, g);
        if (*sts_complete) return run_sts_complete(partial_path, complete_v, complete_out, g);
        if (*sts_pasch) return run_sts_pasch(pasch_design, g);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const ConstructionError& e) {
        std::cerr << "construction failed: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
    return kExitBadInput;
}
