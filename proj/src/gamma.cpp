#include "di/gamma.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "di/errors.hpp"
#include "di/witt.hpp"

namespace di {

std::string verdict_name(ZeroSetReport::Verdict v) {
    switch (v) {
        case ZeroSetReport::Verdict::exact: return "exact";
        case ZeroSetReport::Verdict::missing_zero: return "missing-zero";
        case ZeroSetReport::Verdict::extra_zero: return "extra-zero";
    }
    return "exact";
}

ZeroSetReport zero_set_check(const Design& d, const GeneratorSet& g, const Budget& budget,
                             unsigned threads) {
    if (!g.includes_g0())
        throw InvalidInput("zero_set_check requires G0 in the generator set: radicality of "
                           "<G> (and hence <G> = I(B) from an exact zero set) depends on it");
    if (g.v() != d.v() || g.k() != d.k())
        throw InvalidInput("generator set does not match the design's parameters");

    std::uint64_t total = checked_subset_count(d.v(), d.k(), budget, "zero_set_check");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    auto start = std::chrono::steady_clock::now();

    struct Hit {
        std::uint64_t rank;
        ZeroSetReport::Verdict verdict;
        Bitset subset;
        std::string witness;
    };

    std::atomic<std::uint64_t> best_rank{UINT64_MAX};
    std::mutex hit_mutex;
    std::optional<Hit> best_hit;

    const std::uint64_t chunk = std::max<std::uint64_t>(1024, total / (threads * 16) + 1);
    std::atomic<std::uint64_t> next_chunk{0};

    auto worker = [&] {
        while (true) {
            std::uint64_t lo = next_chunk.fetch_add(chunk);
            if (lo >= total) return;
            std::uint64_t hi = std::min(total, lo + chunk);
            if (lo >= best_rank.load(std::memory_order_relaxed)) continue;
            std::vector<unsigned> pts = subset_lex_unrank(d.v(), d.k(), lo);
            Bitset c = Bitset::from_points(d.v(), pts);
            for (std::uint64_t r = lo; r < hi; ++r) {
                if (r >= best_rank.load(std::memory_order_relaxed)) break;
                bool block = d.is_block(c);
                auto witness = g.nonvanishing_witness(c);
                if (block == witness.has_value()) {
                    Hit hit{r,
                            block ? ZeroSetReport::Verdict::missing_zero
                                  : ZeroSetReport::Verdict::extra_zero,
                            c, witness ? witness->generator : ""};
                    std::uint64_t prev = best_rank.load();
                    while (r < prev && !best_rank.compare_exchange_weak(prev, r)) {
                    }
                    std::lock_guard<std::mutex> lock(hit_mutex);
                    if (!best_hit || hit.rank < best_hit->rank) best_hit = std::move(hit);
                    break;
                }
                // advance to next subset in lex order
                if (r + 1 < hi) {
                    next_subset(d.v(), pts);
                    c = Bitset::from_points(d.v(), pts);
                }
            }
        }
    };

    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    ZeroSetReport report;
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (best_hit) {
        report.verdict = best_hit->verdict;
        report.counterexample = best_hit->subset;
        report.witness = best_hit->witness;
        report.scanned = best_hit->rank + 1;
    } else {
        report.verdict = ZeroSetReport::Verdict::exact;
        report.scanned = total;
    }
    return report;
}

// ----- gamma_1 ---------------------------------------------------------------

Gamma1Result gamma1(const Design& d, const Budget& budget) {
    unsigned v = d.v(), k = d.k();
    unsigned smax = std::min(k, v - k);
    Gamma1Result result;
    result.lower = 1;
    result.upper = k; // gamma_1 <= gamma_2 <= k always

    for (unsigned s = 1; s <= smax; ++s) {
        Int binom_vs = binomial(v, s);
        ExactMatrix m = incidence_matrix(d, s, budget);
        auto bound = m.rank_bound();

        RankEvidence ev;
        ev.s = s;
        ev.binom = binom_vs;

        if (bound.exact && Int(static_cast<unsigned long>(bound.value)) == binom_vs) {
            // full column rank: no nontrivial polynomial of degree s
            ev.rank = bound.value;
            ev.exact = true;
            ev.deficient = false;
            result.evidence.push_back(ev);
            result.lower = s + 1;
            continue;
        }

        // rank deficiency: certified when the modular pass is exact, or when
        // the row count alone already caps the rank below C(v,s)
        bool certified = bound.exact || Int(static_cast<unsigned long>(d.block_count())) <
                                            binom_vs;
        std::uint64_t rank_value = bound.value;
        bool rank_exact = bound.exact;
        if (!certified) {
            // decide by a full fraction-free elimination when affordable
            if (d.block_count() * m.cols() <= 2'000'000) {
                rank_value = m.rank();
                rank_exact = true;
                certified = Int(static_cast<unsigned long>(rank_value)) < binom_vs;
                if (!certified) {
                    // actually full rank; record and continue the scan
                    ev.rank = rank_value;
                    ev.exact = true;
                    ev.deficient = false;
                    result.evidence.push_back(ev);
                    result.lower = s + 1;
                    continue;
                }
            } else {
                // cannot certify either way at this size; stop with bounds
                ev.rank = rank_value;
                ev.exact = false;
                ev.deficient = false;
                result.evidence.push_back(ev);
                return result;
            }
        }

        ev.rank = rank_value;
        ev.exact = rank_exact;
        ev.deficient = true;
        result.evidence.push_back(ev);
        result.value = s;
        result.lower = s;
        result.upper = s;
        return result;
    }
    // no deficiency within the sound scan range
    return result;
}

// ----- gamma_2 lower ----------------------------------------------------------

std::optional<LinearizationCertificate> gamma2_lower_linearization(
    const Design& d, unsigned s, const std::vector<Bitset>& candidates, const Budget& budget) {
    if (s > d.k()) throw InvalidInput("linearization requires s <= k");
    std::uint64_t width = delta_length(d.v(), s);
    if (width * d.block_count() > budget.max_subsets * 8)
        throw BudgetExceeded("delta matrix too large");

    ExactMatrix rows(d.block_count(), width);
    for (std::size_t i = 0; i < d.block_count(); ++i) {
        std::vector<Rat> delta = delta_vector(d.blocks()[i], s);
        ExactMatrix::SparseRow row;
        for (std::size_t c = 0; c < delta.size(); ++c)
            if (delta[c] != 0) row.emplace_back(static_cast<unsigned>(c), delta[c]);
        rows.set_row(i, std::move(row));
    }
    RowSpanSolver solver(rows);

    auto attempt = [&](const Bitset& c) -> std::optional<LinearizationCertificate> {
        if (d.is_block(c)) return std::nullopt;
        auto coeffs = solver.solve(delta_vector(c, s));
        if (!coeffs) return std::nullopt;
        LinearizationCertificate cert;
        cert.s = s;
        cert.non_block = c;
        for (std::size_t i = 0; i < coeffs->size(); ++i)
            if ((*coeffs)[i] != 0) cert.coefficients.emplace_back(d.blocks()[i], (*coeffs)[i]);
        return cert;
    };

    if (!candidates.empty()) {
        for (const Bitset& c : candidates)
            if (auto cert = attempt(c)) return cert;
        return std::nullopt;
    }

    if (const auto& distinguished = d.distinguished_non_block())
        if (auto cert = attempt(*distinguished)) return cert;

    checked_subset_count(d.v(), d.k(), budget, "linearization candidate scan");
    std::optional<LinearizationCertificate> found;
    for_each_subset(d.v(), d.k(), [&](const Bitset& c) {
        if (found) return;
        if (auto cert = attempt(c)) found = std::move(cert);
    });
    return found;
}

bool verify_linearization(const Design& d, const LinearizationCertificate& cert) {
    if (d.is_block(cert.non_block)) return false;
    std::vector<Rat> sum(delta_length(d.v(), cert.s), Rat(0));
    for (const auto& [block, coeff] : cert.coefficients) {
        if (!d.is_block(block)) return false;
        std::vector<Rat> delta = delta_vector(block, cert.s);
        for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += coeff * delta[c];
    }
    std::vector<Rat> target = delta_vector(cert.non_block, cert.s);
    return sum == target;
}

Gamma2Upper gamma2_upper(const Design& d, const GeneratorSet& g, const Budget& budget,
                         unsigned threads) {
    Gamma2Upper upper;
    upper.family = g.family();
    upper.zero_set = zero_set_check(d, g, budget, threads);
    if (upper.zero_set.exact()) upper.value = g.max_degree();
    return upper;
}

// ----- a-priori bounds ----------------------------------------------------------

std::vector<TheoremBound> theorem_bounds(const Design& d, const DesignParams& params,
                                         const Budget& budget) {
    (void)budget;
    std::vector<TheoremBound> bounds;
    unsigned v = d.v(), k = d.k();
    int t = params.t;

    if (t >= 2)
        bounds.push_back({"gamma1_ge_half_t", "gamma1_lower",
                          static_cast<unsigned>(t / 2 + 1),
                          "nontrivial members of the ideal of a t-design have degree > t/2"});

    // least s with C(v,s) > |B|
    Int b(static_cast<unsigned long>(d.block_count()));
    for (unsigned s = 1; s <= k; ++s) {
        if (binomial(v, s) > b) {
            if (s <= std::min(k, v - k))
                bounds.push_back({"gamma1_le_counting", "gamma1_upper", s,
                                  "C(v,s) > |B| leaves a nonzero degree-s kernel polynomial"});
            break;
        }
    }

    bounds.push_back({"gamma2_le_k", "gamma2_upper", k,
                      "the g_Y family generates the ideal of any k-uniform hypergraph"});

    if (t >= 1 && params.lambda == 1 && static_cast<unsigned>(t) < k)
        bounds.push_back({"gamma2_le_t_steiner", "gamma2_upper", static_cast<unsigned>(t),
                          "Steiner/partial g_{B,T} family generates the ideal"});

    // max pairwise block intersection
    std::size_t n = d.block_count();
    if (n >= 2 && n * n / 2 <= 4'000'000) {
        unsigned m = 0;
        const auto& blocks = d.blocks();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                m = std::max(m, static_cast<unsigned>(blocks[i].intersection_count(blocks[j])));
        if (m + 1 < k)
            bounds.push_back({"gamma2_le_maxint", "gamma2_upper", m + 1,
                              "blocks pairwise intersect in < m+1 points, so the partial "
                              "family at t = m+1 applies"});
    }
    return bounds;
}

// ----- coordinate-ring bases ------------------------------------------------------

ExactMatrix evaluation_matrix(const Design& d, const std::vector<MultilinearPoly>& polys) {
    ExactMatrix m(d.block_count(), polys.size());
    for (std::size_t r = 0; r < d.block_count(); ++r) {
        ExactMatrix::SparseRow row;
        for (std::size_t c = 0; c < polys.size(); ++c) {
            Rat val = polys[c].eval(d.blocks()[r]);
            if (val != 0) row.emplace_back(static_cast<unsigned>(c), val);
        }
        m.set_row(r, std::move(row));
    }
    return m;
}

unsigned coset_basis_rank(const Design& d, const std::vector<MultilinearPoly>& polys) {
    return evaluation_matrix(d, polys).rank();
}

// ----- certification pipeline ------------------------------------------------------

Family auto_family(const Design& d, const DesignParams& params) {
    std::string hash = design_hash(d);
    if (hash == design_hash(witt24())) return Family::witt24;
    if (hash == design_hash(witt23())) return Family::witt23;
    if (hash == design_hash(witt22())) return Family::witt22;
    if (hash == design_hash(witt12())) return Family::m12orbit;
    if (hash == design_hash(witt10())) return Family::octagon;
    if (params.t >= 2 && d.block_count() == d.v()) return Family::symbibd;
    if (params.t >= 1 && params.lambda == 1 && static_cast<unsigned>(params.t) < d.k())
        return Family::steiner;
    return Family::gY;
}

GeneratorSet select_family(const std::shared_ptr<const Design>& d, Family f,
                           const Budget& budget) {
    switch (f) {
        case Family::g0: return trivial_generators(d->v(), d->k());
        case Family::gY: return gY_generators(d, budget);
        case Family::steiner: {
            DesignParams params = strength(*d, -1, budget);
            if (params.lambda != 1 || params.t < 1)
                throw InvalidInput("steiner family needs a t-(v,k,1) design");
            return steiner_generators(d, static_cast<unsigned>(params.t), budget);
        }
        case Family::partial: {
            // largest t with every t-set covered at most once
            for (unsigned t = d.k() - 1; t >= 1; --t) {
                try {
                    return partial_design_generators(d, t, budget);
                } catch (const InvalidInput&) {
                    continue;
                }
            }
            throw InvalidInput("no partial-design parameter t found");
        }
        case Family::symbibd: return symbibd_generators(d);
        case Family::projective: {
            // recover (dim, e, q) from the design's parameters and labeling
            for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u})
                for (unsigned dim = 2; dim <= 6; ++dim) {
                    std::uint64_t v_pg = 0, pw = 1;
                    for (unsigned i = 0; i <= dim; ++i) {
                        v_pg += pw;
                        pw *= q;
                    }
                    if (v_pg != d->v()) continue;
                    for (unsigned e = 1; e < dim; ++e) {
                        std::uint64_t k_pg = 0;
                        pw = 1;
                        for (unsigned i = 0; i <= e; ++i) {
                            k_pg += pw;
                            pw *= q;
                        }
                        if (k_pg != d->k()) continue;
                        GeneratorSet g = projective_generators(dim, e, q, budget);
                        if (design_hash(*g.design()) == design_hash(*d)) return g;
                    }
                }
            throw InvalidInput("design is not a canonically labeled PG(d,q) subspace design");
        }
        case Family::witt24: return witt24_generators();
        case Family::witt23: return witt23_generators();
        case Family::witt22: return witt22_generators();
        case Family::m12orbit: return m12_orbit_generators();
        case Family::octagon: return octagon_generators(d, octagon_search(*d));
        default:
            throw InvalidInput("family " + family_name(f) +
                               " cannot be auto-built for a design");
    }
}

GammaCertificate certify(const std::shared_ptr<const Design>& d, const CertifyOptions& opts) {
    auto start = std::chrono::steady_clock::now();
    const Design& design = *d;

    GammaCertificate cert;
    cert.v = design.v();
    cert.k = design.k();
    cert.b = design.block_count();
    cert.hash = design_hash(design);
    cert.name = design.name();

    cert.params = strength(design, -1, opts.budget);
    cert.bounds = theorem_bounds(design, cert.params, opts.budget);
    if (opts.parent_gamma2)
        cert.bounds.push_back({"gamma_le_parent", "gamma2_upper", *opts.parent_gamma2,
                               "derived/residual designs inherit the parent's gamma bounds (" +
                                   opts.parent_name + ")"});

    cert.g1 = gamma1(design, opts.budget);

    Family family = opts.family ? *opts.family : auto_family(design, cert.params);
    GeneratorSet gens = select_family(d, family, opts.budget);
    cert.upper = gamma2_upper(design, gens, opts.budget, opts.threads);

    // propagate the parent's certified gamma_2 when it beats the family bound
    if (opts.parent_gamma2 && (!cert.upper.value || *opts.parent_gamma2 < *cert.upper.value))
        cert.upper.value = opts.parent_gamma2;
    std::optional<unsigned> upper_value = cert.upper.value;

    cert.gamma2_lower = cert.g1.lower;
    cert.gamma2_lower_source = "gamma1";
    if (cert.g1.value) cert.gamma2_lower = *cert.g1.value;

    // close the gap from below with linearization certificates
    while (upper_value && cert.gamma2_lower < *upper_value) {
        auto lin = gamma2_lower_linearization(design, cert.gamma2_lower, {}, opts.budget);
        if (!lin) break;
        cert.linearization = lin;
        cert.gamma2_lower = lin->s + 1;
        cert.gamma2_lower_source = "linearization";
    }

    cert.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return cert;
}

} // namespace di
