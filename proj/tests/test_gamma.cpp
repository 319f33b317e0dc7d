#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "di/certificate.hpp"
#include "di/gamma.hpp"
#include "di/geometry.hpp"
#include "di/sts.hpp"
#include "di/witt.hpp"

#include "oracles.hpp"

using namespace di;

namespace {

std::shared_ptr<const Design> share(Design d) {
    return std::make_shared<const Design>(std::move(d));
}

} // namespace

TEST_CASE("zero_set_check requires G0") {
    auto fano = share(fano_design());
    GeneratorSet no_g0 = custom_generators(7, 3, {}, false);
    CHECK_THROWS_AS(zero_set_check(*fano, no_g0), InvalidInput);
}

TEST_CASE("G0 alone has an extra zero at the first non-block") {
    auto fano = share(fano_design());
    GeneratorSet g0 = trivial_generators(7, 3);
    ZeroSetReport report = zero_set_check(*fano, g0);
    CHECK(report.verdict == ZeroSetReport::Verdict::extra_zero);
    REQUIRE(report.counterexample.has_value());
    // lexicographically least non-block 3-subset of the cyclic Fano plane
    CHECK(*report.counterexample == Bitset::of(7, {0, 1, 2}));
    CHECK(report.scanned == subset_lex_rank(7, {0, 1, 2}) + 1);
}

TEST_CASE("steiner family is exact on the Fano plane") {
    auto fano = share(fano_design());
    ZeroSetReport report = zero_set_check(*fano, steiner_generators(fano, 2));
    CHECK(report.exact());
    CHECK(report.scanned == 35);
}

TEST_CASE("a broken family yields a missing-zero counterexample") {
    auto fano = share(fano_design());
    // x_0 does not vanish on blocks through 0
    GeneratorSet bad = custom_generators(7, 3, {MultilinearPoly::variable(7, 0)}, true);
    ZeroSetReport report = zero_set_check(*fano, bad);
    CHECK(report.verdict == ZeroSetReport::Verdict::missing_zero);
    REQUIRE(report.counterexample.has_value());
    CHECK(fano->is_block(*report.counterexample));
}

TEST_CASE("zero-set scan is deterministic across thread counts") {
    auto fano = share(fano_design());
    GeneratorSet g0 = trivial_generators(7, 3);
    ZeroSetReport a = zero_set_check(*fano, g0, global_budget(), 1);
    ZeroSetReport b = zero_set_check(*fano, g0, global_budget(), 8);
    CHECK(a.verdict == b.verdict);
    CHECK(*a.counterexample == *b.counterexample);
    CHECK(a.scanned == b.scanned);
}

TEST_CASE("gamma1 of the Fano plane is 2") {
    Gamma1Result r = gamma1(fano_design());
    REQUIRE(r.value.has_value());
    CHECK(*r.value == 2);
    REQUIRE(r.evidence.size() == 2);
    CHECK(r.evidence[0].s == 1);
    CHECK(r.evidence[0].rank == 7);
    CHECK(!r.evidence[0].deficient);
    CHECK(r.evidence[1].s == 2);
    CHECK(r.evidence[1].deficient);
    CHECK(r.evidence[1].binom == 21);
}

TEST_CASE("gamma1 matches the kernel-enumeration oracle on small designs") {
    // criterion-6 style equivalence on every corpus design with C(v,k) <= 500
    std::vector<Design> corpus;
    corpus.push_back(fano_design());
    corpus.push_back(sts(9));
    corpus.push_back(witt10());
    corpus.push_back(projective_design(2, 1, 2));
    for (const Design& d : corpus) {
        Gamma1Result fast = gamma1(d);
        REQUIRE(fast.value.has_value());
        CHECK(*fast.value == test_oracles::gamma1_kernel_oracle(d));
    }
}

TEST_CASE("gamma1 of witt structures") {
    Gamma1Result w22 = gamma1(witt22());
    REQUIRE(w22.value.has_value());
    CHECK(*w22.value == 2);

    Gamma1Result w12 = gamma1(witt12());
    REQUIRE(w12.value.has_value());
    CHECK(*w12.value == 3);
    // s = 2 evidence: full rank 66 = C(12,2)
    CHECK(w12.evidence[1].rank == 66);
    CHECK(!w12.evidence[1].deficient);
}

TEST_CASE("linearization: the seven-block configuration identity") {
    // delta^2(B1) + ... + delta^2(B4) = delta^2(B5) + ... + delta^2(B7) + delta^2(C)
    unsigned v = 15;
    std::vector<Bitset> left{Bitset::of(v, {0, 1, 2}), Bitset::of(v, {0, 3, 4}),
                             Bitset::of(v, {1, 3, 5}), Bitset::of(v, {2, 4, 5})};
    std::vector<Bitset> right{Bitset::of(v, {0, 1, 3}), Bitset::of(v, {0, 2, 4}),
                              Bitset::of(v, {1, 2, 5}), Bitset::of(v, {3, 4, 5})};
    std::vector<Rat> lhs(delta_length(v, 2), Rat(0)), rhs = lhs;
    for (const Bitset& b : left) {
        auto delta = delta_vector(b, 2);
        for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] += delta[i];
    }
    for (const Bitset& b : right) {
        auto delta = delta_vector(b, 2);
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += delta[i];
    }
    CHECK(lhs == rhs);

    // as a row-span membership with coefficients (1,1,1,1,-1,-1,-1)
    ExactMatrix rows(7, delta_length(v, 2));
    std::vector<Bitset> seven = left;
    seven.insert(seven.end(), right.begin(), right.begin() + 3);
    for (std::size_t r = 0; r < 7; ++r) {
        auto delta = delta_vector(seven[r], 2);
        ExactMatrix::SparseRow row;
        for (std::size_t c = 0; c < delta.size(); ++c)
            if (delta[c] != 0) row.emplace_back(static_cast<unsigned>(c), delta[c]);
        rows.set_row(r, row);
    }
    auto coeffs = in_row_span(rows, delta_vector(right[3], 2));
    REQUIRE(coeffs.has_value());
    std::vector<Rat> expected{1, 1, 1, 1, -1, -1, -1};
    CHECK(*coeffs == expected);
}

TEST_CASE("gamma2 lower bound via linearization on a built 2-(15,3,2)") {
    Trade trade = example_pasch_trade();
    auto d = share(build_2v32(trade, Bitset::of(6, {3, 4, 5}), 15, 0));
    auto cert = gamma2_lower_linearization(*d, 2);
    REQUIRE(cert.has_value());
    CHECK(cert->s == 2);
    CHECK(cert->non_block == *d->distinguished_non_block());
    CHECK(verify_linearization(*d, *cert));
}

TEST_CASE("no linearization certificate exists for the Fano plane at s=2") {
    auto fano = share(fano_design());
    CHECK(!gamma2_lower_linearization(*fano, 2).has_value());
}

TEST_CASE("theorem bounds for witt24") {
    DesignParams p = strength(witt24());
    auto bounds = theorem_bounds(witt24(), p);
    bool half_t = false, counting = false, kunif = false, steiner_b = false, maxint = false;
    for (const TheoremBound& b : bounds) {
        if (b.name == "gamma1_ge_half_t") {
            half_t = true;
            CHECK(b.value == 3);
        }
        if (b.name == "gamma1_le_counting") {
            counting = true;
            CHECK(b.value == 4); // C(24,4) = 10626 > 759
        }
        if (b.name == "gamma2_le_k") {
            kunif = true;
            CHECK(b.value == 8);
        }
        if (b.name == "gamma2_le_t_steiner") {
            steiner_b = true;
            CHECK(b.value == 5);
        }
        if (b.name == "gamma2_le_maxint") {
            maxint = true;
            CHECK(b.value == 5); // blocks meet in at most 4 points
        }
    }
    CHECK(half_t);
    CHECK(counting);
    CHECK(kunif);
    CHECK(steiner_b);
    CHECK(maxint);
}

TEST_CASE("theorem bounds for a 2-(v,3,2)") {
    Trade trade = example_pasch_trade();
    Design d = build_2v32(trade, Bitset::of(6, {3, 4, 5}), 15, 0);
    DesignParams p = strength(d);
    auto bounds = theorem_bounds(d, p);
    for (const TheoremBound& b : bounds)
        if (b.name == "gamma1_ge_half_t") CHECK(b.value == 2);
}

TEST_CASE("coset basis ranks") {
    // symmetric designs: {x_i} cosets have rank v
    std::vector<MultilinearPoly> xs;
    for (unsigned i = 0; i < 7; ++i) xs.push_back(MultilinearPoly::variable(7, i));
    CHECK(coset_basis_rank(fano_design(), xs) == 7);
}

TEST_CASE("certify the Fano plane") {
    auto fano = share(fano_design());
    CertifyOptions opts;
    opts.family = Family::symbibd;
    GammaCertificate cert = certify(fano, opts);
    CHECK(cert.params.t == 2);
    REQUIRE(cert.gamma1_value().has_value());
    CHECK(*cert.gamma1_value() == 2);
    REQUIRE(cert.gamma2_value().has_value());
    CHECK(*cert.gamma2_value() == 2);
    CHECK(cert.upper.zero_set.exact());
}

TEST_CASE("certify a built 2-(15,3,2): gamma1 = 2, gamma2 = 3 = k") {
    Trade trade = example_pasch_trade();
    auto d = share(build_2v32(trade, Bitset::of(6, {3, 4, 5}), 15, 0));
    GammaCertificate cert = certify(d);
    REQUIRE(cert.gamma1_value().has_value());
    CHECK(*cert.gamma1_value() == 2);
    REQUIRE(cert.gamma2_value().has_value());
    CHECK(*cert.gamma2_value() == 3);
    CHECK(cert.gamma2_lower_source == "linearization");
    REQUIRE(cert.linearization.has_value());
    CHECK(verify_linearization(*d, *cert.linearization));
    CHECK(cert.upper.family == Family::gY);
}

TEST_CASE("certificate json round trip and re-check") {
    auto fano = share(fano_design());
    CertifyOptions opts;
    opts.family = Family::steiner;
    GammaCertificate cert = certify(fano, opts);
    Json j = certificate_to_json(cert);
    GammaCertificate back = certificate_from_json(j);
    CHECK(back.v == 7);
    CHECK(back.hash == cert.hash);
    CHECK(back.g1.value == cert.g1.value);

    CertificateCheck check = check_certificate(j, fano);
    CHECK(check.valid);
}

TEST_CASE("tampering with a certificate is detected with a field path") {
    Trade trade = example_pasch_trade();
    auto d = share(build_2v32(trade, Bitset::of(6, {3, 4, 5}), 15, 0));
    GammaCertificate cert = certify(d);
    REQUIRE(cert.linearization.has_value());
    Json j = certificate_to_json(cert);
    // flip one linearization coefficient
    j["gamma2"]["lower"]["certificate"]["coefficients"][0]["coeff"] = "7";
    CertificateCheck check = check_certificate(j, d);
    CHECK(!check.valid);
    bool mentions_path = false;
    for (const std::string& p : check.problems)
        if (p.find("gamma2.lower.certificate") != std::string::npos) mentions_path = true;
    CHECK(mentions_path);

    // tampered hash
    Json j2 = certificate_to_json(cert);
    j2["design"]["hash"] = "0000000000000000";
    CHECK(!check_certificate(j2, d).valid);
}

TEST_CASE("certificates are byte-identical across runs except wall time") {
    auto fano = share(fano_design());
    CertifyOptions opts;
    opts.family = Family::steiner;
    Json a = certificate_to_json(certify(fano, opts));
    Json b = certificate_to_json(certify(fano, opts));
    a.erase("wall_ms");
    b.erase("wall_ms");
    CHECK(a.dump() == b.dump());
}

TEST_CASE("auto family selection") {
    CHECK(auto_family(witt24(), strength(witt24())) == Family::witt24);
    CHECK(auto_family(witt12(), strength(witt12())) == Family::m12orbit);
    CHECK(auto_family(witt10(), strength(witt10())) == Family::octagon);
    CHECK(auto_family(fano_design(), strength(fano_design())) == Family::symbibd);
    Design s15 = sts(15);
    CHECK(auto_family(s15, strength(s15)) == Family::steiner);
    Trade trade = example_pasch_trade();
    Design d232 = build_2v32(trade, Bitset::of(6, {3, 4, 5}), 15, 0);
    CHECK(auto_family(d232, strength(d232)) == Family::gY);
}
