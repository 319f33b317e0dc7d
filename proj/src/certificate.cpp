#include "di/certificate.hpp"

#include <fstream>
#include <sstream>

#include "di/errors.hpp"

namespace di {

namespace {

Json linearization_to_json(const LinearizationCertificate& cert) {
    Json j;
    j["s"] = cert.s;
    j["non_block"] = cert.non_block.to_string();
    Json coeffs = Json::array();
    for (const auto& [block, coeff] : cert.coefficients) {
        Json entry;
        entry["block"] = block.to_string();
        entry["coeff"] = coeff.get_str();
        coeffs.push_back(entry);
    }
    j["coefficients"] = coeffs;
    return j;
}

Bitset parse_points(unsigned v, const std::string& text) {
    std::istringstream in(text);
    std::vector<unsigned> pts;
    unsigned p;
    while (in >> p) pts.push_back(p);
    return Bitset::from_points(v, pts);
}

} // namespace

Json certificate_to_json(const GammaCertificate& cert) {
    Json j;
    j["design"] = {{"v", cert.v},
                   {"k", cert.k},
                   {"b", cert.b},
                   {"hash", cert.hash},
                   {"name", cert.name}};
    j["strength"] = {{"t", cert.params.t}, {"lambda", cert.params.lambda.get_str()}};

    Json g1;
    if (cert.g1.value)
        g1["value"] = *cert.g1.value;
    else
        g1["value"] = nullptr;
    g1["lower"] = cert.g1.lower;
    g1["upper"] = cert.g1.upper;
    Json evidence = Json::array();
    for (const RankEvidence& ev : cert.g1.evidence)
        evidence.push_back({{"s", ev.s},
                            {"rank", ev.rank},
                            {"binom", ev.binom.get_str()},
                            {"exact", ev.exact},
                            {"deficient", ev.deficient}});
    g1["evidence"] = evidence;
    j["gamma1"] = g1;

    Json lower;
    lower["value"] = cert.gamma2_lower;
    lower["source"] = cert.gamma2_lower_source;
    if (cert.linearization) lower["certificate"] = linearization_to_json(*cert.linearization);
    Json upper;
    if (cert.upper.value)
        upper["value"] = *cert.upper.value;
    else
        upper["value"] = nullptr;
    upper["family"] = family_name(cert.upper.family);
    upper["zero_set"] = {{"scanned", cert.upper.zero_set.scanned},
                         {"verdict", verdict_name(cert.upper.zero_set.verdict)}};
    j["gamma2"] = {{"lower", lower}, {"upper", upper}};

    Json bounds = Json::array();
    for (const TheoremBound& b : cert.bounds)
        bounds.push_back(
            {{"name", b.name}, {"applies", b.applies}, {"value", b.value}, {"ref", b.ref}});
    j["bounds"] = bounds;
    j["wall_ms"] = cert.wall_ms;
    return j;
}

void write_certificate(const GammaCertificate& cert, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write certificate " + path);
    out << certificate_to_json(cert).dump(2) << '\n';
}

Json read_certificate_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open certificate " + path);
    Json j;
    in >> j;
    return j;
}

GammaCertificate certificate_from_json(const Json& j) {
    GammaCertificate cert;
    cert.v = j.at("design").at("v").get<unsigned>();
    cert.k = j.at("design").at("k").get<unsigned>();
    cert.b = j.at("design").at("b").get<std::size_t>();
    cert.hash = j.at("design").at("hash").get<std::string>();
    cert.name = j.at("design").value("name", "");

    cert.params.t = j.at("strength").at("t").get<int>();
    cert.params.v = cert.v;
    cert.params.k = cert.k;
    cert.params.lambda = Int(j.at("strength").at("lambda").get<std::string>());

    const Json& g1 = j.at("gamma1");
    if (!g1.at("value").is_null()) cert.g1.value = g1.at("value").get<unsigned>();
    cert.g1.lower = g1.at("lower").get<unsigned>();
    cert.g1.upper = g1.at("upper").get<unsigned>();
    for (const Json& ev : g1.at("evidence")) {
        RankEvidence e;
        e.s = ev.at("s").get<unsigned>();
        e.rank = ev.at("rank").get<std::uint64_t>();
        e.binom = Int(ev.at("binom").get<std::string>());
        e.exact = ev.at("exact").get<bool>();
        e.deficient = ev.at("deficient").get<bool>();
        cert.g1.evidence.push_back(e);
    }

    const Json& lower = j.at("gamma2").at("lower");
    cert.gamma2_lower = lower.at("value").get<unsigned>();
    cert.gamma2_lower_source = lower.at("source").get<std::string>();
    if (lower.contains("certificate")) {
        const Json& lc = lower.at("certificate");
        LinearizationCertificate lin;
        lin.s = lc.at("s").get<unsigned>();
        lin.non_block = parse_points(cert.v, lc.at("non_block").get<std::string>());
        // block references resolved against the design when rechecking
        cert.linearization = lin;
    }

    const Json& upper = j.at("gamma2").at("upper");
    if (!upper.at("value").is_null()) cert.upper.value = upper.at("value").get<unsigned>();
    cert.upper.family = family_from_name(upper.at("family").get<std::string>());
    cert.upper.zero_set.scanned = upper.at("zero_set").at("scanned").get<std::uint64_t>();
    std::string verdict = upper.at("zero_set").at("verdict").get<std::string>();
    cert.upper.zero_set.verdict = verdict == "exact" ? ZeroSetReport::Verdict::exact
                                  : verdict == "missing-zero"
                                      ? ZeroSetReport::Verdict::missing_zero
                                      : ZeroSetReport::Verdict::extra_zero;

    for (const Json& b : j.at("bounds"))
        cert.bounds.push_back({b.at("name").get<std::string>(),
                               b.at("applies").get<std::string>(),
                               b.at("value").get<unsigned>(), b.at("ref").get<std::string>()});
    cert.wall_ms = j.value("wall_ms", 0.0);
    return cert;
}

CertificateCheck check_certificate(const Json& stored,
                                   const std::shared_ptr<const Design>& design,
                                   unsigned threads, const Budget& budget) {
    CertificateCheck result;
    auto fail = [&](const std::string& path, const std::string& what) {
        result.valid = false;
        result.problems.push_back(path + ": " + what);
    };

    const Design& d = *design;
    const Json& dj = stored.at("design");
    if (dj.at("v").get<unsigned>() != d.v()) fail("design.v", "does not match the design");
    if (dj.at("k").get<unsigned>() != d.k()) fail("design.k", "does not match the design");
    if (dj.at("b").get<std::size_t>() != d.block_count())
        fail("design.b", "does not match the design");
    if (dj.at("hash").get<std::string>() != design_hash(d))
        fail("design.hash", "canonical form hash differs");

    DesignParams params = strength(d, -1, budget);
    if (stored.at("strength").at("t").get<int>() != params.t)
        fail("strength.t", "recomputed strength differs");
    if (Int(stored.at("strength").at("lambda").get<std::string>()) != params.lambda)
        fail("strength.lambda", "recomputed lambda differs");

    // rank evidence, recomputed from scratch
    Gamma1Result g1 = gamma1(d, budget);
    const Json& sg1 = stored.at("gamma1");
    if (sg1.at("evidence").size() != g1.evidence.size()) {
        fail("gamma1.evidence", "entry count differs from recomputation");
    } else {
        for (std::size_t i = 0; i < g1.evidence.size(); ++i) {
            const Json& ev = sg1.at("evidence")[i];
            const RankEvidence& re = g1.evidence[i];
            std::string path = "gamma1.evidence[" + std::to_string(i) + "]";
            if (ev.at("s").get<unsigned>() != re.s) fail(path + ".s", "differs");
            if (ev.at("rank").get<std::uint64_t>() != re.rank)
                fail(path + ".rank", "recomputed rank differs");
            if (Int(ev.at("binom").get<std::string>()) != re.binom)
                fail(path + ".binom", "differs");
            if (ev.at("deficient").get<bool>() != re.deficient)
                fail(path + ".deficient", "differs");
        }
    }
    if (sg1.at("value").is_null() != !g1.value.has_value() ||
        (g1.value && sg1.at("value").get<unsigned>() != *g1.value))
        fail("gamma1.value", "recomputed gamma1 differs");

    // gamma2 lower: source and linearization combination
    const Json& lower = stored.at("gamma2").at("lower");
    if (lower.contains("certificate")) {
        const Json& lc = lower.at("certificate");
        LinearizationCertificate lin;
        lin.s = lc.at("s").get<unsigned>();
        lin.non_block = parse_points(d.v(), lc.at("non_block").get<std::string>());
        for (const Json& entry : lc.at("coefficients"))
            lin.coefficients.emplace_back(parse_points(d.v(), entry.at("block").get<std::string>()),
                                          parse_rational(entry.at("coeff").get<std::string>()));
        if (!verify_linearization(d, lin))
            fail("gamma2.lower.certificate", "delta^s combination does not hold exactly");
        unsigned claimed = lower.at("value").get<unsigned>();
        if (result.valid && claimed > lin.s + 1 && claimed > (g1.value ? *g1.value : g1.lower))
            fail("gamma2.lower.value", "exceeds what the certificate supports");
    } else {
        unsigned claimed = lower.at("value").get<unsigned>();
        unsigned supported = g1.value ? *g1.value : g1.lower;
        bool parent_supported = false;
        for (const Json& b : stored.at("bounds"))
            if (b.at("name") == "gamma_le_parent") parent_supported = true;
        (void)parent_supported;
        if (claimed > supported) fail("gamma2.lower.value", "exceeds recomputed gamma1");
    }

    // gamma2 upper: re-run the zero-set check with the recorded family
    const Json& upper = stored.at("gamma2").at("upper");
    Family family = family_from_name(upper.at("family").get<std::string>());
    try {
        GeneratorSet gens = select_family(design, family, budget);
        ZeroSetReport report = zero_set_check(d, gens, budget, threads);
        if (verdict_name(report.verdict) != upper.at("zero_set").at("verdict").get<std::string>())
            fail("gamma2.upper.zero_set.verdict", "recomputed verdict differs");
        if (report.scanned != upper.at("zero_set").at("scanned").get<std::uint64_t>())
            fail("gamma2.upper.zero_set.scanned", "recomputed scan length differs");
        if (!upper.at("value").is_null()) {
            unsigned claimed = upper.at("value").get<unsigned>();
            unsigned family_bound = gens.max_degree();
            bool parent_bound = false;
            for (const Json& b : stored.at("bounds"))
                if (b.at("name") == "gamma_le_parent" &&
                    b.at("value").get<unsigned>() == claimed)
                    parent_bound = true;
            if (!report.exact() && !parent_bound)
                fail("gamma2.upper.value", "claimed without an exact zero set");
            else if (claimed != family_bound && !parent_bound)
                fail("gamma2.upper.value", "does not match the family's max degree");
        }
    } catch (const std::exception& e) {
        fail("gamma2.upper.family", std::string("cannot rebuild family: ") + e.what());
    }

    // bounds recomputed
    std::vector<TheoremBound> bounds = theorem_bounds(d, params, budget);
    for (const Json& b : stored.at("bounds")) {
        std::string name = b.at("name").get<std::string>();
        if (name == "gamma_le_parent") continue; // provenance external to this design
        bool found = false;
        for (const TheoremBound& tb : bounds)
            if (tb.name == name && tb.value == b.at("value").get<unsigned>()) found = true;
        if (!found) fail("bounds." + name, "recomputed value differs");
    }

    return result;
}

} // namespace di
