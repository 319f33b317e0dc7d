#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "di/gamma.hpp"

namespace di {

using Json = nlohmann::ordered_json;

/// Stable certificate schema:
/// {design:{v,k,b,hash,name}, strength:{t,lambda},
///  gamma1:{value,lower,upper,evidence:[{s,rank,binom,exact,deficient}]},
///  gamma2:{lower:{value,source,certificate?},
///          upper:{value,family,zero_set:{scanned,verdict}}},
///  bounds:[{name,applies,value,ref}], wall_ms}
Json certificate_to_json(const GammaCertificate& cert);
GammaCertificate certificate_from_json(const Json& j);

void write_certificate(const GammaCertificate& cert, const std::string& path);
Json read_certificate_json(const std::string& path);

struct CertificateCheck {
    bool valid = true;
    std::vector<std::string> problems; // "field.path: what disagrees"
};

/// Re-validates every numerical claim of a stored certificate from scratch
/// against a freshly provided design: hash, strength, rank evidence, the
/// linearization combination, the zero-set verdict, and the bound values.
CertificateCheck check_certificate(const Json& stored,
                                   const std::shared_ptr<const Design>& design,
                                   unsigned threads = 0,
                                   const Budget& budget = global_budget());

} // namespace di
