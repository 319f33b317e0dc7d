#include "di/poly.hpp"

#include <algorithm>
#include <sstream>

#include "di/errors.hpp"
#include "di/subsets.hpp"

namespace di {

MultilinearPoly MultilinearPoly::constant(unsigned v, Rat c) {
    MultilinearPoly p(v);
    if (c != 0) p.terms_[{}] = std::move(c);
    return p;
}

MultilinearPoly MultilinearPoly::variable(unsigned v, unsigned i) {
    if (i >= v) throw InvalidInput("variable index out of range");
    MultilinearPoly p(v);
    p.terms_[{static_cast<std::uint16_t>(i)}] = 1;
    return p;
}

MultilinearPoly MultilinearPoly::monomial(unsigned v, const Bitset& c, Rat coeff) {
    MultilinearPoly p(v);
    if (coeff == 0) return p;
    Mono m;
    for (unsigned pt : c.points()) m.push_back(static_cast<std::uint16_t>(pt));
    p.terms_[m] = std::move(coeff);
    return p;
}

unsigned MultilinearPoly::degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<unsigned>(m.size()));
    return d;
}

void MultilinearPoly::add_term(const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_[m] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rat MultilinearPoly::coefficient(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

MultilinearPoly MultilinearPoly::operator+(const MultilinearPoly& o) const {
    MultilinearPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

MultilinearPoly MultilinearPoly::operator-(const MultilinearPoly& o) const {
    MultilinearPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

MultilinearPoly MultilinearPoly::operator*(const MultilinearPoly& o) const {
    MultilinearPoly r(v_);
    Mono merged;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) {
            merged.clear();
            std::set_union(m1.begin(), m1.end(), m2.begin(), m2.end(),
                           std::back_inserter(merged));
            r.add_term(merged, c1 * c2);
        }
    return r;
}

MultilinearPoly MultilinearPoly::scaled(const Rat& c) const {
    MultilinearPoly r(v_);
    if (c == 0) return r;
    for (const auto& [m, coeff] : terms_) r.terms_[m] = coeff * c;
    return r;
}

Rat MultilinearPoly::eval(const Bitset& c) const {
    Rat sum(0);
    for (const auto& [m, coeff] : terms_) {
        bool inside = true;
        for (std::uint16_t i : m)
            if (!c.test(i)) {
                inside = false;
                break;
            }
        if (inside) sum += coeff;
    }
    return sum;
}

MultilinearPoly MultilinearPoly::partial_derivative(unsigned i) const {
    MultilinearPoly r(v_);
    std::uint16_t var = static_cast<std::uint16_t>(i);
    for (const auto& [m, coeff] : terms_) {
        auto it = std::lower_bound(m.begin(), m.end(), var);
        if (it == m.end() || *it != var) continue;
        Mono reduced;
        reduced.reserve(m.size() - 1);
        reduced.insert(reduced.end(), m.begin(), it);
        reduced.insert(reduced.end(), it + 1, m.end());
        r.add_term(reduced, coeff);
    }
    return r;
}

std::string MultilinearPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << '(' << c.get_str() << ')';
        for (std::uint16_t i : m) out << "*x" << i;
    }
    return out.str();
}

MultilinearPoly elementary_symmetric(unsigned v, const Bitset& c, unsigned j) {
    MultilinearPoly p(v);
    std::vector<unsigned> pts = c.points();
    if (j > pts.size()) return p;
    if (j == 0) return MultilinearPoly::constant(v, 1);
    std::vector<unsigned> idx(j);
    for (unsigned i = 0; i < j; ++i) idx[i] = i;
    do {
        Mono m(j);
        for (unsigned i = 0; i < j; ++i) m[i] = static_cast<std::uint16_t>(pts[idx[i]]);
        p.add_term(m, Rat(1));
    } while (next_subset(static_cast<unsigned>(pts.size()), idx));
    return p;
}

MultilinearPoly linear_form(unsigned v, const Bitset& c, const Rat& constant) {
    MultilinearPoly p = MultilinearPoly::constant(v, -constant);
    for (unsigned pt : c.points()) p.add_term({static_cast<std::uint16_t>(pt)}, Rat(1));
    return p;
}

MultilinearPoly zonal(unsigned v, const Bitset& c, const std::vector<long>& sizes) {
    for (std::size_t i = 0; i < sizes.size(); ++i)
        for (std::size_t j = i + 1; j < sizes.size(); ++j)
            if (sizes[i] == sizes[j]) throw InvalidInput("zonal sizes must be distinct");
    MultilinearPoly p = MultilinearPoly::constant(v, 1);
    for (long s : sizes) p = p * linear_form(v, c, Rat(s));
    return p;
}

MultilinearPoly g_bj(unsigned v, const Bitset& b, const Bitset& j, unsigned k) {
    if (!j.is_subset_of(b)) throw InvalidInput("g_bj requires J inside B");
    if (b.count() != k) throw InvalidInput("g_bj: |B| must equal k");
    unsigned jsize = static_cast<unsigned>(j.count());
    MultilinearPoly p = elementary_symmetric(v, b, jsize);
    Rat binom(binomial(k, static_cast<long>(jsize)));
    return p - MultilinearPoly::monomial(v, j, binom);
}

} // namespace di
