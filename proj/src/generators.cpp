#include "di/generators.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "di/errors.hpp"
#include "di/exactla.hpp"
#include "di/geometry.hpp"
#include "di/subsets.hpp"
#include "di/witt.hpp"

namespace di {

std::string family_name(Family f) {
    switch (f) {
        case Family::g0: return "g0";
        case Family::gBJ: return "gBJ";
        case Family::gY: return "gY";
        case Family::steiner: return "steiner";
        case Family::partial: return "partial";
        case Family::symbibd: return "symbibd";
        case Family::projective: return "projective";
        case Family::witt24: return "witt24";
        case Family::witt23: return "witt23";
        case Family::witt22: return "witt22";
        case Family::m12orbit: return "m12orbit";
        case Family::octagon: return "octagon";
        case Family::zonal: return "zonal";
        case Family::custom: return "custom";
    }
    return "custom";
}

Family family_from_name(const std::string& name) {
    for (Family f : {Family::g0, Family::gBJ, Family::gY, Family::steiner, Family::partial,
                     Family::symbibd, Family::projective, Family::witt24, Family::witt23,
                     Family::witt22, Family::m12orbit, Family::octagon, Family::zonal,
                     Family::custom})
        if (family_name(f) == name) return f;
    throw InvalidInput("unknown generator family '" + name + "'");
}

// ----- Generator -------------------------------------------------------------

Generator Generator::poly(MultilinearPoly p, std::string desc) {
    unsigned v = p.v();
    return Generator(v, -1, std::move(p), std::move(desc));
}

Generator Generator::square_marker(unsigned v, unsigned i) {
    if (i >= v) throw InvalidInput("marker variable out of range");
    return Generator(v, static_cast<int>(i), MultilinearPoly(v),
                     "x" + std::to_string(i) + "^2-x" + std::to_string(i));
}

const MultilinearPoly& Generator::polynomial() const {
    if (is_marker()) throw InvalidInput("square marker has no multilinear form");
    return poly_;
}

unsigned Generator::degree() const { return is_marker() ? 2 : poly_.degree(); }

Rat Generator::eval(const Bitset& c) const {
    if (is_marker()) {
        // x_i^2 - x_i vanishes at 01 points
        Rat x = c.test(marker_var()) ? 1 : 0;
        return x * x - x;
    }
    return poly_.eval(c);
}

Rat Generator::partial_at(unsigned h, const Bitset& c) const {
    if (is_marker()) {
        if (h != marker_var()) return Rat(0);
        return c.test(h) ? Rat(1) : Rat(-1); // 2x - 1 at a 01 point
    }
    return poly_.partial_derivative(h).eval(c);
}

// ----- shared helpers --------------------------------------------------------

namespace {

std::string points_str(const Bitset& b) { return "{" + b.to_string() + "}"; }

Rat binom_rat(unsigned long n, long k) { return Rat(binomial(n, k)); }

/// first t points of a set as a Bitset
Bitset first_points(const Bitset& set, unsigned t) {
    Bitset out(set.size());
    unsigned taken = 0;
    for (unsigned p : set.points()) {
        if (taken == t) break;
        out.set(p);
        ++taken;
    }
    if (taken != t) throw InvalidInput("set too small");
    return out;
}

} // namespace

// ----- materialization -------------------------------------------------------

void GeneratorSet::build_g0_into(std::vector<Generator>& out) const {
    MultilinearPoly linear = MultilinearPoly::constant(v_, Rat(-static_cast<long>(k_)));
    for (unsigned i = 0; i < v_; ++i) linear.add_term({static_cast<std::uint16_t>(i)}, 1);
    out.push_back(Generator::poly(std::move(linear), "x(X,1)-k"));
    for (unsigned i = 0; i < v_; ++i) out.push_back(Generator::square_marker(v_, i));
}

std::vector<Generator> GeneratorSet::materialize() const {
    std::vector<Generator> out;
    if (includes_g0_) build_g0_into(out);

    auto guard = [&](std::size_t count, std::size_t terms_each) {
        if (count > explicit_budget_ || count * std::max<std::size_t>(terms_each, 1) >
                                            explicit_budget_ * 10)
            throw BudgetExceeded("family " + family_name(family_) + " with " +
                                 std::to_string(count) +
                                 " generators is too large to expand term-wise");
    };

    switch (family_) {
        case Family::g0:
            break;
        case Family::gY: {
            const Design& d = *design_;
            guard(binomial_u64(v_, static_cast<long>(k_) - 1), k_ + 1);
            for_each_subset(v_, k_ - 1, [&](const Bitset& y) {
                MultilinearPoly g(v_);
                g.add_term([&] {
                    Mono m;
                    for (unsigned p : y.points()) m.push_back(static_cast<std::uint16_t>(p));
                    return m;
                }(), Rat(-1));
                for (unsigned j = 0; j < v_; ++j) {
                    if (y.test(j)) continue;
                    Bitset cand = y;
                    cand.set(j);
                    if (!d.is_block(cand)) continue;
                    Mono m;
                    for (unsigned p : cand.points()) m.push_back(static_cast<std::uint16_t>(p));
                    g.add_term(m, Rat(1));
                }
                out.push_back(Generator::poly(std::move(g), "g_Y Y=" + points_str(y)));
            });
            break;
        }
        case Family::steiner:
        case Family::partial: {
            const Design& d = *design_;
            guard(d.block_count() * binomial_u64(k_, t_), binomial_u64(k_, t_) + 1);
            for (const Block& b : d.blocks()) {
                auto pts = b.points();
                std::vector<unsigned> idx(t_);
                for (unsigned i = 0; i < t_; ++i) idx[i] = i;
                do {
                    Bitset tset(v_);
                    for (unsigned i = 0; i < t_; ++i) tset.set(pts[idx[i]]);
                    out.push_back(Generator::poly(
                        g_bj(v_, b, tset, k_),
                        "g_{B,T} B=" + points_str(b) + " T=" + points_str(tset)));
                } while (next_subset(k_, idx));
            }
            if (family_ == Family::partial) {
                // x^T for every uncovered t-set
                std::vector<unsigned> pts(t_);
                for (unsigned i = 0; i < t_; ++i) pts[i] = i;
                std::uint64_t rank = 0;
                do {
                    if (t_blocks_[rank].empty()) {
                        Bitset tset(v_);
                        for (unsigned p : pts) tset.set(p);
                        out.push_back(Generator::poly(MultilinearPoly::monomial(v_, tset),
                                                      "x^T T=" + points_str(tset)));
                    }
                    ++rank;
                } while (next_subset(v_, pts));
            }
            break;
        }
        case Family::symbibd: {
            const Design& d = *design_;
            Rat km(Int(k_) - lambda_);
            for (unsigned i = 0; i < v_; ++i)
                for (unsigned j = i + 1; j < v_; ++j) {
                    MultilinearPoly f(v_);
                    f.add_term({static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j)},
                               km);
                    f.add_term({}, Rat(lambda_ * lambda_));
                    for (const Block& b : d.blocks()) {
                        if (!b.test(i) || !b.test(j)) continue;
                        for (unsigned p : b.points())
                            f.add_term({static_cast<std::uint16_t>(p)}, Rat(-1));
                    }
                    out.push_back(Generator::poly(std::move(f),
                                                  "f_{i,j} i=" + std::to_string(i) +
                                                      " j=" + std::to_string(j)));
                }
            break;
        }
        case Family::projective: {
            for (const Block& line : lines_) {
                auto pts = line.points();
                for (unsigned a = 0; a < pts.size(); ++a)
                    for (unsigned b = a + 1; b < pts.size(); ++b) {
                        Bitset j(v_);
                        j.set(pts[a]);
                        j.set(pts[b]);
                        out.push_back(Generator::poly(
                            g_bj(v_, line, j, q_ + 1),
                            "g_{L,J} L=" + points_str(line) + " J=" + points_str(j)));
                    }
            }
            break;
        }
        case Family::witt24: {
            const Design& d = *design_;
            guard(d.block_count() * binomial_u64(k_, 2), 80);
            for (const Block& b : d.blocks()) {
                MultilinearPoly quad =
                    linear_form(v_, b, Rat(2)) * linear_form(v_, b, Rat(4));
                auto pts = b.points();
                for (unsigned a = 0; a < pts.size(); ++a)
                    for (unsigned c = a + 1; c < pts.size(); ++c) {
                        MultilinearPoly diff = MultilinearPoly::variable(v_, pts[a]) -
                                               MultilinearPoly::variable(v_, pts[c]);
                        out.push_back(Generator::poly(
                            diff * quad, "f_{B,i,j} B=" + points_str(b) + " i=" +
                                             std::to_string(pts[a]) + " j=" +
                                             std::to_string(pts[c])));
                    }
            }
            break;
        }
        case Family::witt23: {
            const Design& d = *design_;
            std::vector<unsigned> pts(3);
            for (unsigned i = 0; i < 3; ++i) pts[i] = i;
            std::uint64_t rank = 0;
            do {
                Bitset tset(v_);
                for (unsigned p : pts) tset.set(p);
                MultilinearPoly h = MultilinearPoly::constant(v_, 3);
                h.add_term({static_cast<std::uint16_t>(pts[0]),
                            static_cast<std::uint16_t>(pts[1]),
                            static_cast<std::uint16_t>(pts[2])},
                           12);
                for (unsigned a = 0; a < 3; ++a)
                    for (unsigned b = a + 1; b < 3; ++b)
                        h.add_term({static_cast<std::uint16_t>(std::min(pts[a], pts[b])),
                                    static_cast<std::uint16_t>(std::max(pts[a], pts[b]))},
                                   -3);
                for (std::size_t bi : t_blocks_[rank])
                    h = h - elementary_symmetric(v_, d.blocks()[bi].minus(tset), 2);
                out.push_back(
                    Generator::poly(std::move(h), "h_{i,j,k} T=" + points_str(tset)));
                ++rank;
            } while (next_subset(v_, pts));
            break;
        }
        case Family::witt22: {
            const Design& d = *design_;
            for (const Block& b : d.blocks()) {
                auto pts = b.points();
                for (unsigned a = 0; a < pts.size(); ++a)
                    for (unsigned c = a + 1; c < pts.size(); ++c) {
                        Bitset rest = b;
                        rest.reset(pts[a]);
                        rest.reset(pts[c]);
                        MultilinearPoly diff = MultilinearPoly::variable(v_, pts[a]) -
                                               MultilinearPoly::variable(v_, pts[c]);
                        out.push_back(Generator::poly(
                            diff * linear_form(v_, rest, Rat(1)),
                            "h_{i,j,B} B=" + points_str(b) + " i=" + std::to_string(pts[a]) +
                                " j=" + std::to_string(pts[c])));
                    }
            }
            break;
        }
        case Family::m12orbit: {
            guard(compact_.size(), 27);
            for (std::size_t n = 0; n < compact_.size(); ++n) {
                MultilinearPoly p(v_);
                for (const auto& [mask, coeff] : compact_[n]) {
                    Mono m;
                    for (unsigned i = 0; i < v_; ++i)
                        if (mask & (1u << i)) m.push_back(static_cast<std::uint16_t>(i));
                    p.add_term(m, Rat(coeff));
                }
                out.push_back(
                    Generator::poly(std::move(p), "orbitF[" + std::to_string(n) + "]"));
            }
            break;
        }
        case Family::gBJ:
        case Family::octagon:
        case Family::zonal:
        case Family::custom: {
            for (std::size_t i = 0; i < explicit_family_.size(); ++i)
                out.push_back(Generator::poly(explicit_family_[i],
                                              family_name(family_) + "[" +
                                                  std::to_string(i) + "]"));
            break;
        }
    }
    return out;
}

const std::vector<Generator>& GeneratorSet::generators() const {
    if (!cached_) {
        cache_ = materialize();
        cached_ = true;
    }
    return cache_;
}

std::size_t GeneratorSet::family_size() const {
    switch (family_) {
        case Family::g0: return 0;
        case Family::gY: return binomial_u64(v_, static_cast<long>(k_) - 1);
        case Family::steiner: return design_->block_count() * binomial_u64(k_, t_);
        case Family::partial: {
            std::size_t uncovered = 0;
            for (const auto& blocks : t_blocks_)
                if (blocks.empty()) ++uncovered;
            return design_->block_count() * binomial_u64(k_, t_) + uncovered;
        }
        case Family::symbibd: return binomial_u64(v_, 2);
        case Family::projective: {
            std::size_t per = lines_.empty() ? 0 : binomial_u64(q_ + 1, 2);
            return lines_.size() * per;
        }
        case Family::witt24: return design_->block_count() * binomial_u64(k_, 2);
        case Family::witt23: return binomial_u64(v_, 3);
        case Family::witt22: return design_->block_count() * binomial_u64(k_, 2);
        case Family::m12orbit: return compact_.size();
        case Family::gBJ:
        case Family::octagon:
        case Family::zonal:
        case Family::custom: return explicit_family_.size();
    }
    return 0;
}

// ----- witness dispatch ------------------------------------------------------

std::optional<NonvanishingWitness> GeneratorSet::generic_witness(const Bitset& c) const {
    for (const Generator& g : generators()) {
        Rat value = g.eval(c);
        if (value != 0) return NonvanishingWitness{g.description(), value};
    }
    return std::nullopt;
}

std::optional<NonvanishingWitness> GeneratorSet::nonvanishing_witness(const Bitset& c) const {
    if (c.size() != v_ || c.count() != k_)
        throw InvalidInput("witness query must be a k-subset of the point set");

    switch (family_) {
        case Family::g0:
            // G0 vanishes on every k-subset
            return std::nullopt;

        case Family::gY: {
            const Design& d = *design_;
            // every monomial of g_Y contains Y, so only Y inside C matter;
            // g_Y(C) = |J ∩ C| - 1 with J = { j : Y+j is a block }
            auto pts = c.points();
            for (unsigned skip = 0; skip < pts.size(); ++skip) {
                Bitset y = c;
                y.reset(pts[skip]);
                long j_in_c = 0;
                for (unsigned p : pts)
                    if (!y.test(p)) {
                        Bitset cand = y;
                        cand.set(p);
                        if (d.is_block(cand)) ++j_in_c;
                    }
                Rat value(j_in_c - 1);
                if (value != 0)
                    return NonvanishingWitness{"g_Y Y=" + points_str(y), value};
            }
            return std::nullopt;
        }

        case Family::steiner:
        case Family::partial: {
            const Design& d = *design_;
            // g_{B,T}(C) = C(|C∩B|, t) - C(k,t)[T ⊆ C]; by the intersection
            // trichotomy some generator of block B is nonzero at C exactly
            // when t <= |C∩B| < k, and then T inside C∩B witnesses it.
            for (const Block& b : d.blocks()) {
                unsigned m = static_cast<unsigned>(c.intersection_count(b));
                if (m < t_ || m == k_) continue;
                Bitset tset = first_points(c & b, t_);
                Rat value = binom_rat(m, t_) - binom_rat(k_, t_); // T ⊆ C holds
                return NonvanishingWitness{
                    "g_{B,T} B=" + points_str(b) + " T=" + points_str(tset), value};
            }
            if (family_ == Family::partial) {
                // uncovered t-subsets of C give x^T(C) = 1
                auto pts = c.points();
                std::vector<unsigned> idx(t_);
                for (unsigned i = 0; i < t_; ++i) idx[i] = i;
                do {
                    std::vector<unsigned> tpts(t_);
                    for (unsigned i = 0; i < t_; ++i) tpts[i] = pts[idx[i]];
                    std::uint64_t rank = subset_lex_rank(v_, tpts);
                    if (t_blocks_[rank].empty()) {
                        Bitset tset = Bitset::from_points(v_, tpts);
                        return NonvanishingWitness{"x^T T=" + points_str(tset), Rat(1)};
                    }
                } while (next_subset(static_cast<unsigned>(pts.size()), idx));
            }
            return std::nullopt;
        }

        case Family::symbibd: {
            const Design& d = *design_;
            Rat lambda2(lambda_ * lambda_);
            Rat km(Int(k_) - lambda_);
            for (unsigned i = 0; i < v_; ++i)
                for (unsigned j = i + 1; j < v_; ++j) {
                    Rat value = lambda2;
                    if (c.test(i) && c.test(j)) value += km;
                    for (const Block& b : d.blocks())
                        if (b.test(i) && b.test(j))
                            value -= Rat(static_cast<long>(c.intersection_count(b)));
                    if (value != 0)
                        return NonvanishingWitness{
                            "f_{i,j} i=" + std::to_string(i) + " j=" + std::to_string(j),
                            value};
                }
            return std::nullopt;
        }

        case Family::projective: {
            // g_{L,J}(C) = C(|L∩C|,2) - C(q+1,2)[J ⊆ C] is nonzero for some J
            // exactly when 2 <= |L∩C| <= q
            for (const Block& line : lines_) {
                unsigned m = static_cast<unsigned>(c.intersection_count(line));
                if (m < 2 || m == q_ + 1) continue;
                Bitset j = first_points(line & c, 2);
                Rat value = binom_rat(m, 2) - binom_rat(q_ + 1, 2);
                return NonvanishingWitness{
                    "g_{L,J} L=" + points_str(line) + " J=" + points_str(j), value};
            }
            return std::nullopt;
        }

        case Family::witt24: {
            const Design& d = *design_;
            // f_{B,i,j}(C) = (chi_i - chi_j)(m-2)(m-4): some pair separates C
            // and B exactly when 0 < m < 8, so the family vanishes at C
            // exactly when every block meets C in 0, 2, 4 or 8 points.
            for (const Block& b : d.blocks()) {
                unsigned m = static_cast<unsigned>(c.intersection_count(b));
                if (m == 0 || m == 2 || m == 4 || m == 8) continue;
                unsigned i = (b & c).lowest();
                unsigned j = b.minus(c).lowest();
                Rat value((static_cast<long>(m) - 2) * (static_cast<long>(m) - 4));
                return NonvanishingWitness{"f_{B,i,j} B=" + points_str(b) +
                                               " i=" + std::to_string(i) +
                                               " j=" + std::to_string(j),
                                           value};
            }
            return std::nullopt;
        }

        case Family::witt23: {
            const Design& d = *design_;
            auto eval_t = [&](const std::vector<unsigned>& tpts) {
                Bitset tset = Bitset::from_points(v_, tpts);
                unsigned inter = static_cast<unsigned>(c.intersection_count(tset));
                Rat value(3);
                if (inter == 3) value += 12;
                value -= 3 * binom_rat(inter, 2);
                for (std::size_t bi : t_blocks_[subset_lex_rank(v_, tpts)]) {
                    Bitset rest = d.blocks()[bi].minus(tset);
                    value -= binom_rat(static_cast<unsigned>(c.intersection_count(rest)), 2);
                }
                return value;
            };
            // fast phase: T inside C (the proof's witnesses live there)
            auto pts = c.points();
            std::vector<unsigned> idx{0, 1, 2};
            do {
                std::vector<unsigned> tpts{pts[idx[0]], pts[idx[1]], pts[idx[2]]};
                Rat value = eval_t(tpts);
                if (value != 0)
                    return NonvanishingWitness{
                        "h_{i,j,k} T=" + points_str(Bitset::from_points(v_, tpts)), value};
            } while (next_subset(static_cast<unsigned>(pts.size()), idx));
            // full phase: every remaining t-set (runs when C is a block)
            std::vector<unsigned> tpts{0, 1, 2};
            do {
                Rat value = eval_t(tpts);
                if (value != 0)
                    return NonvanishingWitness{
                        "h_{i,j,k} T=" + points_str(Bitset::from_points(v_, tpts)), value};
            } while (next_subset(v_, tpts));
            return std::nullopt;
        }

        case Family::witt22: {
            const Design& d = *design_;
            // h_{i,j,B}(C) = (chi_i - chi_j)(|C ∩ (B\{i,j})| - 1); choosing
            // i in B∩C, j in B\C makes it m-2, so the family vanishes at C
            // exactly when every block meets C in 0, 2 or 6 points.
            for (const Block& b : d.blocks()) {
                unsigned m = static_cast<unsigned>(c.intersection_count(b));
                if (m == 0 || m == 2 || m == 6) continue;
                unsigned i = (b & c).lowest();
                unsigned j = b.minus(c).lowest();
                Rat value(static_cast<long>(m) - 2);
                return NonvanishingWitness{"h_{i,j,B} B=" + points_str(b) +
                                               " i=" + std::to_string(i) +
                                               " j=" + std::to_string(j),
                                           value};
            }
            return std::nullopt;
        }

        case Family::m12orbit: {
            std::uint16_t cmask = 0;
            for (unsigned p : c.points()) cmask |= static_cast<std::uint16_t>(1u << p);
            for (std::size_t n = 0; n < compact_.size(); ++n) {
                long value = 0;
                for (const auto& [mask, coeff] : compact_[n])
                    if ((mask & ~cmask) == 0) value += coeff;
                if (value != 0)
                    return NonvanishingWitness{"orbitF[" + std::to_string(n) + "]",
                                               Rat(value)};
            }
            return std::nullopt;
        }

        case Family::gBJ:
        case Family::octagon:
        case Family::zonal:
        case Family::custom:
            return generic_witness(c);
    }
    return std::nullopt;
}

// ----- family constructors ---------------------------------------------------

GeneratorSet trivial_generators(unsigned v, unsigned k) {
    if (k == 0 || k >= v) throw InvalidInput("trivial_generators requires 0 < k < v");
    GeneratorSet g;
    g.family_ = Family::g0;
    g.v_ = v;
    g.k_ = k;
    g.max_degree_ = 2;
    return g;
}

GeneratorSet gY_generators(const std::shared_ptr<const Design>& d, const Budget& budget) {
    checked_subset_count(d->v(), d->k() - 1, budget, "gY_generators");
    GeneratorSet g;
    g.family_ = Family::gY;
    g.design_ = d;
    g.v_ = d->v();
    g.k_ = d->k();
    g.max_degree_ = d->k();
    return g;
}

namespace {

/// blocks indexed by the lex rank of each t-subset they cover
std::vector<std::vector<std::size_t>> t_subset_blocks(const Design& d, unsigned t,
                                                      const Budget& budget) {
    std::uint64_t ranks = checked_subset_count(d.v(), t, budget, "t-subset coverage");
    std::vector<std::vector<std::size_t>> map(ranks);
    for (std::size_t bi = 0; bi < d.block_count(); ++bi) {
        auto pts = d.blocks()[bi].points();
        std::vector<unsigned> idx(t);
        for (unsigned i = 0; i < t; ++i) idx[i] = i;
        do {
            std::vector<unsigned> tpts(t);
            for (unsigned i = 0; i < t; ++i) tpts[i] = pts[idx[i]];
            map[subset_lex_rank(d.v(), tpts)].push_back(bi);
        } while (next_subset(static_cast<unsigned>(pts.size()), idx));
    }
    return map;
}

} // namespace

GeneratorSet steiner_generators(const std::shared_ptr<const Design>& d, unsigned t,
                                const Budget& budget) {
    if (t == 0 || t >= d->k()) throw InvalidInput("steiner_generators requires 0 < t < k");
    auto coverage = t_subset_blocks(*d, t, budget);
    for (std::size_t r = 0; r < coverage.size(); ++r) {
        if (coverage[r].size() > 1)
            throw InvalidInput("not a Steiner system: a " + std::to_string(t) +
                               "-set lies in " + std::to_string(coverage[r].size()) +
                               " blocks (lambda > 1)");
        if (coverage[r].empty())
            throw InvalidInput("not a t-(v,k,1) design: an uncovered " + std::to_string(t) +
                               "-set exists (use the partial family)");
    }
    GeneratorSet g;
    g.family_ = Family::steiner;
    g.design_ = d;
    g.v_ = d->v();
    g.k_ = d->k();
    g.t_ = t;
    g.t_blocks_ = std::move(coverage);
    g.max_degree_ = std::max(2u, t);
    return g;
}

GeneratorSet partial_design_generators(const std::shared_ptr<const Design>& d, unsigned t,
                                       const Budget& budget) {
    if (t == 0 || t >= d->k()) throw InvalidInput("partial family requires 0 < t < k");
    auto coverage = t_subset_blocks(*d, t, budget);
    for (std::size_t r = 0; r < coverage.size(); ++r)
        if (coverage[r].size() > 1)
            throw InvalidInput("not a partial t-(v,k,1) design: a " + std::to_string(t) +
                               "-set is covered twice");
    GeneratorSet g;
    g.family_ = Family::partial;
    g.design_ = d;
    g.v_ = d->v();
    g.k_ = d->k();
    g.t_ = t;
    g.t_blocks_ = std::move(coverage);
    g.max_degree_ = std::max(2u, t);
    return g;
}

GeneratorSet symbibd_generators(const std::shared_ptr<const Design>& d) {
    unsigned v = d->v(), k = d->k();
    if (d->block_count() != v)
        throw InvalidInput("symbibd_generators requires a symmetric 2-design "
                           "(Fisher: b >= v, symmetric means b = v; got b = " +
                           std::to_string(d->block_count()) + ")");
    // constant pair coverage
    Int lambda(-1);
    for (unsigned i = 0; i < v; ++i)
        for (unsigned j = i + 1; j < v; ++j) {
            long c = 0;
            for (const Block& b : d->blocks())
                if (b.test(i) && b.test(j)) ++c;
            if (lambda < 0)
                lambda = c;
            else if (lambda != Int(c))
                throw InvalidInput("not a 2-design: pair coverage is not constant");
        }
    if (lambda <= 0 || lambda >= Int(k))
        throw InvalidInput("degenerate symmetric design (lambda = " + lambda.get_str() + ")");
    GeneratorSet g;
    g.family_ = Family::symbibd;
    g.design_ = d;
    g.v_ = v;
    g.k_ = k;
    g.lambda_ = lambda;
    g.max_degree_ = 2;
    return g;
}

GeneratorSet projective_generators(unsigned d, unsigned e, unsigned q, const Budget& budget) {
    auto design = std::make_shared<const Design>(projective_design(d, e, q, budget));
    GeneratorSet g;
    g.family_ = Family::projective;
    g.design_ = design;
    g.v_ = design->v();
    g.k_ = design->k();
    g.lines_ = lines_of_pg(d, q, budget);
    g.q_ = q;
    g.max_degree_ = 2;
    return g;
}

GeneratorSet witt24_generators() {
    auto design = std::make_shared<const Design>(witt24());
    GeneratorSet g;
    g.family_ = Family::witt24;
    g.design_ = design;
    g.v_ = 24;
    g.k_ = 8;
    g.max_degree_ = 3;
    return g;
}

GeneratorSet witt23_generators() {
    auto design = std::make_shared<const Design>(witt23());
    GeneratorSet g;
    g.family_ = Family::witt23;
    g.design_ = design;
    g.v_ = 23;
    g.k_ = 7;
    g.t_blocks_ = t_subset_blocks(*design, 3, global_budget());
    for (const auto& blocks : g.t_blocks_)
        if (blocks.size() != 5)
            throw ConstructionError("witt23: every 3-set must lie in exactly 5 blocks");
    g.max_degree_ = 3;
    return g;
}

GeneratorSet witt22_generators() {
    auto design = std::make_shared<const Design>(witt22());
    GeneratorSet g;
    g.family_ = Family::witt22;
    g.design_ = design;
    g.v_ = 22;
    g.k_ = 6;
    g.max_degree_ = 2;
    return g;
}

GeneratorSet m12_orbit_generators() {
    auto design = std::make_shared<const Design>(witt12());
    // the paper's F in 0-indexed variables: nine terms x_a x_b (x_c - x_d)
    struct Row {
        unsigned a, b, c, d;
    };
    const Row rows[] = {
        {0, 3, 9, 10}, {0, 4, 10, 7}, {0, 8, 7, 9},
        {1, 8, 9, 10}, {1, 3, 10, 7}, {1, 4, 7, 9},
        {2, 4, 9, 10}, {2, 8, 10, 7}, {2, 3, 7, 9},
    };
    using Compact = std::vector<std::pair<std::uint16_t, std::int8_t>>;
    Compact base;
    for (const Row& r : rows) {
        base.emplace_back(static_cast<std::uint16_t>((1u << r.a) | (1u << r.b) | (1u << r.c)),
                          1);
        base.emplace_back(static_cast<std::uint16_t>((1u << r.a) | (1u << r.b) | (1u << r.d)),
                          -1);
    }

    auto normalize = [](Compact p) {
        std::sort(p.begin(), p.end());
        if (!p.empty() && p.front().second < 0)
            for (auto& [m, c] : p) c = static_cast<std::int8_t>(-c);
        return p;
    };

    // sanity: F vanishes on each block of the design
    {
        for (const Block& b : design->blocks()) {
            std::uint16_t mask = 0;
            for (unsigned p : b.points()) mask |= static_cast<std::uint16_t>(1u << p);
            long val = 0;
            for (const auto& [m, c] : base)
                if ((m & ~mask) == 0) val += c;
            if (val != 0) throw ConstructionError("base orbit polynomial does not vanish");
        }
    }

    std::set<Compact> orbit;
    for (const PermGroup::Perm& perm : m12_group().elements()) {
        Compact image;
        image.reserve(base.size());
        for (const auto& [mask, coeff] : base) {
            std::uint16_t m = 0;
            for (unsigned i = 0; i < 12; ++i)
                if (mask & (1u << i)) m |= static_cast<std::uint16_t>(1u << perm[i]);
            image.emplace_back(m, coeff);
        }
        orbit.insert(normalize(std::move(image)));
    }

    GeneratorSet g;
    g.family_ = Family::m12orbit;
    g.design_ = design;
    g.v_ = 12;
    g.k_ = 6;
    g.compact_.assign(orbit.begin(), orbit.end());
    g.max_degree_ = 3;
    return g;
}

// ----- octagon ----------------------------------------------------------------

namespace {

struct OctagonData {
    std::vector<unsigned> b1_pts;
    // the two candidate neighbour pairs (as point lists) per b1 point
    std::vector<std::array<std::vector<unsigned>, 2>> choices;
};

OctagonData octagon_data(const Design& d, std::size_t i1, std::size_t i2) {
    const Block& b1 = d.blocks().at(i1);
    const Block& b2 = d.blocks().at(i2);
    if (b1.intersects(b2)) throw InvalidInput("octagon blocks must be disjoint");
    OctagonData data;
    data.b1_pts = b1.points();
    for (unsigned i : data.b1_pts) {
        std::vector<std::vector<unsigned>> pairs;
        for (const Block& b : d.blocks()) {
            Bitset with_b1 = b & b1;
            if (with_b1.count() != 1 || !with_b1.test(i)) continue;
            Bitset with_b2 = b & b2;
            if (with_b2.count() != 2) continue;
            pairs.push_back(with_b2.points());
        }
        if (pairs.size() != 2)
            throw InvalidInput("octagon structure: expected exactly two blocks meeting "
                               "block1 only in each point");
        std::sort(pairs.begin(), pairs.end());
        data.choices.push_back({pairs[0], pairs[1]});
    }
    return data;
}

/// Walks the bipartite neighbour graph; returns the octagon as an alternating
/// cycle p0, n0, p1, n1, ... of length 8, or empty if it does not close.
std::vector<unsigned> octagon_cycle(const OctagonData& data, unsigned orientation) {
    std::map<unsigned, std::vector<unsigned>> adj; // point -> neighbours
    for (unsigned idx = 0; idx < 4; ++idx) {
        unsigned i = data.b1_pts[idx];
        const auto& pair = data.choices[idx][(orientation >> idx) & 1];
        for (unsigned w : pair) {
            adj[i].push_back(w);
            adj[w].push_back(i);
        }
    }
    for (const auto& [p, ns] : adj)
        if (ns.size() != 2) return {};
    // follow the cycle from the first b1 point
    std::vector<unsigned> cycle;
    unsigned start = data.b1_pts[0];
    unsigned prev = start, cur = adj[start][0];
    cycle.push_back(start);
    while (cur != start) {
        cycle.push_back(cur);
        const auto& ns = adj[cur];
        unsigned next = (ns[0] == prev) ? ns[1] : ns[0];
        prev = cur;
        cur = next;
    }
    return cycle.size() == 8 ? cycle : std::vector<unsigned>{};
}

} // namespace

MultilinearPoly octagon_polynomial(const Design& d, const OctagonSpec& spec) {
    OctagonData data = octagon_data(d, spec.block1, spec.block2);
    std::vector<unsigned> cycle = octagon_cycle(data, spec.orientation);
    if (cycle.empty())
        throw InvalidInput("orientation " + std::to_string(spec.orientation) +
                           " does not close an octagon");
    MultilinearPoly g(d.v());
    for (unsigned e = 0; e < 8; ++e) {
        unsigned a = cycle[e], b = cycle[(e + 1) % 8];
        Mono m{static_cast<std::uint16_t>(std::min(a, b)),
               static_cast<std::uint16_t>(std::max(a, b))};
        g.add_term(m, (e % 2 == 0) ? Rat(1) : Rat(-1));
    }
    return g;
}

std::vector<OctagonSpec> octagon_search(const Design& d) {
    std::vector<OctagonSpec> verified;
    std::set<std::map<Mono, Rat, MonoLess>> seen; // dedupe modulo global sign
    for (std::size_t i1 = 0; i1 < d.block_count(); ++i1)
        for (std::size_t i2 = i1 + 1; i2 < d.block_count(); ++i2) {
            if (d.blocks()[i1].intersects(d.blocks()[i2])) continue;
            OctagonData data = octagon_data(d, i1, i2);
            for (unsigned orientation = 0; orientation < 16; ++orientation) {
                if (octagon_cycle(data, orientation).empty()) continue;
                OctagonSpec spec{i1, i2, orientation};
                MultilinearPoly g = octagon_polynomial(d, spec);
                bool vanishes = true;
                for (const Block& b : d.blocks())
                    if (g.eval(b) != 0) {
                        vanishes = false;
                        break;
                    }
                if (!vanishes) continue;
                // canonical sign: leading coefficient positive
                MultilinearPoly canon = g;
                if (!canon.terms().empty() && canon.terms().begin()->second < 0)
                    canon = canon.scaled(Rat(-1));
                if (seen.insert(canon.terms()).second) verified.push_back(spec);
            }
        }
    return verified;
}

GeneratorSet octagon_generators(const std::shared_ptr<const Design>& d,
                                const std::vector<OctagonSpec>& specs) {
    GeneratorSet g;
    g.family_ = Family::octagon;
    g.design_ = d;
    g.v_ = d->v();
    g.k_ = d->k();
    g.max_degree_ = 2;
    for (const OctagonSpec& spec : specs)
        g.explicit_family_.push_back(octagon_polynomial(*d, spec));
    return g;
}

GeneratorSet custom_generators(unsigned v, unsigned k, std::vector<MultilinearPoly> polys,
                               bool add_g0, Family tag,
                               const std::shared_ptr<const Design>& design) {
    GeneratorSet g;
    g.family_ = tag;
    g.design_ = design;
    g.v_ = v;
    g.k_ = k;
    g.includes_g0_ = add_g0;
    unsigned deg = add_g0 ? 2 : 0;
    for (const MultilinearPoly& p : polys) {
        if (p.v() != v) throw InvalidInput("polynomial universe mismatch");
        deg = std::max(deg, p.degree());
    }
    g.explicit_family_ = std::move(polys);
    g.max_degree_ = deg;
    if (tag == Family::g0 || tag == Family::steiner || tag == Family::partial ||
        tag == Family::witt23 || tag == Family::m12orbit)
        g.family_ = Family::custom; // structured tags need their family data
    return g;
}

unsigned jacobian_rank(const GeneratorSet& g, const Bitset& c) {
    const std::vector<Generator>& gens = g.generators();
    ExactMatrix jac(g.v(), gens.size());
    for (std::size_t col = 0; col < gens.size(); ++col)
        for (unsigned h = 0; h < g.v(); ++h) {
            Rat val = gens[col].partial_at(h, c);
            if (val != 0) jac.set(h, col, val);
        }
    return jac.rank();
}

// ----- text format -------------------------------------------------------------

std::string generator_set_to_text(const GeneratorSet& g) {
    std::ostringstream out;
    out << "family " << family_name(g.family()) << '\n';
    out << "v " << g.v() << '\n';
    out << "k " << g.k() << '\n';
    for (const Generator& gen : g.generators()) {
        if (gen.is_marker()) {
            out << "marker " << gen.marker_var() << '\n';
            continue;
        }
        out << "poly\n";
        for (const auto& [m, coeff] : gen.polynomial().terms()) {
            out << coeff.get_str() << ':';
            for (std::uint16_t i : m) out << ' ' << i;
            out << '\n';
        }
    }
    return out.str();
}

GeneratorSet parse_generator_set(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Family tag = Family::custom;
    unsigned v = 0, k = 0;
    std::vector<MultilinearPoly> polys;
    std::vector<unsigned> markers;
    bool has_linear_g0 = false;
    MultilinearPoly current(1);
    bool in_poly = false;

    auto flush = [&] {
        if (!in_poly) return;
        // recognize the G0 linear generator so includes_g0 can be detected
        MultilinearPoly linear = MultilinearPoly::constant(v, Rat(-static_cast<long>(k)));
        for (unsigned i = 0; i < v; ++i) linear.add_term({static_cast<std::uint16_t>(i)}, 1);
        if (current == linear)
            has_linear_g0 = true;
        else
            polys.push_back(current);
        in_poly = false;
    };

    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "family") {
            std::string name;
            ls >> name;
            tag = family_from_name(name);
        } else if (head == "v") {
            ls >> v;
        } else if (head == "k") {
            flush();
            ls >> k;
        } else if (head == "marker") {
            flush();
            unsigned i;
            ls >> i;
            markers.push_back(i);
        } else if (head == "poly") {
            flush();
            if (v == 0) throw InvalidInput("generator file: v must precede polynomials");
            current = MultilinearPoly(v);
            in_poly = true;
        } else {
            // term line "coeff: i1 i2 ..."
            if (!in_poly) throw InvalidInput("generator file: term outside poly section");
            auto colon = head.find(':');
            if (colon == std::string::npos) throw InvalidInput("term line missing ':'");
            Rat coeff = parse_rational(head.substr(0, colon));
            Mono m;
            unsigned i;
            while (ls >> i) m.push_back(static_cast<std::uint16_t>(i));
            std::sort(m.begin(), m.end());
            current.add_term(m, coeff);
        }
    }
    flush();
    if (v == 0 || k == 0) throw InvalidInput("generator file needs v and k headers");
    bool g0 = has_linear_g0 && markers.size() == v;
    GeneratorSet g = custom_generators(v, k, std::move(polys), g0,
                                       tag == Family::g0 ? Family::custom : tag);
    if (!g0 && (has_linear_g0 || !markers.empty()))
        throw InvalidInput("generator file contains a partial G0 (markers and the linear "
                           "generator must both be present)");
    return g;
}

GeneratorSet read_generator_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open generator file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_generator_set(buf.str());
}

void write_generator_set(const GeneratorSet& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write generator file " + path);
    out << generator_set_to_text(g);
}

} // namespace di
