#include "di/design.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "di/errors.hpp"

namespace di {

Design::Design(unsigned v, unsigned k, std::vector<Block> blocks, std::string name)
    : v_(v), k_(k), blocks_(std::move(blocks)), name_(std::move(name)) {
    if (v == 0 || k == 0 || k >= v)
        throw InvalidInput("degenerate design parameters v=" + std::to_string(v) +
                           " k=" + std::to_string(k));
    block_set_.reserve(blocks_.size() * 2);
    for (const Block& b : blocks_) {
        if (b.size() != v_) throw InvalidInput("block universe mismatch");
        if (b.count() != k_)
            throw InvalidInput("block {" + b.to_string() + "} has " +
                               std::to_string(b.count()) + " points, expected k=" +
                               std::to_string(k_));
        if (!block_set_.insert(b).second)
            throw InvalidInput("repeated block {" + b.to_string() + "}");
    }
}

std::optional<std::size_t> Design::block_index(const Block& b) const {
    if (!is_block(b)) return std::nullopt;
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        if (blocks_[i] == b) return i;
    return std::nullopt;
}

std::vector<Block> Design::sorted_blocks() const {
    std::vector<Block> sorted = blocks_;
    std::sort(sorted.begin(), sorted.end(),
              [](const Block& a, const Block& b) { return a.lex_less(b); });
    return sorted;
}

Design Design::with_distinguished_non_block(Block b) const {
    if (is_block(b)) throw InvalidInput("distinguished non-block is a block");
    Design copy = *this;
    copy.non_block_ = std::move(b);
    return copy;
}

Design complete_design(unsigned v, unsigned k, const Budget& budget) {
    if (k == 0 || k >= v) throw InvalidInput("complete_design requires 0 < k < v");
    std::uint64_t count = checked_subset_count(v, k, budget, "complete_design");
    std::vector<Block> blocks;
    blocks.reserve(count);
    for_each_subset(v, k, [&](const Bitset& s) { blocks.push_back(s); });
    return Design(v, k, std::move(blocks),
                  "K(" + std::to_string(v) + "," + std::to_string(k) + ")");
}

DesignParams strength(const Design& d, int t_max, const Budget& budget) {
    unsigned v = d.v(), k = d.k();
    if (t_max < 0 || static_cast<unsigned>(t_max) > k) t_max = static_cast<int>(k);

    DesignParams params;
    params.v = v;
    params.k = k;
    params.lambda_s.push_back(Int(static_cast<unsigned long>(d.block_count())));
    params.lambda = params.lambda_s[0];

    for (int t = 1; t <= t_max; ++t) {
        checked_subset_count(v, static_cast<unsigned>(t), budget, "strength");
        Int lambda_t(-1);
        bool constant = true;
        std::vector<unsigned> pts(static_cast<std::size_t>(t));
        for (int i = 0; i < t; ++i) pts[static_cast<std::size_t>(i)] = static_cast<unsigned>(i);
        do {
            Bitset subset = Bitset::from_points(v, pts);
            unsigned long c = 0;
            for (const Block& b : d.blocks())
                if (subset.is_subset_of(b)) ++c;
            if (lambda_t < 0)
                lambda_t = c;
            else if (lambda_t != Int(c)) {
                constant = false;
                break;
            }
        } while (next_subset(v, pts));
        if (!constant) break;
        params.t = t;
        params.lambda = lambda_t;
        params.lambda_s.push_back(lambda_t);
    }
    return params;
}

static RelabeledDesign relabel_without_point(const Design& d, unsigned i,
                                             std::vector<Block> kept, const char* op) {
    if (kept.empty()) throw InvalidInput(std::string(op) + " design is empty");
    unsigned v = d.v();
    std::vector<unsigned> relabel;
    relabel.reserve(v - 1);
    for (unsigned p = 0; p < v; ++p)
        if (p != i) relabel.push_back(p);

    std::vector<Block> out;
    out.reserve(kept.size());
    for (const Block& b : kept) {
        Block nb(v - 1);
        for (unsigned p : b.points()) nb.set(p < i ? p : p - 1);
        out.push_back(nb);
    }
    unsigned nk = static_cast<unsigned>(out.front().count());
    Design nd(v - 1, nk, std::move(out), d.name() + (op[0] == 'd' ? "/der" : "/res") +
                                             std::to_string(i));
    return RelabeledDesign{std::move(nd), std::move(relabel)};
}

RelabeledDesign derived_design(const Design& d, unsigned i) {
    if (i >= d.v()) throw InvalidInput("derived_design: point out of range");
    std::vector<Block> kept;
    for (const Block& b : d.blocks())
        if (b.test(i)) {
            Block c = b;
            c.reset(i);
            kept.push_back(c);
        }
    return relabel_without_point(d, i, std::move(kept), "derived");
}

RelabeledDesign residual_design(const Design& d, unsigned i) {
    if (i >= d.v()) throw InvalidInput("residual_design: point out of range");
    std::vector<Block> kept;
    for (const Block& b : d.blocks())
        if (!b.test(i)) kept.push_back(b);
    return relabel_without_point(d, i, std::move(kept), "residual");
}

std::map<unsigned, std::size_t> intersection_distribution(const Design& d, const Block& b) {
    if (!d.is_block(b)) throw InvalidInput("intersection_distribution: not a block of the design");
    std::map<unsigned, std::size_t> dist;
    for (const Block& other : d.blocks())
        ++dist[static_cast<unsigned>(b.intersection_count(other))];
    return dist;
}

std::map<std::pair<unsigned, unsigned>, std::size_t>
pairwise_distribution(const Design& d, const Block& b1, const Block& b2) {
    if (!d.is_block(b1) || !d.is_block(b2))
        throw InvalidInput("pairwise_distribution: not a block of the design");
    std::map<std::pair<unsigned, unsigned>, std::size_t> dist;
    for (const Block& other : d.blocks())
        ++dist[{static_cast<unsigned>(b1.intersection_count(other)),
                static_cast<unsigned>(b2.intersection_count(other))}];
    return dist;
}

// ----- file format ---------------------------------------------------------

Design parse_design(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    std::string line;
    unsigned v = 0, k = 0, base = 0;
    bool have_header = false;
    std::vector<Block> blocks;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (!have_header) {
            if (!(ls >> v >> k)) {
                std::string rest;
                if (!(std::istringstream(line) >> rest)) continue; // blank line
                throw InvalidInput("design header must read 'v k [index-base]'");
            }
            if (!(ls >> base)) base = 0;
            if (base > 1) throw InvalidInput("index-base must be 0 or 1");
            have_header = true;
            continue;
        }
        std::vector<unsigned> pts;
        long p;
        while (ls >> p) {
            if (p < static_cast<long>(base) || p >= static_cast<long>(v + base))
                throw InvalidInput("point " + std::to_string(p) + " out of range on line " +
                                   std::to_string(lineno));
            pts.push_back(static_cast<unsigned>(p - static_cast<long>(base)));
        }
        if (pts.empty()) continue;
        blocks.push_back(Bitset::from_points(v, pts));
    }
    if (!have_header) throw InvalidInput("empty design file");
    return Design(v, k, std::move(blocks), name);
}

Design read_design(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open design file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_design(buf.str(), path);
}

std::string design_to_text(const Design& d) {
    std::ostringstream out;
    out << d.v() << ' ' << d.k() << " 0\n";
    for (const Block& b : d.sorted_blocks()) out << b.to_string() << '\n';
    return out.str();
}

void write_design(const Design& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write design file " + path);
    out << design_to_text(d);
}

std::string design_hash(const Design& d) {
    std::string text = design_to_text(d);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace di
