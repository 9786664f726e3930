#include "divfam/family.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

namespace divfam {

std::uint32_t BitVec::count() const {
    std::uint32_t c = 0;
    for (std::uint64_t w : w_) c += static_cast<std::uint32_t>(std::popcount(w));
    return c;
}

BitVec BitVec::operator&(const BitVec& o) const {
    BitVec out(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) out.w_[i] = w_[i] & o.w_[i];
    return out;
}

BitVec BitVec::operator|(const BitVec& o) const {
    BitVec out(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) out.w_[i] = w_[i] | o.w_[i];
    return out;
}

bool BitVec::operator<(const BitVec& o) const {
    // '0' < '1' at the first differing coordinate.
    for (std::size_t i = 0; i < w_.size(); ++i) {
        std::uint64_t diff = w_[i] ^ o.w_[i];
        if (diff) {
            std::uint64_t low = diff & (~diff + 1);
            return (w_[i] & low) == 0;
        }
    }
    return false;
}

bool BitVec::is_zero() const {
    return std::all_of(w_.begin(), w_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<std::uint32_t> BitVec::bits() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < n_; ++i)
        if (test(i)) out.push_back(i);
    return out;
}

std::string BitVec::to_string() const {
    std::string s(n_, '0');
    for (std::uint32_t i = 0; i < n_; ++i)
        if (test(i)) s[i] = '1';
    return s;
}

SetFamily SetFamily::from_members(std::uint32_t ground_size, std::uint32_t modulus,
                                  std::vector<BitVec> members) {
    for (const auto& m : members)
        if (m.size() != ground_size) throw ShapeError("member length differs from ground size");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    SetFamily f(ground_size, modulus);
    f.members_ = std::move(members);
    return f;
}

bool SetFamily::contains(const BitVec& v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
}

ModVector SetFamily::char_vector(std::size_t i, std::uint32_t modulus) const {
    ModVector v(modulus, n_);
    for (std::uint32_t b : members_[i].bits()) v.set(b, 1);
    return v;
}

std::vector<ModVector> SetFamily::char_vectors(std::uint32_t modulus) const {
    std::vector<ModVector> out;
    out.reserve(members_.size());
    for (std::size_t i = 0; i < members_.size(); ++i) out.push_back(char_vector(i, modulus));
    return out;
}

SetFamily parse_family(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::uint32_t n = 0, mod = 0;
    bool header_seen = false;
    std::vector<BitVec> members;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            unsigned pn = 0, pm = 0;
            if (std::sscanf(line.c_str(), "n=%u mod=%u", &pn, &pm) != 2 || pm < 2)
                throw ParseError("expected header 'n=<int> mod=<int>'", lineno);
            n = pn;
            mod = pm;
            header_seen = true;
            continue;
        }
        if (line.size() != n) throw ParseError("member line length differs from n", lineno);
        BitVec v(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            if (line[i] == '1') v.set(i);
            else if (line[i] != '0') throw ParseError("member line must be a 0/1 string", lineno);
        }
        members.push_back(std::move(v));
    }
    if (!header_seen) throw ParseError("missing header line", lineno ? lineno : 1);
    return SetFamily::from_members(n, mod, std::move(members));
}

std::string format_family(const SetFamily& family) {
    std::ostringstream out;
    out << "n=" << family.ground_size() << " mod=" << family.modulus() << "\n";
    for (const auto& m : family.members()) out << m.to_string() << "\n";
    return out.str();
}

SetFamily product(const SetFamily& f, const SetFamily& g) {
    if (f.ground_size() != g.ground_size())
        throw ShapeError("product: ground sizes differ");
    std::vector<BitVec> out;
    out.reserve(f.size() * g.size());
    for (const auto& a : f.members())
        for (const auto& b : g.members()) out.push_back(a & b);
    return SetFamily::from_members(f.ground_size(), f.modulus(), std::move(out));
}

SetFamily power(const SetFamily& f, std::uint64_t k) {
    // F^{i+1} ⊇ F^i for 0/1 families, so the sequence stabilizes; stop there.
    SetFamily current = f;
    for (std::uint64_t i = 1; i < k; ++i) {
        SetFamily next = product(current, f);
        if (next == current) break;
        current = std::move(next);
    }
    return current;
}

ClosureProfile closure_profile(const SetFamily& f, std::uint32_t ell) {
    // Layered BFS over products; each element is tagged with its minimal
    // number of factors and a provenance chain for witness extraction.
    struct Node {
        BitVec v;
        std::int64_t parent;
        std::uint32_t member;
        std::uint32_t depth;
    };
    ClosureProfile profile;
    std::vector<Node> nodes;
    std::map<BitVec, std::size_t> seen;

    auto norm_bad = [&](const BitVec& v) { return v.count() % ell != 0; };
    auto witness_of = [&](std::size_t idx) {
        std::vector<std::uint32_t> w;
        for (std::int64_t cur = static_cast<std::int64_t>(idx); cur >= 0; cur = nodes[cur].parent)
            w.push_back(nodes[cur].member);
        std::reverse(w.begin(), w.end());
        return w;
    };

    for (std::uint32_t i = 0; i < f.size(); ++i) {
        const BitVec& m = f.member(i);
        if (seen.count(m)) continue;
        seen.emplace(m, nodes.size());
        nodes.push_back({m, -1, i, 1});
    }
    std::size_t layer_begin = 0, layer_end = nodes.size();
    std::uint32_t depth = 1;
    while (layer_begin < layer_end) {
        if (profile.bad_depth == 0) {
            for (std::size_t idx = layer_begin; idx < layer_end; ++idx) {
                if (norm_bad(nodes[idx].v)) {
                    profile.bad_depth = depth;
                    profile.witness = witness_of(idx);
                    break;
                }
            }
        }
        for (std::size_t idx = layer_begin; idx < layer_end; ++idx) {
            for (std::uint32_t mi = 0; mi < f.size(); ++mi) {
                BitVec prod = nodes[idx].v & f.member(mi);
                if (seen.count(prod)) continue;
                seen.emplace(prod, nodes.size());
                nodes.push_back({std::move(prod), static_cast<std::int64_t>(idx), mi, depth + 1});
            }
        }
        layer_begin = layer_end;
        layer_end = nodes.size();
        if (layer_begin < layer_end) ++depth;
    }
    profile.stabilization_depth = depth;
    return profile;
}

ClosureReport is_k_closed(const SetFamily& f, std::uint64_t k, std::uint32_t ell) {
    ClosureProfile profile = closure_profile(f, ell);
    ClosureReport report;
    report.k = k;
    report.ell = ell;
    report.holds = profile.k_closed(k);
    if (!report.holds) report.witness = profile.witness;
    return report;
}

ClosureReport is_weakly_k_closed(const SetFamily& f, std::uint32_t k, std::uint32_t ell) {
    ClosureReport report;
    report.k = k;
    report.ell = ell;
    report.holds = true;
    if (f.size() < k) return report;  // vacuous

    std::vector<std::uint32_t> chosen;
    BitVec full(f.ground_size());
    for (std::uint32_t i = 0; i < f.ground_size(); ++i) full.set(i);

    auto rec = [&](auto&& self, std::uint32_t start, const BitVec& inter) -> bool {
        if (chosen.size() == k) {
            if (inter.count() % ell != 0) {
                report.holds = false;
                report.witness = chosen;
                return true;
            }
            return false;
        }
        for (std::uint32_t i = start; i + (k - chosen.size()) <= f.size(); ++i) {
            chosen.push_back(i);
            if (self(self, i + 1, inter & f.member(i))) return true;
            chosen.pop_back();
        }
        return false;
    };
    rec(rec, 0, full);
    return report;
}

TwinDecomposition twin_decomposition(const SetFamily& f) {
    // Coordinates are twins iff the same members contain them.
    std::uint32_t n = f.ground_size();
    std::map<std::vector<std::uint64_t>, std::vector<std::uint32_t>> groups;
    TwinDecomposition out;
    std::vector<std::uint32_t> class_first;

    for (std::uint32_t c = 0; c < n; ++c) {
        std::vector<std::uint64_t> sig((f.size() + 63) / 64, 0);
        bool covered = false;
        for (std::size_t m = 0; m < f.size(); ++m) {
            if (f.member(m).test(c)) {
                sig[m >> 6] |= std::uint64_t{1} << (m & 63);
                covered = true;
            }
        }
        if (!covered) {
            out.uncovered.push_back(c);
            continue;
        }
        groups[sig].push_back(c);
    }
    std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> ordered;
    for (auto& [sig, coords] : groups) {
        std::uint32_t witness = 0;
        for (std::size_t m = 0; m < f.size(); ++m)
            if (f.member(m).test(coords.front())) {
                witness = static_cast<std::uint32_t>(m);
                break;
            }
        ordered.emplace_back(coords.front(), coords);
        class_first.push_back(witness);
    }
    // reorder by smallest coordinate
    std::vector<std::size_t> order(ordered.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return ordered[a].first < ordered[b].first; });
    for (std::size_t i : order) {
        out.classes.push_back(ordered[i].second);
        out.witness_member.push_back(class_first[i]);
    }
    return out;
}

ReduceResult reduce(const SetFamily& f) {
    std::uint32_t n = f.ground_size();
    std::vector<bool> covered(n, false);
    for (const auto& m : f.members())
        for (std::uint32_t b : m.bits()) covered[b] = true;

    ReduceResult out;
    for (std::uint32_t c = 0; c < n; ++c)
        (covered[c] ? out.kept : out.dropped).push_back(c);
    out.family = project(f, out.kept);
    return out;
}

SetFamily project(const SetFamily& f, const std::vector<std::uint32_t>& coords) {
    for (std::uint32_t c : coords)
        if (c >= f.ground_size()) throw ShapeError("project: coordinate out of range");
    std::vector<BitVec> out;
    out.reserve(f.size());
    for (const auto& m : f.members()) {
        BitVec v(static_cast<std::uint32_t>(coords.size()));
        for (std::uint32_t i = 0; i < coords.size(); ++i)
            if (m.test(coords[i])) v.set(i);
        out.push_back(std::move(v));
    }
    return SetFamily::from_members(static_cast<std::uint32_t>(coords.size()), f.modulus(),
                                   std::move(out));
}

}  // namespace divfam
