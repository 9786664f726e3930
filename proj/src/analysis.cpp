#include "divfam/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <numeric>
#include <thread>

namespace divfam {

namespace {

using Mask = std::uint32_t;

Mask to_mask(const BitVec& v) {
    Mask m = 0;
    for (std::uint32_t b : v.bits()) m |= Mask{1} << b;
    return m;
}

BitVec to_bitvec(Mask m, std::uint32_t n) {
    BitVec v(n);
    for (std::uint32_t i = 0; i < n; ++i)
        if (m >> i & 1) v.set(i);
    return v;
}

std::vector<std::vector<std::uint32_t>> all_permutations(std::uint32_t n) {
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<std::uint32_t>> out;
    do {
        out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

Mask apply_perm(Mask m, const std::vector<std::uint32_t>& perm) {
    Mask out = 0;
    for (std::uint32_t i = 0; i < perm.size(); ++i)
        if (m >> i & 1) out |= Mask{1} << perm[i];
    return out;
}

// Shared state of one exhaustive search run.
struct SearchContext {
    SearchParams params;
    std::vector<Mask> candidates;
    std::vector<std::vector<std::uint32_t>> perms;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<std::uint32_t> best{0};
    std::atomic<bool> out_of_budget{false};

    bool compatible(const std::vector<Mask>& family, Mask c) const {
        std::uint32_t ell = params.ell;
        switch (params.mode) {
            case ClosureMode::Pairwise:
                if (std::popcount(c) % ell) return false;
                for (Mask s : family)
                    if (std::popcount(c & s) % ell) return false;
                return true;
            case ClosureMode::Repetition: {
                // every <= (k-1)-subset of the family extended by c
                auto rec = [&](auto&& self, std::size_t start, Mask inter,
                               std::uint32_t depth) -> bool {
                    if (std::popcount(inter) % ell) return false;
                    if (depth + 1 >= params.k) return true;
                    for (std::size_t i = start; i < family.size(); ++i)
                        if (!self(self, i + 1, inter & family[i], depth + 1)) return false;
                    return true;
                };
                return rec(rec, 0, c, 0);
            }
            case ClosureMode::Distinct: {
                if (params.k == 0) return true;
                // exactly (k-1)-subsets of the family extended by c
                auto rec = [&](auto&& self, std::size_t start, Mask inter,
                               std::uint32_t depth) -> bool {
                    if (depth + 1 == params.k) return std::popcount(inter) % ell == 0;
                    for (std::size_t i = start;
                         i + (params.k - 1 - depth) <= family.size() + 0; ++i) {
                        if (family.size() - i < params.k - 1 - depth) break;
                        if (!self(self, i + 1, inter & family[i], depth + 1)) return false;
                    }
                    return true;
                };
                if (params.k == 1) return std::popcount(c) % ell == 0;
                return rec(rec, 0, c, 0);
            }
        }
        return false;
    }

    // Lex-minimal image test; minimality is hereditary under dropping the
    // largest member, so pruning non-canonical nodes keeps the search exact.
    bool canonical(const std::vector<Mask>& family) const {
        std::vector<Mask> image(family.size());
        for (const auto& perm : perms) {
            for (std::size_t i = 0; i < family.size(); ++i)
                image[i] = apply_perm(family[i], perm);
            std::sort(image.begin(), image.end());
            if (std::lexicographical_compare(image.begin(), image.end(), family.begin(),
                                             family.end()))
                return false;
        }
        return true;
    }
};

struct ThreadFindings {
    std::uint32_t local_best = 0;
    std::vector<std::vector<Mask>> extremal;
    bool truncated = false;
};

void search_dfs(SearchContext& ctx, ThreadFindings& found, std::vector<Mask>& family,
                std::size_t start_idx) {
    if (ctx.out_of_budget.load(std::memory_order_relaxed)) return;
    if (ctx.nodes.fetch_add(1, std::memory_order_relaxed) + 1 > ctx.params.budget_nodes) {
        ctx.out_of_budget.store(true);
        return;
    }

    std::uint32_t size = static_cast<std::uint32_t>(family.size());
    std::uint32_t global_best = ctx.best.load(std::memory_order_relaxed);
    while (size > global_best &&
           !ctx.best.compare_exchange_weak(global_best, size, std::memory_order_relaxed)) {
    }
    if (size > found.local_best) {
        found.local_best = size;
        found.extremal.clear();
        found.truncated = false;
    }
    if (size == found.local_best && size >= ctx.best.load(std::memory_order_relaxed)) {
        if (found.extremal.size() < ctx.params.max_extremal)
            found.extremal.push_back(family);
        else
            found.truncated = true;
    }

    for (std::size_t idx = start_idx; idx < ctx.candidates.size(); ++idx) {
        std::uint32_t remaining = static_cast<std::uint32_t>(ctx.candidates.size() - idx);
        if (size + remaining < ctx.best.load(std::memory_order_relaxed)) break;
        Mask c = ctx.candidates[idx];
        if (!ctx.compatible(family, c)) continue;
        family.push_back(c);
        if (ctx.canonical(family)) search_dfs(ctx, found, family, idx + 1);
        family.pop_back();
    }
}

}  // namespace

SearchResult exhaustive_max_family(const SearchParams& params) {
    if (params.n > 8) throw SpecError("exhaustive_max_family: n too large for exact search");
    if (params.ell < 2) throw SpecError("exhaustive_max_family: ell must be >= 2");

    SearchContext ctx;
    ctx.params = params;
    ctx.perms = all_permutations(params.n);
    for (Mask m = 0; m < (Mask{1} << params.n); ++m) {
        if (params.mode != ClosureMode::Distinct && std::popcount(m) % params.ell) continue;
        ctx.candidates.push_back(m);
    }

    std::uint32_t threads = std::max<std::uint32_t>(1, params.threads);
    std::vector<ThreadFindings> findings(threads);
    if (threads == 1) {
        std::vector<Mask> family;
        search_dfs(ctx, findings[0], family, 0);
    } else {
        // split on the first member; empty family handled once up front
        ThreadFindings root;
        root.local_best = 0;
        root.extremal.push_back({});
        findings.push_back(root);
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::uint32_t t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                std::size_t idx;
                while ((idx = next.fetch_add(1)) < ctx.candidates.size()) {
                    std::vector<Mask> family{ctx.candidates[idx]};
                    if (!ctx.compatible({}, ctx.candidates[idx])) continue;
                    if (!ctx.canonical(family)) continue;
                    search_dfs(ctx, findings[t], family, idx + 1);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    SearchResult out;
    out.params = params;
    out.nodes_explored = ctx.nodes.load();
    out.budget_exhausted = ctx.out_of_budget.load();
    out.max_size = ctx.best.load();

    std::vector<std::vector<Mask>> collected;
    for (auto& f : findings) {
        if (f.truncated && f.local_best == out.max_size) out.extremal_truncated = true;
        for (auto& fam : f.extremal)
            if (fam.size() == out.max_size) collected.push_back(std::move(fam));
    }
    std::sort(collected.begin(), collected.end());
    collected.erase(std::unique(collected.begin(), collected.end()), collected.end());
    for (const auto& fam : collected) {
        std::vector<BitVec> members;
        for (Mask m : fam) members.push_back(to_bitvec(m, params.n));
        out.extremal.push_back(
            SetFamily::from_members(params.n, params.ell, std::move(members)));
    }
    return out;
}

RemovalTrace greedy_removal_to_closed(const SetFamily& f, std::uint32_t k, std::uint32_t ell) {
    RemovalTrace trace;
    ClosureReport weak = is_weakly_k_closed(f, k, ell);
    if (!weak.holds) {
        trace.verdict = {VerdictKind::NotApplicable, "family is not weakly k-closed"};
        trace.final_family = f;
        return trace;
    }

    std::vector<std::uint32_t> alive(f.size());
    std::iota(alive.begin(), alive.end(), 0);

    auto bad_subsets = [&](std::uint32_t t) {
        std::vector<std::vector<std::uint32_t>> bad;
        std::vector<std::uint32_t> chosen;
        BitVec full(f.ground_size());
        for (std::uint32_t i = 0; i < f.ground_size(); ++i) full.set(i);
        auto rec = [&](auto&& self, std::size_t start, const BitVec& inter) -> void {
            if (chosen.size() == t) {
                if (inter.count() % ell != 0) bad.push_back(chosen);
                return;
            }
            for (std::size_t i = start; i + (t - chosen.size()) <= alive.size(); ++i) {
                chosen.push_back(alive[i]);
                self(self, i + 1, inter & f.member(alive[i]));
                chosen.pop_back();
            }
        };
        rec(rec, 0, full);
        return bad;
    };

    while (true) {
        // t maximal with a bad t-wise intersection among survivors
        std::uint32_t t = 0;
        std::vector<std::vector<std::uint32_t>> bad;
        for (std::uint32_t cand = k >= 1 ? k - 1 : 0; cand >= 1; --cand) {
            bad = bad_subsets(cand);
            if (!bad.empty()) {
                t = cand;
                break;
            }
        }
        if (t == 0) break;

        RemovalRound round;
        round.t = t;
        std::vector<bool> matched(f.size(), false);
        for (const auto& edge : bad) {  // already in lexicographic index order
            bool free = std::none_of(edge.begin(), edge.end(),
                                     [&](std::uint32_t i) { return matched[i]; });
            if (!free) continue;
            for (std::uint32_t i : edge) matched[i] = true;
            round.matching.push_back(edge);
            trace.removed_total += edge.size();
        }
        std::vector<std::uint32_t> survivors;
        for (std::uint32_t i : alive)
            if (!matched[i]) survivors.push_back(i);
        alive = std::move(survivors);
        trace.rounds.push_back(std::move(round));
    }

    std::vector<BitVec> members;
    for (std::uint32_t i : alive) members.push_back(f.member(i));
    trace.final_family =
        SetFamily::from_members(f.ground_size(), f.modulus(), std::move(members));
    trace.verdict = closure_profile(trace.final_family, ell).k_closed(k)
                        ? Verdict{VerdictKind::Holds, ""}
                        : Verdict{VerdictKind::Violated, "final family is not k-closed"};
    return trace;
}

Verdict oddtown_pairs_check(const std::vector<std::pair<BitVec, BitVec>>& pairs,
                            std::uint32_t n, std::uint32_t ell) {
    std::size_t m = pairs.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            std::uint32_t inter = (pairs[i].first & pairs[j].second).count();
            if (i == j && inter % ell == 0)
                return {VerdictKind::NotApplicable,
                        "ell divides |A_" + std::to_string(i) + " ∩ B_" + std::to_string(i) + "|"};
            if (i != j && inter % ell != 0)
                return {VerdictKind::NotApplicable,
                        "off-diagonal pair (" + std::to_string(i) + "," + std::to_string(j) +
                            ") not divisible"};
        }
    std::size_t s = factorize(ell).size();
    if (m <= s * n) return {VerdictKind::Holds, ""};
    return {VerdictKind::Violated, "m exceeds s*n"};
}

CrossCheck cross_product_bound_check(const std::vector<SetFamily>& families, std::uint32_t ell) {
    CrossCheck out;
    if (families.empty()) throw SpecError("cross check needs at least one family");
    std::uint32_t n = families.front().ground_size();
    for (const auto& f : families)
        if (f.ground_size() != n) throw ShapeError("cross check: ground sizes differ");

    BitVec full(n);
    for (std::uint32_t i = 0; i < n; ++i) full.set(i);
    bool premise = true;
    std::vector<std::size_t> pick(families.size(), 0);
    auto rec = [&](auto&& self, std::size_t level, const BitVec& inter) -> void {
        if (!premise) return;
        if (level == families.size()) {
            if (inter.count() % ell != 0) premise = false;
            return;
        }
        for (std::size_t i = 0; i < families[level].size(); ++i)
            self(self, level + 1, inter & families[level].member(i));
    };
    rec(rec, 0, full);

    out.product = 1;
    for (const auto& f : families) out.product *= BigInt(f.size());
    out.bound = BigInt(1) << ((families.size() - 1) * n);
    out.equality = out.product == out.bound;
    if (!premise)
        out.verdict = {VerdictKind::NotApplicable, "a cross intersection is not divisible"};
    else if (out.product <= out.bound)
        out.verdict = {VerdictKind::Holds, ""};
    else
        out.verdict = {VerdictKind::Violated, "size product exceeds 2^{(k-1)n}"};
    return out;
}

SetFamily greedy_complete_eventown(const SetFamily& f) {
    std::uint32_t n = f.ground_size();
    if (n > 16) throw SpecError("greedy_complete_eventown: ground set too large");
    std::vector<Mask> members;
    for (const auto& m : f.members()) members.push_back(to_mask(m));

    for (Mask c = 0; c < (Mask{1} << n); ++c) {
        if (std::popcount(c) % 2) continue;
        bool ok = std::find(members.begin(), members.end(), c) == members.end();
        for (Mask s : members)
            if (std::popcount(c & s) % 2) ok = false;
        if (ok) members.push_back(c);
    }
    std::vector<BitVec> out;
    for (Mask m : members) out.push_back(to_bitvec(m, n));
    return SetFamily::from_members(n, 2, std::move(out));
}

}  // namespace divfam
