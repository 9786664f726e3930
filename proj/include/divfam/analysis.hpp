#pragma once

#include <cstdint>
#include <vector>

#include "divfam/family.hpp"
#include "divfam/structure.hpp"

namespace divfam {

enum class ClosureMode { Pairwise, Distinct, Repetition };

struct SearchParams {
    std::uint32_t n = 0;
    std::uint32_t ell = 2;
    std::uint32_t k = 2;  // ignored in pairwise mode
    ClosureMode mode = ClosureMode::Pairwise;
    std::uint64_t budget_nodes = 50'000'000;
    std::uint32_t threads = 1;
    std::size_t max_extremal = 1024;
};

struct SearchResult {
    SearchParams params;
    std::uint32_t max_size = 0;
    std::vector<SetFamily> extremal;  // canonical orbit representatives
    std::uint64_t nodes_explored = 0;
    bool budget_exhausted = false;
    bool extremal_truncated = false;
};

// Exhaustive branch-and-bound over families of subsets of [n], one node
// per orbit of the coordinate-permutation action (lex-minimal image test).
SearchResult exhaustive_max_family(const SearchParams& params);

struct RemovalRound {
    std::uint32_t t = 0;
    std::vector<std::vector<std::uint32_t>> matching;  // member indices per edge
};

struct RemovalTrace {
    std::vector<RemovalRound> rounds;
    std::size_t removed_total = 0;
    SetFamily final_family;
    Verdict verdict;  // NotApplicable when F is not weakly k-closed
};

// Matching-removal from the weakly-k-closed reduction: repeatedly take the
// largest t with a bad t-wise intersection, remove a maximal matching of
// the bad t-sets, until the family is k-closed.
RemovalTrace greedy_removal_to_closed(const SetFamily& f, std::uint32_t k, std::uint32_t ell);

// m <= s*n for pair systems with ell | |A_i ∩ B_j| exactly off-diagonal.
Verdict oddtown_pairs_check(const std::vector<std::pair<BitVec, BitVec>>& pairs,
                            std::uint32_t n, std::uint32_t ell);

struct CrossCheck {
    Verdict verdict;
    BigInt product;  // |F_1| * ... * |F_k|
    BigInt bound;    // 2^{(k-1)n}
    bool equality = false;
};
CrossCheck cross_product_bound_check(const std::vector<SetFamily>& families, std::uint32_t ell);

// Test helper for the eventown-completion fact: greedily extend a pairwise
// eventown to a maximal one and return it.
SetFamily greedy_complete_eventown(const SetFamily& f);

}  // namespace divfam
