#pragma once

#include <cstdint>
#include <vector>

#include "divfam/family.hpp"

namespace divfam {

struct AtomSpec {
    std::uint32_t ground_size = 0;
    std::vector<std::vector<std::uint32_t>> atoms;  // disjoint, nonempty
};

// All 2^d unions of atoms of the spec.
SetFamily atomic_family(const AtomSpec& spec, std::uint32_t modulus = 2);

// S(n, ell): floor(n/ell) consecutive atoms of size ell.
SetFamily s_family(std::uint32_t n, std::uint32_t ell);

// Tightness construction: q atoms of size p followed by r blocks identified
// with F_p^{k+1}, one hyperplane chosen per block.
// Size 2^q * ((p^{k+1}-1)/(p-1))^r over ground size p*q + p^{k+1}*r.
SetFamily subspace_stability_family(std::uint32_t p, std::uint32_t k_sub, std::uint32_t q,
                                    std::uint32_t r);

// F_i = 2^{[n] \ A_i} for a partition A_1..A_k; cross k-wise intersections
// are empty and the size product is exactly 2^{(k-1)n}.
std::vector<SetFamily> cross_extremal_families(std::uint32_t n,
                                               const std::vector<std::vector<std::uint32_t>>& parts,
                                               std::uint32_t modulus = 2);

}  // namespace divfam
