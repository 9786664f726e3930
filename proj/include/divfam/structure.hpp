#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "divfam/family.hpp"
#include "divfam/linalg.hpp"

namespace divfam {

using BigInt = boost::multiprecision::cpp_int;

enum class VerdictKind { Holds, Violated, NotApplicable };

struct Verdict {
    VerdictKind kind = VerdictKind::Holds;
    std::string detail;

    bool holds() const { return kind == VerdictKind::Holds; }
};

// Sibling classes of a normalized (RREF) basis: S_i collects the columns
// proportional to pivot column i with a single nonzero row; every residual
// column has at least two nonzero entries.
struct SiblingDecomposition {
    std::vector<std::vector<std::uint32_t>> classes;  // S_i, one per basis row
    std::vector<std::uint32_t> residual;              // B'
    std::vector<std::uint32_t> scalars;               // per coordinate: lambda, 0 on B'
};

SiblingDecomposition sibling_decomposition(const SubspaceBasis& basis);

// Greedy leftmost subset of B' whose columns span the B' column space.
std::vector<std::uint32_t> choose_C(const SubspaceBasis& basis,
                                    const std::vector<std::uint32_t>& b_prime);

// Output of the single-column product identity: coefficient vectors x, y
// with disjoint supports such that (sum x_i w_i)·(sum y_i w_i) equals
// 1_c + alpha·1_{c'} on C.
struct ClaimCPrime {
    int case_tag = 0;  // 1, 2 or 3
    std::uint32_t alpha = 0;
    std::uint32_t c_prime = 0;  // position within C
    ModVector x, y;             // length d coefficient vectors
};

// w: the restrictions v_i|_C (length-|C| vectors over F_p), c: position in C.
ClaimCPrime claim_c_prime(const std::vector<ModVector>& w, std::uint32_t c, std::uint32_t prime);

struct CertificateEntry {
    std::uint32_t c = 0;  // position within C
    ClaimCPrime claim;
    ModVector z;  // z_c = X·Y, full-length
};

struct StructureCertificate {
    std::uint32_t prime = 2;
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::uint32_t h = 0;
    std::uint32_t r = 0;      // |C|
    std::uint32_t dim_W = 0;  // dim of the z_c span
    SiblingDecomposition siblings;
    std::vector<std::uint32_t> C;                     // coordinates
    std::vector<CertificateEntry> entries;            // one per c in C
    std::vector<std::vector<std::uint32_t>> atoms;    // A_i: maximal twin class in S_i
    std::vector<std::uint32_t> I;                     // rows with S_i not a twin set
    std::vector<ModVector> vprime;                    // v_i' for i in I
    bool invariants_ok = true;
    std::vector<std::string> failures;
};

StructureCertificate certificate_from_basis(const SubspaceBasis& basis);
StructureCertificate build_certificate(const SetFamily& f, std::uint32_t prime);

struct StructureResult {
    std::vector<std::vector<std::uint32_t>> atoms;
    std::vector<std::uint32_t> B;
    std::uint32_t d = 0;
    std::uint32_t h = 0;
    std::uint32_t dim_FB = 0;

    bool bound_holds() const { return dim_FB <= 2 * h; }
};

StructureResult structure_decompose(const SetFamily& f, std::uint32_t prime);

// dim(V) <= (d+z)/2 for a b-orthogonal space; z = number of zero b_i.
Verdict check_bilinear_bound(const std::vector<std::uint32_t>& b, const SubspaceBasis& basis);

// At least d-2h of the twin-class sizes divisible by p, for 2-closed V.
Verdict check_lemma_prime(const SubspaceBasis& basis,
                          const std::vector<std::vector<std::uint32_t>>& twin_classes);

// At least d-2*alpha*h of the twin-class sizes divisible by p^alpha.
Verdict check_lemma_primepower(const SetFamily& f, std::uint32_t p, std::uint32_t alpha,
                               const std::vector<std::vector<std::uint32_t>>& atoms,
                               const std::vector<std::uint32_t>& B, std::uint32_t h);

struct SmallDimResult {
    std::vector<std::uint32_t> B;
    std::uint32_t dim_FB = 0;
    Verdict verdict;
};
SmallDimResult check_lemma_smalldim(const SetFamily& f, std::uint32_t p, std::uint32_t alpha,
                                    std::uint32_t t);

struct Threshold {
    BigInt k;
    std::uint64_t t = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> factorization;  // (p, alpha)
};

Threshold compute_k_threshold(std::uint32_t ell);
// epsilon given exactly as eps_num/eps_den.
Threshold compute_stab_threshold(std::uint32_t ell, std::uint64_t eps_num, std::uint64_t eps_den);

struct StabilityProjection {
    std::vector<std::uint32_t> X;
    std::vector<std::vector<std::uint32_t>> split_atoms;  // X split into size-ell twin blocks
    std::size_t projected_size = 0;
    std::size_t family_size = 0;
    Verdict verdict;  // projection embeds into the atomic family on split_atoms
};
StabilityProjection stability_projection(const SetFamily& f, std::uint32_t ell);

// Diagnostic: |I| <= ell*dim(<F|_I>_p) + 3*ell.
Verdict check_claim_coordinates(const SetFamily& f, const std::vector<std::uint32_t>& coords,
                                std::uint32_t p, std::uint32_t ell);

std::vector<std::pair<std::uint32_t, std::uint32_t>> factorize(std::uint32_t m);

}  // namespace divfam
