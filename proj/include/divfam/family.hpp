#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "divfam/modvec.hpp"

namespace divfam {

// Packed 0/1 vector over a ground set of n coordinates. Ordering is
// lexicographic by the 0/1 string with coordinate 0 first.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::uint32_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::uint32_t size() const { return n_; }
    bool test(std::uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::uint32_t i, bool v = true) {
        if (v) w_[i >> 6] |= std::uint64_t{1} << (i & 63);
        else w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    std::uint32_t count() const;

    BitVec operator&(const BitVec& o) const;
    BitVec operator|(const BitVec& o) const;
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }
    bool operator<(const BitVec& o) const;
    bool is_zero() const;

    std::vector<std::uint32_t> bits() const;
    std::string to_string() const;  // n-character 0/1 string

private:
    std::uint32_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Ordered, duplicate-free collection of 0/1 vectors over [n]. Members are
// kept sorted lexicographically (canonical form).
class SetFamily {
public:
    SetFamily() = default;
    SetFamily(std::uint32_t ground_size, std::uint32_t modulus)
        : n_(ground_size), mod_(modulus) {}
    static SetFamily from_members(std::uint32_t ground_size, std::uint32_t modulus,
                                  std::vector<BitVec> members);

    std::uint32_t ground_size() const { return n_; }
    std::uint32_t modulus() const { return mod_; }
    std::size_t size() const { return members_.size(); }
    const std::vector<BitVec>& members() const { return members_; }
    const BitVec& member(std::size_t i) const { return members_[i]; }
    bool contains(const BitVec& v) const;

    ModVector char_vector(std::size_t i, std::uint32_t modulus) const;
    std::vector<ModVector> char_vectors(std::uint32_t modulus) const;

    bool operator==(const SetFamily& o) const {
        return n_ == o.n_ && members_ == o.members_;
    }

private:
    std::uint32_t n_ = 0;
    std::uint32_t mod_ = 2;
    std::vector<BitVec> members_;
};

// Text format: header "n=<int> mod=<int>", one 0/1 string per member line,
// '#' starts a comment line.
SetFamily parse_family(const std::string& text);
std::string format_family(const SetFamily& family);

struct TwinDecomposition {
    std::vector<std::vector<std::uint32_t>> classes;  // sorted by smallest coordinate
    std::vector<std::uint32_t> uncovered;
    std::vector<std::uint32_t> witness_member;  // per class: a member containing it
};

struct ClosureReport {
    std::uint64_t k = 0;
    std::uint32_t ell = 2;
    bool holds = false;
    std::vector<std::uint32_t> witness;  // member indices; product has nonzero norm
};

// Minimal number of factors at which some product of members acquires a
// norm not divisible by ell, together with the closure stabilization depth.
// bad_depth == 0 means every product in the closure has norm 0.
struct ClosureProfile {
    std::uint32_t bad_depth = 0;
    std::vector<std::uint32_t> witness;
    std::uint32_t stabilization_depth = 1;

    bool k_closed(std::uint64_t k) const { return bad_depth == 0 || k < bad_depth; }
};

SetFamily product(const SetFamily& f, const SetFamily& g);
SetFamily power(const SetFamily& f, std::uint64_t k);
ClosureProfile closure_profile(const SetFamily& f, std::uint32_t ell);
ClosureReport is_k_closed(const SetFamily& f, std::uint64_t k, std::uint32_t ell);
ClosureReport is_weakly_k_closed(const SetFamily& f, std::uint32_t k, std::uint32_t ell);
TwinDecomposition twin_decomposition(const SetFamily& f);

struct ReduceResult {
    SetFamily family;
    std::vector<std::uint32_t> dropped;  // vanishing coordinates, ascending
    std::vector<std::uint32_t> kept;     // original index of each surviving coordinate
};
ReduceResult reduce(const SetFamily& f);

SetFamily project(const SetFamily& f, const std::vector<std::uint32_t>& coords);

}  // namespace divfam
