#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

#include "divfam/errors.hpp"

namespace divfam {

bool is_prime(std::uint32_t m);
std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p);  // p prime, a != 0

// Length-n vector of residues mod m. Residues are stored in packed
// fixed-width lanes: 1 bit per entry for m = 2, otherwise the smallest
// power-of-two lane width that holds m-1. Mod-2 product/sum reduce to
// word-wide AND/XOR.
class ModVector {
public:
    ModVector() = default;
    ModVector(std::uint32_t modulus, std::uint32_t n);
    static ModVector from_values(std::uint32_t modulus, const std::vector<std::uint32_t>& values);

    std::uint32_t modulus() const { return mod_; }
    std::uint32_t size() const { return n_; }

    std::uint32_t get(std::uint32_t i) const;
    void set(std::uint32_t i, std::uint32_t value);  // value must be < modulus

    ModVector hadamard(const ModVector& other) const;
    ModVector add(const ModVector& other) const;
    ModVector scaled(std::uint32_t a) const;
    void add_scaled_inplace(std::uint32_t a, const ModVector& other);

    std::uint32_t norm() const;  // sum of entries mod modulus
    std::vector<std::uint32_t> support() const;
    bool is_zero() const;
    bool is_zero_one() const;
    std::vector<std::uint32_t> values() const;

    bool operator==(const ModVector& other) const;
    bool operator!=(const ModVector& other) const { return !(*this == other); }
    bool operator<(const ModVector& other) const;  // entrywise lexicographic

private:
    void check_shape(const ModVector& other) const;

    std::uint32_t mod_ = 2;
    std::uint32_t n_ = 0;
    std::uint32_t lane_bits_ = 1;
    std::vector<std::uint64_t> words_;
};

struct ModMatrix {
    std::uint32_t modulus = 2;
    std::vector<ModVector> rows;

    ModMatrix() = default;
    ModMatrix(std::uint32_t modulus, std::vector<ModVector> rows);

    std::uint32_t cols() const { return rows.empty() ? 0 : rows.front().size(); }
};

}  // namespace divfam
