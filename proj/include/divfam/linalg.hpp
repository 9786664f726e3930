#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "divfam/modvec.hpp"

namespace divfam {

// Reduced row-echelon basis over F_p with its pivot columns. basis_rows
// has one row per pivot; entry (i, pivot_columns[i]) is 1 and every other
// row is 0 in that column.
struct SubspaceBasis {
    std::uint32_t prime = 2;
    ModMatrix basis_rows;
    std::vector<std::uint32_t> pivot_columns;

    std::uint32_t dimension() const { return static_cast<std::uint32_t>(pivot_columns.size()); }
    std::uint32_t cols() const { return basis_rows.cols(); }
};

// Leftmost-pivot, smallest-row-index elimination; deterministic.
SubspaceBasis rref(const ModMatrix& matrix);

std::uint32_t dim_span(const std::vector<ModVector>& vectors, std::uint32_t prime);

// Coefficients expressing v in the basis, or nullopt if v is outside the span.
std::optional<std::vector<std::uint32_t>> membership(const ModVector& v, const SubspaceBasis& basis);

inline constexpr std::uint64_t kDefaultSpanBudget = std::uint64_t{1} << 20;

// Exact |span ∩ {0,1}^n| by enumeration of all p^dim span elements.
std::uint64_t count_01_in_span(const SubspaceBasis& basis,
                               std::uint64_t budget = kDefaultSpanBudget);

}  // namespace divfam
