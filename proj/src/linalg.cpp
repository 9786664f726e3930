#include "divfam/linalg.hpp"

#include <algorithm>

namespace divfam {

SubspaceBasis rref(const ModMatrix& matrix) {
    std::uint32_t p = matrix.modulus;
    if (!is_prime(p)) throw ModulusError("rref requires a prime modulus");

    std::vector<ModVector> rows = matrix.rows;
    std::uint32_t n = matrix.cols();
    std::vector<ModVector> done;
    std::vector<std::uint32_t> pivots;

    std::uint32_t row_cursor = 0;
    for (std::uint32_t col = 0; col < n && row_cursor < rows.size(); ++col) {
        std::uint32_t pick = row_cursor;
        while (pick < rows.size() && rows[pick].get(col) == 0) ++pick;
        if (pick == rows.size()) continue;
        std::swap(rows[row_cursor], rows[pick]);
        ModVector& pr = rows[row_cursor];
        std::uint32_t inv = mod_inverse(pr.get(col), p);
        if (inv != 1) pr = pr.scaled(inv);
        for (std::uint32_t r = 0; r < rows.size(); ++r) {
            if (r == row_cursor) continue;
            std::uint32_t c = rows[r].get(col);
            if (c != 0) rows[r].add_scaled_inplace(p - c, pr);
        }
        pivots.push_back(col);
        ++row_cursor;
    }
    rows.resize(row_cursor);

    SubspaceBasis out;
    out.prime = p;
    out.basis_rows = ModMatrix(p, std::move(rows));
    out.pivot_columns = std::move(pivots);
    return out;
}

std::uint32_t dim_span(const std::vector<ModVector>& vectors, std::uint32_t prime) {
    if (vectors.empty()) return 0;
    return rref(ModMatrix(prime, vectors)).dimension();
}

std::optional<std::vector<std::uint32_t>> membership(const ModVector& v, const SubspaceBasis& basis) {
    if (basis.dimension() == 0) {
        if (v.is_zero()) return std::vector<std::uint32_t>{};
        return std::nullopt;
    }
    if (v.modulus() != basis.prime || v.size() != basis.cols())
        throw ShapeError("membership: vector does not match basis shape");
    // In RREF the coefficient of row i is forced to v(pivot_i).
    std::uint32_t d = basis.dimension();
    std::vector<std::uint32_t> coeffs(d);
    ModVector rebuilt(basis.prime, v.size());
    for (std::uint32_t i = 0; i < d; ++i) {
        coeffs[i] = v.get(basis.pivot_columns[i]);
        rebuilt.add_scaled_inplace(coeffs[i], basis.basis_rows.rows[i]);
    }
    if (rebuilt == v) return coeffs;
    return std::nullopt;
}

std::uint64_t count_01_in_span(const SubspaceBasis& basis, std::uint64_t budget) {
    std::uint32_t p = basis.prime;
    std::uint32_t d = basis.dimension();
    std::uint32_t n = basis.cols();

    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < d; ++i) {
        total *= p;
        if (total > budget) throw BudgetError("count_01_in_span: p^dim exceeds budget");
    }

    // Base-p odometer over coefficient tuples; each digit change is one row add.
    std::vector<std::uint32_t> digits(d, 0);
    ModVector current(p, n);
    std::uint64_t count = current.is_zero_one() ? 1 : 0;
    for (std::uint64_t step = 1; step < total; ++step) {
        std::uint32_t j = 0;
        for (;; ++j) {
            current.add_scaled_inplace(1, basis.basis_rows.rows[j]);
            if (digits[j] + 1 < p) {
                ++digits[j];
                break;
            }
            digits[j] = 0;  // carry; the add above wrapped this digit to 0 mod p
        }
        if (current.is_zero_one()) ++count;
    }
    return count;
}

}  // namespace divfam
