#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fabercone/rational.hpp"

namespace fabercone {

// Dense rational matrix; rows may be appended freely, all of width `cols`.
struct QMat {
    size_t cols = 0;
    std::vector<QVec> rows;

    QMat() = default;
    explicit QMat(size_t c) : cols(c) {}
    QMat(size_t c, std::vector<QVec> r) : cols(c), rows(std::move(r)) {}

    size_t row_count() const { return rows.size(); }
    void add_row(QVec r);
};

struct Rref {
    QMat mat;                     // reduced rows, zero rows dropped
    std::vector<size_t> pivots;  // pivot column per reduced row
};

// Gauss-Jordan over exact rationals.  `col_order` gives the pivot search
// order; identity order when absent.
Rref rref(const QMat& m, const std::optional<std::vector<size_t>>& col_order = std::nullopt);

size_t rank(const QMat& m, const std::optional<std::vector<size_t>>& col_order = std::nullopt);

// Basis of {x : Mx = 0}, one vector per free column, RREF-canonical.
std::vector<QVec> kernel_basis(const QMat& m);

// Fraction-free (Bareiss) rank of an integer row set.
size_t rank_z(const std::vector<const ZVec*>& rows, size_t cols);
size_t rank_z(const std::vector<ZVec>& rows, size_t cols);

// Canonical basis for the span of `rows`: RREF, primitive integer rows.
std::vector<ZVec> subspace_basis(const std::vector<ZVec>& rows, size_t cols);

// Canonical coset representative of v modulo the subspace spanned by
// `basis` (which must be RREF as produced by subspace_basis).
QVec reduce_mod_subspace(const QVec& v, const std::vector<ZVec>& basis, size_t cols);

}  // namespace fabercone
