#include "fabercone/linalg.hpp"

#include <algorithm>

#include "fabercone/errors.hpp"

namespace fabercone {

void QMat::add_row(QVec r) {
    if (r.size() != cols) throw DimensionMismatch("row width mismatch");
    rows.push_back(std::move(r));
}

Rref rref(const QMat& m, const std::optional<std::vector<size_t>>& col_order) {
    std::vector<size_t> order;
    if (col_order) {
        order = *col_order;
        if (order.size() != m.cols) throw DimensionMismatch("column order size mismatch");
    } else {
        order.resize(m.cols);
        for (size_t j = 0; j < m.cols; ++j) order[j] = j;
    }

    std::vector<QVec> work = m.rows;
    std::vector<size_t> pivots;
    size_t next_row = 0;
    for (size_t oj = 0; oj < order.size() && next_row < work.size(); ++oj) {
        const size_t col = order[oj];
        size_t sel = work.size();
        for (size_t r = next_row; r < work.size(); ++r) {
            if (work[r][col] != 0) {
                sel = r;
                break;
            }
        }
        if (sel == work.size()) continue;
        std::swap(work[next_row], work[sel]);
        const Rat inv = 1 / work[next_row][col];
        for (auto& x : work[next_row]) x *= inv;
        for (size_t r = 0; r < work.size(); ++r) {
            if (r == next_row || work[r][col] == 0) continue;
            const Rat f = work[r][col];
            for (size_t j = 0; j < m.cols; ++j) work[r][j] -= f * work[next_row][j];
        }
        pivots.push_back(col);
        ++next_row;
    }
    work.resize(next_row);
    return Rref{QMat(m.cols, std::move(work)), std::move(pivots)};
}

size_t rank(const QMat& m, const std::optional<std::vector<size_t>>& col_order) {
    return rref(m, col_order).pivots.size();
}

std::vector<QVec> kernel_basis(const QMat& m) {
    const Rref r = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t p : r.pivots) is_pivot[p] = true;

    std::vector<QVec> basis;
    for (size_t j = 0; j < m.cols; ++j) {
        if (is_pivot[j]) continue;
        QVec v(m.cols, Rat(0));
        v[j] = 1;
        for (size_t rr = 0; rr < r.mat.rows.size(); ++rr) v[r.pivots[rr]] = -r.mat.rows[rr][j];
        basis.push_back(std::move(v));
    }
    return basis;
}

size_t rank_z(const std::vector<const ZVec*>& rows, size_t cols) {
    std::vector<ZVec> work;
    work.reserve(rows.size());
    for (const ZVec* r : rows) work.push_back(*r);

    size_t rnk = 0;
    Int prev = 1;
    for (size_t col = 0; col < cols && rnk < work.size(); ++col) {
        size_t sel = work.size();
        for (size_t r = rnk; r < work.size(); ++r) {
            if (work[r][col] != 0) {
                sel = r;
                break;
            }
        }
        if (sel == work.size()) continue;
        std::swap(work[rnk], work[sel]);
        const Int piv = work[rnk][col];
        for (size_t r = rnk + 1; r < work.size(); ++r) {
            for (size_t j = col + 1; j < cols; ++j) {
                Int t = piv * work[r][j] - work[r][col] * work[rnk][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                work[r][j] = std::move(t);
            }
            work[r][col] = 0;
        }
        prev = piv;
        ++rnk;
    }
    return rnk;
}

size_t rank_z(const std::vector<ZVec>& rows, size_t cols) {
    std::vector<const ZVec*> ptrs;
    ptrs.reserve(rows.size());
    for (const auto& r : rows) ptrs.push_back(&r);
    return rank_z(ptrs, cols);
}

std::vector<ZVec> subspace_basis(const std::vector<ZVec>& rows, size_t cols) {
    QMat m(cols);
    for (const auto& r : rows) {
        if (r.size() != cols) throw DimensionMismatch("subspace row width mismatch");
        m.add_row(to_qvec(r));
    }
    const Rref red = rref(m);
    std::vector<ZVec> out;
    out.reserve(red.mat.rows.size());
    for (const auto& r : red.mat.rows) out.push_back(primitive(r));
    return out;
}

QVec reduce_mod_subspace(const QVec& v, const std::vector<ZVec>& basis, size_t cols) {
    QVec out = v;
    for (const auto& b : basis) {
        size_t piv = cols;
        for (size_t j = 0; j < cols; ++j) {
            if (b[j] != 0) {
                piv = j;
                break;
            }
        }
        if (piv == cols) continue;
        if (out[piv] == 0) continue;
        const Rat f = out[piv] / Rat(b[piv]);
        for (size_t j = 0; j < cols; ++j) out[j] -= f * Rat(b[j]);
    }
    return out;
}

}  // namespace fabercone
