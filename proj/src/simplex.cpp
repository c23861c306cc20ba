#include "fabercone/simplex.hpp"

#include "fabercone/errors.hpp"

namespace fabercone {

Phase1Result simplex_phase1(const std::vector<QVec>& columns, const QVec& rhs) {
    const size_t m = rhs.size();
    const size_t n = columns.size();
    for (const auto& c : columns)
        if (c.size() != m) throw DimensionMismatch("simplex column height mismatch");

    // Tableau rows over columns [original | artificial], flipped so the
    // right-hand side is nonnegative.
    std::vector<bool> flip(m, false);
    std::vector<QVec> t(m, QVec(n + m, Rat(0)));
    QVec b(m);
    for (size_t i = 0; i < m; ++i) {
        flip[i] = rhs[i] < 0;
        b[i] = flip[i] ? Rat(-rhs[i]) : rhs[i];
        for (size_t j = 0; j < n; ++j) t[i][j] = flip[i] ? Rat(-columns[j][i]) : columns[j][i];
        t[i][n + i] = 1;
    }

    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) basis[i] = n + i;

    // Reduced costs for min(sum of artificials); artificial columns start
    // basic with cost 1.
    QVec red(n + m, Rat(0));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n + m; ++j) red[j] -= t[i][j];
    for (size_t i = 0; i < m; ++i) red[n + i] += 1;  // cost of artificials

    while (true) {
        size_t enter = n + m;
        for (size_t j = 0; j < n + m; ++j) {
            if (red[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == n + m) break;

        size_t leave = m;
        Rat best_ratio = 0;
        for (size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            const Rat ratio = b[i] / t[i][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) throw CertificateError("phase-one objective unbounded");

        const Rat piv = t[leave][enter];
        for (auto& x : t[leave]) x /= piv;
        b[leave] /= piv;
        for (size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const Rat f = t[i][enter];
            for (size_t j = 0; j < n + m; ++j) t[i][j] -= f * t[leave][j];
            b[i] -= f * b[leave];
        }
        if (red[enter] != 0) {
            const Rat f = red[enter];
            for (size_t j = 0; j < n + m; ++j) red[j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    Rat objective = 0;
    for (size_t i = 0; i < m; ++i)
        if (basis[i] >= n) objective += b[i];

    Phase1Result out;
    if (objective == 0) {
        out.feasible = true;
        out.x.assign(n, Rat(0));
        for (size_t i = 0; i < m; ++i)
            if (basis[i] < n) out.x[basis[i]] = b[i];
        return out;
    }

    out.feasible = false;
    out.dual_y.assign(m, Rat(0));
    for (size_t i = 0; i < m; ++i) {
        // Reduced cost of artificial i is 1 - y_i in the flipped system.
        const Rat y = Rat(1) - red[n + i];
        out.dual_y[i] = flip[i] ? Rat(-y) : y;
    }
    return out;
}

}  // namespace fabercone
