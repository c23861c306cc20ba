#include "fabercone/fm_oracle.hpp"

#include <algorithm>
#include <set>

#include "fabercone/errors.hpp"
#include "fabercone/linalg.hpp"

namespace fabercone {

namespace {

struct FmRow {
    QVec v;                          // over (y_0..y_{d-1}, t_0..t_{m-1})
    std::set<size_t> ancestors;      // generating inequality indices (Imbert bound)
};

void substitute(std::vector<FmRow>& rows, const QVec& eq, size_t var) {
    // eq has a nonzero coefficient at `var`; eliminate var from every row.
    const Rat piv = eq[var];
    for (auto& row : rows) {
        if (row.v[var] == 0) continue;
        const Rat f = row.v[var] / piv;
        for (size_t j = 0; j < row.v.size(); ++j) row.v[j] -= f * eq[j];
        row.v[var] = 0;
    }
}

}  // namespace

ConeV fm_extremal_rays(const ConeH& cone) {
    cone.validate();
    const size_t d = cone.dim;
    const std::vector<ZVec> gens = [&] {
        std::set<ZVec, ZVecLess> seen;
        for (const auto& r : cone.rows) {
            ZVec p = primitive(r);
            if (!is_zero(p)) seen.insert(std::move(p));
        }
        return std::vector<ZVec>(seen.begin(), seen.end());
    }();
    const size_t m = gens.size();
    const size_t width = d + m;

    // The dual cone is generated by the inequality rows; describe it as the
    // projection of {y = sum t_j gen_j, t >= 0} onto y.
    std::vector<QVec> equalities;
    for (size_t i = 0; i < d; ++i) {
        QVec eq(width, Rat(0));
        eq[i] = 1;
        for (size_t j = 0; j < m; ++j) eq[d + j] = -Rat(gens[j][i]);
        equalities.push_back(std::move(eq));
    }
    std::vector<FmRow> ineqs;
    for (size_t j = 0; j < m; ++j) {
        FmRow row{QVec(width, Rat(0)), {j}};
        row.v[d + j] = 1;
        ineqs.push_back(std::move(row));
    }

    size_t fm_steps = 0;
    for (size_t var = d; var < width; ++var) {
        // Prefer direct substitution through an equality.
        size_t eq_idx = equalities.size();
        for (size_t e = 0; e < equalities.size(); ++e) {
            if (equalities[e][var] != 0) {
                eq_idx = e;
                break;
            }
        }
        if (eq_idx < equalities.size()) {
            const QVec eq = equalities[eq_idx];
            equalities.erase(equalities.begin() + eq_idx);
            for (auto& other : equalities) {
                if (other[var] == 0) continue;
                const Rat f = other[var] / eq[var];
                for (size_t j = 0; j < width; ++j) other[j] -= f * eq[j];
                other[var] = 0;
            }
            substitute(ineqs, eq, var);
            continue;
        }

        // Fourier-Motzkin step on the inequalities.
        ++fm_steps;
        std::vector<FmRow> pos, neg, zero;
        for (auto& row : ineqs) {
            const int s = sgn(row.v[var]);
            if (s > 0) pos.push_back(std::move(row));
            else if (s < 0) neg.push_back(std::move(row));
            else zero.push_back(std::move(row));
        }
        std::vector<FmRow> next = std::move(zero);
        std::set<ZVec, ZVecLess> dedup;
        for (auto& row : next) dedup.insert(primitive(row.v));
        for (const auto& p : pos)
            for (const auto& q : neg) {
                std::set<size_t> anc = p.ancestors;
                anc.insert(q.ancestors.begin(), q.ancestors.end());
                if (anc.size() > 1 + fm_steps) continue;  // Imbert: provably redundant
                QVec v(width, Rat(0));
                const Rat pc = p.v[var];
                const Rat qc = -q.v[var];
                for (size_t j = 0; j < width; ++j) v[j] = qc * p.v[j] + pc * q.v[j];
                ZVec key = primitive(v);
                if (is_zero(key)) continue;
                if (!dedup.insert(key).second) continue;
                next.push_back(FmRow{to_qvec(key), std::move(anc)});
            }
        ineqs = std::move(next);
    }

    const size_t rank_gens = rank_z(gens, d);

    // Lineality of the primal cone is the kernel of the generator matrix.
    QMat gen_mat(d);
    for (const auto& g : gens) gen_mat.add_row(to_qvec(g));
    std::vector<ZVec> lin_rows;
    for (const auto& k : kernel_basis(gen_mat)) lin_rows.push_back(primitive(k));
    const std::vector<ZVec> lineality = subspace_basis(lin_rows, d);

    // A candidate inequality is a facet of the dual cone exactly when its
    // tight generators have corank one.
    std::set<ZVec, ZVecLess> rays;
    for (const auto& row : ineqs) {
        QVec y_part(row.v.begin(), row.v.begin() + d);
        ZVec cand = primitive(y_part);
        if (is_zero(cand)) continue;
        bool valid = true;
        std::vector<const ZVec*> tight_gens;
        for (const auto& g : gens) {
            const Int val = dot(cand, g);
            if (val < 0) {
                valid = false;
                break;
            }
            if (val == 0) tight_gens.push_back(&g);
        }
        if (!valid) continue;
        if (rank_gens == 0) continue;
        if (rank_z(tight_gens, d) != rank_gens - 1) continue;
        ZVec reduced = primitive(reduce_mod_subspace(to_qvec(cand), lineality, d));
        if (!is_zero(reduced)) rays.insert(std::move(reduced));
    }

    ConeV out;
    out.dim = static_cast<int>(d);
    out.rays.assign(rays.begin(), rays.end());
    out.lineality = lineality;
    return out;
}

}  // namespace fabercone
