#include "fabercone/cone.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "fabercone/errors.hpp"
#include "fabercone/linalg.hpp"
#include "fabercone/parallel.hpp"
#include "fabercone/simplex.hpp"

namespace fabercone {

namespace {

void check_widths(const std::vector<ZVec>& vecs, int dim, const char* what) {
    for (const auto& v : vecs)
        if (static_cast<int>(v.size()) != dim) throw DimensionMismatch(std::string(what) + " width mismatch");
}

std::vector<ZVec> canonical_row_set(const std::vector<ZVec>& rows) {
    std::set<ZVec, ZVecLess> seen;
    for (const auto& r : rows) {
        ZVec p = primitive(r);
        if (is_zero(p)) continue;
        seen.insert(std::move(p));
    }
    return {seen.begin(), seen.end()};
}

// Tight-row bitsets over the processed inequality rows.
struct TightSet {
    std::vector<std::uint64_t> words;

    explicit TightSet(size_t bits = 0) : words((bits + 63) / 64, 0) {}
    void set(size_t k) { words[k / 64] |= std::uint64_t(1) << (k % 64); }
    bool test(size_t k) const { return (words[k / 64] >> (k % 64)) & 1; }
};

TightSet intersect(const TightSet& a, const TightSet& b) {
    TightSet out;
    out.words.resize(a.words.size());
    for (size_t w = 0; w < a.words.size(); ++w) out.words[w] = a.words[w] & b.words[w];
    return out;
}

size_t popcount64(const TightSet& s) {
    size_t c = 0;
    for (auto w : s.words) c += std::popcount(w);
    return c;
}

void check_deadline(const DDOptions& opts, size_t rows_done, size_t rows_total,
                    const std::vector<ZVec>& rays) {
    if (opts.deadline && std::chrono::steady_clock::now() > *opts.deadline) {
        if (opts.checkpoint) opts.checkpoint(rows_done, rows_total, rays);
        throw ResourceLimit("time budget exceeded during ray enumeration");
    }
}

}  // namespace

void ConeH::canonicalize() {
    check_widths(rows, dim, "inequality");
    check_widths(lineality, dim, "lineality");
    rows = canonical_row_set(rows);
    lineality = subspace_basis(lineality, dim);
}

void ConeH::validate() const {
    if (dim <= 0) throw DimensionMismatch("cone dimension must be positive");
    check_widths(rows, dim, "inequality");
    check_widths(lineality, dim, "lineality");
    for (const auto& l : lineality)
        for (const auto& r : rows)
            if (dot(r, l) != 0) throw DimensionMismatch("declared lineality not inside the cone");
}

void ConeV::canonicalize() {
    check_widths(rays, dim, "ray");
    check_widths(lineality, dim, "lineality");
    lineality = subspace_basis(lineality, dim);
    std::set<ZVec, ZVecLess> seen;
    for (const auto& r : rays) {
        QVec reduced = reduce_mod_subspace(to_qvec(r), lineality, dim);
        ZVec p = primitive(reduced);
        if (is_zero(p)) continue;
        seen.insert(std::move(p));
    }
    rays = {seen.begin(), seen.end()};
}

void ConeV::validate() const {
    if (dim <= 0) throw DimensionMismatch("cone dimension must be positive");
    check_widths(rays, dim, "ray");
    check_widths(lineality, dim, "lineality");
}

bool ConeV::satisfies(const ZVec& row) const {
    for (const auto& r : rays)
        if (dot(row, r) < 0) return false;
    for (const auto& l : lineality)
        if (dot(row, l) != 0) return false;
    return true;
}

ConeV extremal_rays(const ConeH& cone, const DDOptions& opts) {
    cone.validate();
    const int d = cone.dim;
    const std::vector<ZVec> rows = canonical_row_set(cone.rows);  // lexicographic insertion order
    const size_t m = rows.size();

    // Start from the whole space: lineality basis only.
    std::vector<ZVec> lin;
    for (int j = 0; j < d; ++j) {
        ZVec e(d, Int(0));
        e[j] = 1;
        lin.push_back(std::move(e));
    }
    std::vector<ZVec> rays;
    std::vector<TightSet> tight;

    for (size_t idx = 0; idx < m; ++idx) {
        check_deadline(opts, idx, m, rays);
        const ZVec& a = rows[idx];

        // If the new inequality cuts the lineality space, split off one
        // pivot direction as a ray and flatten the rest.
        size_t piv = lin.size();
        for (size_t j = 0; j < lin.size(); ++j) {
            if (dot(a, lin[j]) != 0) {
                piv = j;
                break;
            }
        }
        if (piv < lin.size()) {
            ZVec l0 = lin[piv];
            if (dot(a, l0) < 0)
                for (auto& x : l0) x = -x;
            const Int al0 = dot(a, l0);

            std::vector<ZVec> new_lin;
            for (size_t j = 0; j < lin.size(); ++j) {
                if (j == piv) continue;
                const Int alj = dot(a, lin[j]);
                ZVec v(d);
                for (int c = 0; c < d; ++c) v[c] = al0 * lin[j][c] - alj * l0[c];
                new_lin.push_back(primitive(v));
            }
            lin = std::move(new_lin);

            for (size_t r = 0; r < rays.size(); ++r) {
                const Int ar = dot(a, rays[r]);
                if (ar != 0) {
                    ZVec v(d);
                    for (int c = 0; c < d; ++c) v[c] = al0 * rays[r][c] - ar * l0[c];
                    rays[r] = primitive(v);
                }
                tight[r].words.resize((idx + 64) / 64, 0);
                tight[r].set(idx);
            }
            TightSet t0(idx + 1);
            for (size_t k = 0; k < idx; ++k) t0.set(k);
            rays.push_back(primitive(l0));
            tight.push_back(std::move(t0));
            continue;
        }

        std::vector<Int> vals(rays.size());
        for (size_t r = 0; r < rays.size(); ++r) vals[r] = dot(a, rays[r]);

        std::vector<size_t> pos, neg, zero;
        for (size_t r = 0; r < rays.size(); ++r) {
            const int s = sgn(vals[r]);
            if (s > 0) pos.push_back(r);
            else if (s < 0) neg.push_back(r);
            else zero.push_back(r);
        }

        if (neg.empty()) {
            for (size_t r = 0; r < rays.size(); ++r) {
                tight[r].words.resize((idx + 64) / 64, 0);
                if (vals[r] == 0) tight[r].set(idx);
            }
            continue;
        }

        const int need = d - static_cast<int>(lin.size()) - 2;
        std::vector<std::pair<size_t, size_t>> pairs;
        pairs.reserve(pos.size() * neg.size());
        for (size_t p : pos)
            for (size_t q : neg) pairs.emplace_back(p, q);

        std::vector<char> adjacent(pairs.size(), 0);
        if (need >= 0) {
            parallel_for(pairs.size(), opts.threads, [&](size_t k) {
                const auto [p, q] = pairs[k];
                const TightSet common = intersect(tight[p], tight[q]);
                if (static_cast<int>(popcount64(common)) < need) return;
                std::vector<const ZVec*> sub;
                for (size_t j = 0; j < idx; ++j)
                    if (common.test(j)) sub.push_back(&rows[j]);
                if (static_cast<int>(rank_z(sub, d)) == need) adjacent[k] = 1;
            });
        }

        std::vector<ZVec> combo_rays(pairs.size());
        std::vector<TightSet> combo_tight(pairs.size());
        parallel_for(pairs.size(), opts.threads, [&](size_t k) {
            if (!adjacent[k]) return;
            const auto [p, q] = pairs[k];
            ZVec v(d);
            for (int c = 0; c < d; ++c) v[c] = vals[p] * rays[q][c] - vals[q] * rays[p][c];
            combo_rays[k] = primitive(v);
            TightSet t = intersect(tight[p], tight[q]);
            t.words.resize((idx + 64) / 64, 0);
            t.set(idx);
            combo_tight[k] = std::move(t);
        });

        std::vector<ZVec> next_rays;
        std::vector<TightSet> next_tight;
        auto keep = [&](size_t r, bool is_tight) {
            TightSet t = std::move(tight[r]);
            t.words.resize((idx + 64) / 64, 0);
            if (is_tight) t.set(idx);
            next_rays.push_back(std::move(rays[r]));
            next_tight.push_back(std::move(t));
        };
        for (size_t r : pos) keep(r, false);
        for (size_t r : zero) keep(r, true);
        for (size_t k = 0; k < pairs.size(); ++k) {
            if (!adjacent[k]) continue;
            next_rays.push_back(std::move(combo_rays[k]));
            next_tight.push_back(std::move(combo_tight[k]));
        }
        rays = std::move(next_rays);
        tight = std::move(next_tight);

        if (opts.max_rays && rays.size() > opts.max_rays) {
            if (opts.checkpoint) opts.checkpoint(idx + 1, m, rays);
            throw ResourceLimit("ray budget exceeded during ray enumeration");
        }
    }

    ConeV out;
    out.dim = d;
    out.lineality = subspace_basis(lin, d);
    std::vector<ZVec> reduced;
    reduced.reserve(rays.size());
    for (const auto& r : rays) reduced.push_back(primitive(reduce_mod_subspace(to_qvec(r), out.lineality, d)));
    std::sort(reduced.begin(), reduced.end(), ZVecLess{});
    out.rays = std::move(reduced);
    return out;
}

ConeH facets(const ConeV& cone, const DDOptions& opts) {
    cone.validate();
    ConeH dual;
    dual.dim = cone.dim;
    dual.rows = cone.rays;
    for (const auto& l : cone.lineality) {
        dual.rows.push_back(l);
        ZVec neg(l.size());
        for (size_t c = 0; c < l.size(); ++c) neg[c] = -l[c];
        dual.rows.push_back(std::move(neg));
    }

    const ConeV dual_rays = extremal_rays(dual, opts);

    ConeH out;
    out.dim = cone.dim;
    out.rows = dual_rays.rays;
    for (const auto& e : dual_rays.lineality) {
        out.rows.push_back(e);
        ZVec neg(e.size());
        for (size_t c = 0; c < e.size(); ++c) neg[c] = -e[c];
        out.rows.push_back(std::move(neg));
    }
    out.lineality = subspace_basis(cone.lineality, cone.dim);
    out.canonicalize();
    return out;
}

bool verify_certificate(const Certificate& cert, const QVec& target, const ConeV& cone) {
    if (static_cast<int>(target.size()) != cone.dim) return false;
    if (cert.kind == Certificate::Kind::Member) {
        if (cert.ray_coefficients.size() != cone.rays.size()) return false;
        if (cert.lin_coefficients.size() != cone.lineality.size()) return false;
        for (const auto& c : cert.ray_coefficients)
            if (c < 0) return false;
        QVec acc(cone.dim, Rat(0));
        for (size_t k = 0; k < cone.rays.size(); ++k) {
            if (cert.ray_coefficients[k] == 0) continue;
            for (int c = 0; c < cone.dim; ++c) acc[c] += cert.ray_coefficients[k] * Rat(cone.rays[k][c]);
        }
        for (size_t k = 0; k < cone.lineality.size(); ++k) {
            if (cert.lin_coefficients[k] == 0) continue;
            for (int c = 0; c < cone.dim; ++c) acc[c] += cert.lin_coefficients[k] * Rat(cone.lineality[k][c]);
        }
        return acc == target;
    }
    // Separated
    if (static_cast<int>(cert.functional.size()) != cone.dim) return false;
    for (const auto& r : cone.rays)
        if (dot(r, cert.functional) < 0) return false;
    for (const auto& l : cone.lineality)
        if (dot(l, cert.functional) != 0) return false;
    const Rat v = dot(cert.functional, target);
    return v < 0 && v == cert.value_on_target;
}

Certificate membership(const QVec& target, const ConeV& cone) {
    cone.validate();
    if (static_cast<int>(target.size()) != cone.dim) throw DimensionMismatch("target dimension mismatch");

    std::vector<QVec> columns;
    columns.reserve(cone.rays.size() + 2 * cone.lineality.size());
    for (const auto& r : cone.rays) columns.push_back(to_qvec(r));
    for (const auto& l : cone.lineality) {
        columns.push_back(to_qvec(l));
        QVec neg(l.size());
        for (size_t c = 0; c < l.size(); ++c) neg[c] = -Rat(l[c]);
        columns.push_back(std::move(neg));
    }

    const Phase1Result lp = simplex_phase1(columns, target);

    Certificate cert;
    if (lp.feasible) {
        cert.kind = Certificate::Kind::Member;
        cert.ray_coefficients.assign(cone.rays.size(), Rat(0));
        cert.lin_coefficients.assign(cone.lineality.size(), Rat(0));
        for (size_t k = 0; k < cone.rays.size(); ++k) cert.ray_coefficients[k] = lp.x[k];
        for (size_t k = 0; k < cone.lineality.size(); ++k)
            cert.lin_coefficients[k] = lp.x[cone.rays.size() + 2 * k] - lp.x[cone.rays.size() + 2 * k + 1];
    } else {
        cert.kind = Certificate::Kind::Separated;
        cert.functional.assign(cone.dim, Rat(0));
        for (int c = 0; c < cone.dim; ++c) cert.functional[c] = -lp.dual_y[c];
        cert.value_on_target = dot(cert.functional, target);
    }
    if (!verify_certificate(cert, target, cone))
        throw CertificateError("membership certificate failed re-verification");
    return cert;
}

FacetMembership membership_via_facets(const QVec& target, const ConeV& cone) {
    const ConeH h = facets(cone);
    FacetMembership out;
    out.member = true;
    for (const auto& row : h.rows) {
        if (dot(row, target) < 0) {
            out.member = false;
            Certificate cert;
            cert.kind = Certificate::Kind::Separated;
            cert.functional = to_qvec(row);
            cert.value_on_target = dot(row, target);
            if (!verify_certificate(cert, target, cone))
                throw CertificateError("facet separation failed re-verification");
            out.separated = std::move(cert);
            return out;
        }
    }
    return out;
}

ContainmentResult cone_contained(const ConeV& a, const ConeV& b, const DDOptions& opts) {
    if (a.dim != b.dim) throw DimensionMismatch("ambient dimension mismatch");
    ContainmentResult out;
    for (const auto& r : a.rays) out.tested.push_back(to_qvec(r));
    for (const auto& l : a.lineality) {
        out.tested.push_back(to_qvec(l));
        QVec neg(l.size());
        for (size_t c = 0; c < l.size(); ++c) neg[c] = -Rat(l[c]);
        out.tested.push_back(std::move(neg));
    }
    out.witnesses.resize(out.tested.size());
    parallel_for(out.tested.size(), opts.threads,
                 [&](size_t k) { out.witnesses[k] = membership(out.tested[k], b); });
    out.contained = true;
    for (const auto& w : out.witnesses)
        if (w.kind != Certificate::Kind::Member) out.contained = false;
    return out;
}

ContainmentResult cone_contained(const ConeH& a, const ConeV& b, const DDOptions& opts) {
    return cone_contained(extremal_rays(a, opts), b, opts);
}

bool cone_contained_dual(const ConeH& a, const ConeV& b, const DDOptions& opts) {
    // Every valid inequality of B must be a nonnegative combination of
    // A's inequality rows, i.e. lie in the dual cone of A.
    const ConeH bh = facets(b, opts);
    ConeV dual_of_a;
    dual_of_a.dim = a.dim;
    dual_of_a.rays = a.rows;
    dual_of_a.canonicalize();
    for (const auto& row : bh.rows) {
        const Certificate c = membership(to_qvec(row), dual_of_a);
        if (c.kind != Certificate::Kind::Member) return false;
    }
    return true;
}

}  // namespace fabercone
