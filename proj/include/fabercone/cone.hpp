#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <vector>

#include "fabercone/rational.hpp"

namespace fabercone {

// Inequality presentation: x is feasible iff row.x >= 0 for every row.
// `lineality` declares a subspace known to lie inside the cone; every row
// must vanish on it.
struct ConeH {
    int dim = 0;
    std::vector<ZVec> rows;
    std::vector<ZVec> lineality;

    // Primitive rows, lexicographically sorted, duplicates and zero rows
    // dropped; lineality replaced by its reduced basis.
    void canonicalize();
    void validate() const;
};

// Generator presentation: nonnegative span of the rays plus the lineality
// subspace.
struct ConeV {
    int dim = 0;
    std::vector<ZVec> rays;
    std::vector<ZVec> lineality;

    void canonicalize();
    void validate() const;

    bool satisfies(const ZVec& row) const;  // row.ray >= 0 and row.lin == 0
};

struct Certificate {
    enum class Kind { Member, Separated };
    Kind kind = Kind::Member;

    // Member: target = sum coeff_k ray_k + sum lin_k l_k, coeff_k >= 0.
    QVec ray_coefficients;
    QVec lin_coefficients;

    // Separated: functional.ray >= 0 for all rays, functional.l = 0 on the
    // lineality, functional.target < 0.
    QVec functional;
    Rat value_on_target = 0;
};

struct DDOptions {
    int threads = 1;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    size_t max_rays = 0;  // 0 = unlimited
    // Called with partial rays before a ResourceLimit abort.
    std::function<void(size_t rows_done, size_t rows_total, const std::vector<ZVec>& rays)> checkpoint;
};

// Double description: minimal generators of an inequality cone, canonical
// output.  Lexicographic insertion order; a candidate pair of rays is
// accepted when the rank of its common tight rows is dim - lin - 2.
ConeV extremal_rays(const ConeH& cone, const DDOptions& opts = {});

// Dual conversion; emits +/- row pairs for the orthogonal complement when
// the generators do not span the ambient space.  Round-trips with
// extremal_rays up to canonical form.
ConeH facets(const ConeV& cone, const DDOptions& opts = {});

// Exact LP membership with a verified certificate either way.
Certificate membership(const QVec& target, const ConeV& cone);

// Exact re-verification by re-multiplication; membership() already calls
// this before returning.
bool verify_certificate(const Certificate& cert, const QVec& target, const ConeV& cone);

// Cross-validation route: decide membership against the facet description
// instead of the LP.  A violated facet doubles as a separating functional.
struct FacetMembership {
    bool member = false;
    std::optional<Certificate> separated;
};
FacetMembership membership_via_facets(const QVec& target, const ConeV& cone);

struct ContainmentResult {
    bool contained = false;
    std::vector<QVec> tested;            // rays of A, then +/- lineality vectors
    std::vector<Certificate> witnesses;  // parallel to `tested`
};

// Is every generator of A inside B?
ContainmentResult cone_contained(const ConeV& a, const ConeV& b, const DDOptions& opts = {});
ContainmentResult cone_contained(const ConeH& a, const ConeV& b, const DDOptions& opts = {});

// Dual cross-check: every facet of B must be a valid inequality on A.
bool cone_contained_dual(const ConeH& a, const ConeV& b, const DDOptions& opts = {});

}  // namespace fabercone
