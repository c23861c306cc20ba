#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fabercone/cone.hpp"
#include "fabercone/divisor.hpp"

namespace fabercone {

// The rational vector space spanned by the boundary symbols delta_T of an
// n-marked genus-0 space, one coordinate per unordered pair [T,T^c] with
// 2 <= |T| <= n-2, modulo the four-point linear relations.  Coordinates
// are the masks not containing the last mark, in ascending bitmask order.
struct RelationSpace {
    int n = 0;
    std::vector<std::uint32_t> coords;      // canonical T masks
    std::map<std::uint32_t, int> coord_pos;
    std::vector<QVec> relations;            // rows over coords
    std::vector<int> quotient_basis;        // coordinate positions
    std::vector<QVec> projection;           // per coordinate, over the basis

    int raw_dim() const { return static_cast<int>(coords.size()); }
    int dim() const { return static_cast<int>(quotient_basis.size()); }

    // Position of the coordinate class of T (complemented when needed).
    int pos(std::uint32_t T) const;

    QVec project(const QVec& raw) const;

    // Quotient expression of a functional that kills every relation row;
    // throws CertificateError otherwise.
    QVec descend_functional(const QVec& phi) const;
};

RelationSpace build_V(int n);

// One inequality per partition of the marks into four nonempty blocks:
// the three pairing coefficients minus the block coefficients, expressed
// in quotient coordinates.
ConeH build_N(const RelationSpace& space);
ConeH build_N(int n);

// The nonnegative span of the boundary symbols in quotient coordinates.
ConeV build_E(const RelationSpace& space);
ConeV build_E(int n);

// Boundary expansion of the kappa class: (|T|(n-|T|)/(n-1)) - 1 on every
// coordinate, in raw coordinates.
QVec kappa_raw(const RelationSpace& space);
QVec kappa_class(int n);  // raw coordinates

struct BlockPartition {
    int n = 0;
    std::vector<std::uint32_t> blocks;

    // Full partition with every block of size >= 2; throws InvalidPartition.
    void validate() const;

    // Canonical masks T that are unions of a proper nonempty subcollection
    // of blocks, ascending.
    std::vector<std::uint32_t> admissible_classes() const;
};

// Membership of kappa + sum e_T delta_T in E; keys of `e` must be
// admissible classes for the partition.
Certificate lemma44_check(int n, const BlockPartition& partition,
                          const std::map<std::uint32_t, Rat>& e);

struct FultonOptions {
    int threads = 1;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    size_t max_rays = 0;
    std::function<void(size_t rows_done, size_t rows_total, const std::vector<ZVec>& rays)> checkpoint;
};

struct FultonResult {
    int n = 0;
    bool answer = false;  // every extremal ray of N admits a Member certificate
    RelationSpace space;
    ConeH cone_n;
    ConeV cone_e;
    ConeV rays_of_n;
    std::vector<Certificate> per_ray;
};

FultonResult fulton_question(int n, const FultonOptions& opts = {});

// Divisor classes on genus-0 spaces in raw coordinates: the coefficient of
// each boundary class, with psi classes entering through the singleton
// convention delta_{0,{k}} = -psi_k.
QVec divisor_to_raw(const RelationSpace& space, const DivisorClass& d);

struct InvariantSubspace {
    int dim = 0;
    std::vector<QVec> basis;  // quotient coordinates
};

// Image of the group-averaging projector on the relation quotient: a basis
// of the subspace fixed by the generated permutation group.
InvariantSubspace symmetrize_space(const RelationSpace& space,
                                   const std::vector<Permutation>& generators,
                                   size_t limit = kDefaultGroupLimit);

}  // namespace fabercone
