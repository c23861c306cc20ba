#include "fabercone/fulton.hpp"

#include <algorithm>
#include <set>

#include "fabercone/errors.hpp"
#include "fabercone/linalg.hpp"
#include "fabercone/parallel.hpp"

namespace fabercone {

namespace {

void require_n(int n) {
    if (n < 4 || n > 30) throw InvalidN("n must be at least 4, got " + std::to_string(n));
}

std::uint32_t full_mask(int n) { return (std::uint32_t(1) << n) - 1; }

std::uint32_t canonical_t(int n, std::uint32_t T) {
    const std::uint32_t last = std::uint32_t(1) << (n - 1);
    return (T & last) ? (full_mask(n) & ~T) : T;
}

// All partitions of {1..n} into exactly four nonempty blocks, each as a
// sorted block list, deterministic order.
std::vector<std::array<std::uint32_t, 4>> four_block_partitions(int n) {
    std::vector<std::array<std::uint32_t, 4>> out;
    std::array<std::uint32_t, 4> blocks{0, 0, 0, 0};
    // Assign marks one at a time; mark k may open block j only if blocks
    // 0..j-1 are already open (canonical set-partition enumeration).
    auto rec = [&](auto&& self, int mark, int open) -> void {
        if (mark == n) {
            if (open == 4) {
                auto sorted = blocks;
                std::sort(sorted.begin(), sorted.end());
                out.push_back(sorted);
            }
            return;
        }
        const std::uint32_t bit = std::uint32_t(1) << mark;
        for (int j = 0; j < std::min(open + 1, 4); ++j) {
            blocks[j] |= bit;
            self(self, mark + 1, std::max(open, j + 1));
            blocks[j] &= ~bit;
        }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

int RelationSpace::pos(std::uint32_t T) const {
    auto it = coord_pos.find(canonical_t(n, T));
    if (it == coord_pos.end()) throw InvalidN("no coordinate for the given mark set");
    return it->second;
}

QVec RelationSpace::project(const QVec& raw) const {
    if (raw.size() != coords.size()) throw DimensionMismatch("raw coordinate size mismatch");
    QVec out(dim(), Rat(0));
    for (size_t c = 0; c < coords.size(); ++c) {
        if (raw[c] == 0) continue;
        for (int j = 0; j < dim(); ++j) out[j] += raw[c] * projection[c][j];
    }
    return out;
}

QVec RelationSpace::descend_functional(const QVec& phi) const {
    if (phi.size() != coords.size()) throw DimensionMismatch("functional size mismatch");
    for (const auto& rel : relations)
        if (dot(phi, rel) != 0)
            throw CertificateError("functional does not vanish on the relation rows");
    QVec out(dim(), Rat(0));
    for (int j = 0; j < dim(); ++j) out[j] = phi[quotient_basis[j]];
    return out;
}

RelationSpace build_V(int n) {
    require_n(n);
    RelationSpace space;
    space.n = n;

    const std::uint32_t last = std::uint32_t(1) << (n - 1);
    for (std::uint32_t T = 0; T < full_mask(n); ++T) {
        if (T & last) continue;
        const int size = popcount(T);
        if (size < 2 || size > n - 2) continue;
        space.coord_pos[T] = static_cast<int>(space.coords.size());
        space.coords.push_back(T);
    }

    // Two independent pairing differences per four-element subset.
    auto separates = [&](std::uint32_t T, int a, int b, int c, int d) {
        const bool ina = T >> (a - 1) & 1, inb = T >> (b - 1) & 1;
        const bool inc = T >> (c - 1) & 1, ind = T >> (d - 1) & 1;
        return ina == inb && inc == ind && ina != inc;
    };
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c)
                for (int d = c + 1; d <= n; ++d) {
                    QVec row1(space.coords.size(), Rat(0));
                    QVec row2(space.coords.size(), Rat(0));
                    for (size_t k = 0; k < space.coords.size(); ++k) {
                        const std::uint32_t T = space.coords[k];
                        if (separates(T, a, b, c, d)) {
                            row1[k] += 1;
                            row2[k] += 1;
                        }
                        if (separates(T, a, c, b, d)) row1[k] -= 1;
                        if (separates(T, a, d, b, c)) row2[k] -= 1;
                    }
                    space.relations.push_back(std::move(row1));
                    space.relations.push_back(std::move(row2));
                }

    QMat rel_mat(space.coords.size(), space.relations);
    const Rref red = rref(rel_mat);
    std::vector<bool> is_pivot(space.coords.size(), false);
    for (size_t p : red.pivots) is_pivot[p] = true;
    for (size_t c = 0; c < space.coords.size(); ++c)
        if (!is_pivot[c]) space.quotient_basis.push_back(static_cast<int>(c));

    space.projection.assign(space.coords.size(), QVec(space.quotient_basis.size(), Rat(0)));
    std::map<int, int> basis_col;
    for (size_t j = 0; j < space.quotient_basis.size(); ++j) basis_col[space.quotient_basis[j]] = static_cast<int>(j);
    for (size_t c = 0; c < space.coords.size(); ++c)
        if (!is_pivot[c]) space.projection[c][basis_col.at(static_cast<int>(c))] = 1;
    // A pivot coordinate reads off its RREF row: e_p = -sum of the free
    // column entries.
    for (size_t r = 0; r < red.pivots.size(); ++r) {
        const size_t p = red.pivots[r];
        for (size_t j = 0; j < space.coords.size(); ++j) {
            if (j == p || red.mat.rows[r][j] == 0) continue;
            space.projection[p][basis_col.at(static_cast<int>(j))] = -red.mat.rows[r][j];
        }
    }
    return space;
}

ConeH build_N(const RelationSpace& space) {
    ConeH cone;
    cone.dim = space.dim();
    for (const auto& blocks : four_block_partitions(space.n)) {
        QVec phi(space.coords.size(), Rat(0));
        // The three pairings carry +1, blocks of size >= 2 carry -1;
        // singleton blocks vanish in the relation space.
        for (int v = 1; v < 4; ++v) phi[space.pos(blocks[0] | blocks[v])] += 1;
        for (int u = 0; u < 4; ++u)
            if (popcount(blocks[u]) >= 2) phi[space.pos(blocks[u])] -= 1;
        cone.rows.push_back(primitive(space.descend_functional(phi)));
    }
    std::sort(cone.rows.begin(), cone.rows.end(), ZVecLess{});
    return cone;
}

ConeH build_N(int n) { return build_N(build_V(n)); }

ConeV build_E(const RelationSpace& space) {
    ConeV cone;
    cone.dim = space.dim();
    std::set<ZVec, ZVecLess> seen;
    for (size_t c = 0; c < space.coords.size(); ++c) {
        QVec raw(space.coords.size(), Rat(0));
        raw[c] = 1;
        ZVec gen = primitive(space.project(raw));
        if (is_zero(gen)) throw CertificateError("boundary class projects to zero");
        seen.insert(std::move(gen));
    }
    cone.rays.assign(seen.begin(), seen.end());
    return cone;
}

ConeV build_E(int n) { return build_E(build_V(n)); }

QVec kappa_raw(const RelationSpace& space) {
    QVec raw(space.coords.size(), Rat(0));
    for (size_t c = 0; c < space.coords.size(); ++c) {
        const int t = popcount(space.coords[c]);
        Rat coeff(t * (space.n - t), space.n - 1);
        coeff.canonicalize();
        raw[c] = coeff - 1;
    }
    return raw;
}

QVec kappa_class(int n) { return kappa_raw(build_V(n)); }

void BlockPartition::validate() const {
    if (n < 4) throw InvalidPartition("partition needs n >= 4");
    std::uint32_t acc = 0;
    for (const auto& b : blocks) {
        if (popcount(b) < 2) throw InvalidPartition("every block needs at least two marks");
        if (b & acc) throw InvalidPartition("blocks overlap");
        acc |= b;
    }
    if (acc != full_mask(n)) throw InvalidPartition("blocks must cover all marks");
}

std::vector<std::uint32_t> BlockPartition::admissible_classes() const {
    validate();
    std::set<std::uint32_t> seen;
    const std::uint32_t all = (std::uint32_t(1) << blocks.size()) - 1;
    for (std::uint32_t pick = 1; pick < all; ++pick) {
        std::uint32_t T = 0;
        for (size_t j = 0; j < blocks.size(); ++j)
            if (pick >> j & 1) T |= blocks[j];
        seen.insert(canonical_t(n, T));
    }
    return {seen.begin(), seen.end()};
}

Certificate lemma44_check(int n, const BlockPartition& partition, const std::map<std::uint32_t, Rat>& e) {
    require_n(n);
    if (partition.n != n) throw InvalidPartition("partition is for a different n");
    const RelationSpace space = build_V(n);
    const auto admissible = partition.admissible_classes();

    QVec raw = kappa_raw(space);
    for (const auto& [T, value] : e) {
        if ((T & ~full_mask(n)) != 0) throw InvalidPartition("correction class has marks out of range");
        const std::uint32_t canon = canonical_t(n, T);
        if (std::find(admissible.begin(), admissible.end(), canon) == admissible.end())
            throw InvalidPartition("correction class is not a union of blocks");
        raw[space.pos(canon)] += value;
    }
    return membership(space.project(raw), build_E(space));
}

FultonResult fulton_question(int n, const FultonOptions& opts) {
    require_n(n);
    FultonResult result;
    result.n = n;
    result.space = build_V(n);
    result.cone_n = build_N(result.space);
    result.cone_e = build_E(result.space);

    DDOptions dd;
    dd.threads = opts.threads;
    dd.deadline = opts.deadline;
    dd.max_rays = opts.max_rays;
    dd.checkpoint = opts.checkpoint;
    result.rays_of_n = extremal_rays(result.cone_n, dd);

    result.per_ray.resize(result.rays_of_n.rays.size());
    parallel_for(result.rays_of_n.rays.size(), opts.threads, [&](size_t k) {
        if (opts.deadline && std::chrono::steady_clock::now() > *opts.deadline)
            throw ResourceLimit("time budget exceeded during membership certification");
        result.per_ray[k] = membership(to_qvec(result.rays_of_n.rays[k]), result.cone_e);
    });

    result.answer = true;
    for (const auto& cert : result.per_ray)
        if (cert.kind != Certificate::Kind::Member) result.answer = false;
    // A lineality direction of N would need a membership check of both
    // signs; treat any as unresolved rather than deciding blindly.
    if (!result.rays_of_n.lineality.empty()) result.answer = false;
    return result;
}

InvariantSubspace symmetrize_space(const RelationSpace& space,
                                   const std::vector<Permutation>& generators, size_t limit) {
    const auto group = group_closure(space.n, generators, limit);
    QMat averaged(space.dim());
    for (int j = 0; j < space.dim(); ++j) {
        QVec acc(space.dim(), Rat(0));
        for (const auto& perm : group) {
            // move the j-th basis coordinate class and project back
            std::uint32_t image = 0;
            for (int mark : mark_set_elements(space.coords[space.quotient_basis[j]]))
                image |= std::uint32_t(1) << (perm[mark - 1] - 1);
            QVec moved(space.coords.size(), Rat(0));
            moved[space.pos(image)] = 1;
            const QVec proj = space.project(moved);
            for (int t = 0; t < space.dim(); ++t) acc[t] += proj[t];
        }
        const Rat w(1, static_cast<unsigned long>(group.size()));
        for (auto& x : acc) x *= w;
        averaged.add_row(std::move(acc));
    }
    const Rref red = rref(averaged);
    InvariantSubspace out;
    out.basis = red.mat.rows;
    out.dim = static_cast<int>(red.pivots.size());
    return out;
}

QVec divisor_to_raw(const RelationSpace& space, const DivisorClass& d) {
    if (d.sig.g != 0 || d.sig.n != space.n) throw DimensionMismatch("divisor signature mismatch");
    QVec raw(space.coords.size(), Rat(0));
    for (const auto& [idx, c] : d.coeffs) {
        switch (idx.kind) {
            case ClassKind::Lambda:
                if (c != 0) throw NonexistentClass("lambda has no boundary expression here");
                break;
            case ClassKind::DeltaIrr:
                throw NonexistentClass("delta_irr does not exist in genus 0");
            case ClassKind::Psi:
                if (c != 0) throw NonexistentClass("psi classes have no coordinate in the relation space");
                break;
            case ClassKind::Boundary:
                raw[space.pos(idx.marks)] += c;
                break;
        }
    }
    return raw;
}

}  // namespace fabercone
